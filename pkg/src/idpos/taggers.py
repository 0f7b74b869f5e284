"""Heuristic stand-ins for the three constituent part-of-speech taggers.

The ensemble consumes per-word annotations from three external taggers
(SWUM, POSSE, Stanford) as features; the corpus format carries their output
in dedicated columns.  When a corpus lacks those columns, the stand-ins
below produce deterministic substitutes so the toolkit runs end to end:

* ``tag_lexicon``      - a lexicon-plus-suffix tagger in the style of a
                         general-purpose English tagger, including the
                         leading-pronoun trick for function names.
* ``tag_swum_like``    - noun/verb-phrase shaping with preamble and
                         declared-type awareness.
* ``tag_posse_like``   - the same shaping with prepositions, determiners
                         and pronouns merged into one closed-list category.

These are best-effort reconstructions of the cited behaviors of the real
tools, not reimplementations; precomputed corpus columns always take
precedence over them.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from importlib import resources
from typing import Sequence

from .splitter import SplitIdentifier
from .tagset import (
    MISSING,
    Conjugation,
    IdentifierContext,
    PennTag,
    Tag,
    map_penn_to_reduced,
)


@dataclass(frozen=True)
class ConstituentTags:
    """Per-word labels from the three constituent taggers (or MISSING)."""

    swum: str = MISSING
    posse: str = MISSING
    stanford: str = MISSING


# Annotations each constituent tagger cannot produce.
SWUM_UNSUPPORTED = frozenset({Tag.NPL.value, Tag.VM.value, Tag.CJ.value})
POSSE_UNSUPPORTED = frozenset({Tag.NPL.value, Tag.CJ.value, Tag.PRE.value})
STANFORD_UNSUPPORTED = frozenset({Tag.PRE.value})

_VERBISH = frozenset(
    {
        PennTag.VB,
        PennTag.VBD,
        PennTag.VBG,
        PennTag.VBN,
        PennTag.VBP,
        PennTag.VBZ,
        PennTag.MD,
    }
)
_PRONOUN = frozenset({PennTag.PRP, PennTag.PRP_POSS})


class Lexicon:
    """Frequency-ranked word -> Penn-tag lookup, case-insensitive."""

    def __init__(self, entries: Sequence[tuple[str, PennTag]]):
        self._entries: dict[str, list[PennTag]] = {}
        for word, penn in entries:
            self._entries.setdefault(word.lower(), []).append(penn)

    def __len__(self) -> int:
        return len(self._entries)

    def lookups(self, word: str) -> list[PennTag]:
        """All readings of a word, most frequent first."""
        return self._entries.get(word.lower(), [])

    def primary(self, word: str) -> PennTag | None:
        readings = self.lookups(word)
        return readings[0] if readings else None

    def verbish(self, word: str) -> PennTag | None:
        for penn in self.lookups(word):
            if penn in _VERBISH:
                return penn
        return None

    @classmethod
    def from_text(cls, text: str) -> "Lexicon":
        entries = []
        for line in text.splitlines():
            line = line.strip()
            if not line or line.startswith("#"):
                continue
            word, penn = line.split("\t")
            entries.append((word, PennTag(penn)))
        return cls(entries)


@lru_cache(maxsize=1)
def default_lexicon() -> Lexicon:
    text = (
        resources.files("idpos").joinpath("data/lexicon.tsv").read_text("utf-8")
    )
    return Lexicon.from_text(text)


def _word_list(words) -> list[str]:
    if isinstance(words, SplitIdentifier):
        return list(words.words)
    return list(words)


def _suffix_penn(word: str) -> PennTag:
    lower = word.lower()
    if lower.endswith("ed"):
        return PennTag.VBD
    if lower.endswith("ing"):
        return PennTag.VBG
    if lower.endswith("ly"):
        return PennTag.RB
    if lower.endswith("s"):
        return PennTag.NNS
    return PennTag.NN


def tag_lexicon(
    words,
    context: IdentifierContext,
    conjugation: Conjugation,
    lexicon: Lexicon | None = None,
) -> list[str]:
    """Tag words through the embedded lexicon with suffix-rule fallback.

    Function names get a synthetic leading pronoun before tagging (output
    discarded), so a verb-capable first word takes its verb reading the way
    "I run ..." does in prose.  Numeric tokens tag as digits.  Results pass
    through the Penn-to-reduced mapping under the given conjugation mode, so
    output labels may be raw VBD/VBG/VBN in conjugated mode.
    """
    tokens = _word_list(words)
    if not tokens:
        raise ValueError("cannot tag an empty word list")
    lex = lexicon or default_lexicon()

    prepend = context is IdentifierContext.FUNCTION
    stream = (["I"] if prepend else []) + tokens

    penn_tags: list[PennTag] = []
    previous: PennTag | None = None
    for token in stream:
        if token.isdigit():
            penn = PennTag.CD
        else:
            penn = lex.primary(token)
            if previous in _PRONOUN:
                verb_reading = lex.verbish(token)
                if verb_reading is not None:
                    penn = verb_reading
            if penn is None:
                penn = _suffix_penn(token)
        penn_tags.append(penn)
        previous = penn

    if prepend:
        penn_tags = penn_tags[1:]
    return [map_penn_to_reduced(p, conjugation, context) for p in penn_tags]


_PREFIX_TOKENS = frozenset({"g", "m", "p"})

_BOOLEAN_TYPES = frozenset({"bool", "boolean", "int"})
_BOOLEAN_VERBS = frozenset({"is", "has", "can", "should", "was", "does"})

_CLOSED_DETERMINERS = frozenset(
    "the a an this that these those which each every all both some any no".split()
)
_CLOSED_PRONOUNS = frozenset(
    "i you he she it we they me him her us them my your his its our their".split()
)
_PREPOSITIONS = frozenset(
    """of in to for on with at by from into onto upon over before after
    between during through within without across against along among around
    near off past per since toward towards until via beside below beneath
    behind inside outside above under""".split()
)


def _looks_plural(word: str) -> bool:
    lower = word.lower()
    return len(lower) > 3 and lower.endswith("s") and not lower.endswith("ss")


@lru_cache(maxsize=1)
def _verb_stems() -> frozenset[str]:
    lex = default_lexicon()
    return frozenset(
        word for word, readings in lex._entries.items() if PennTag.VB in readings
    )


def _canonical_type(type_hint: str) -> str:
    return type_hint.replace("*", "").replace("&", "").strip().lower()


def _first_word_is_verb(word: str, context, type_hint: str) -> bool:
    if context is not IdentifierContext.FUNCTION:
        return False
    lower = word.lower()
    if lower in _verb_stems():
        return True
    # Boolean-ish signatures make is/has-style openers verbs.
    return _canonical_type(type_hint) in _BOOLEAN_TYPES and lower in _BOOLEAN_VERBS


def tag_swum_like(
    words, context: IdentifierContext, type_hint: str = ""
) -> list[str]:
    """Phrase-shaping tagger with preamble and verb-opener detection.

    The last word of a name is read as the head noun and the words before
    it as noun modifiers.  Function names opening with a known verb (or an
    is/has form on a boolean-ish return type) start a verb phrase.  A short
    leading prefix token (single character, or g/m/p conventions) in a
    multi-word name is a preamble.  Never emits NPL, VM, or CJ.
    """
    tokens = _word_list(words)
    if not tokens:
        raise ValueError("cannot tag an empty word list")
    last = len(tokens) - 1
    tags: list[str] = []
    for i, word in enumerate(tokens):
        lower = word.lower()
        if word.isdigit():
            tags.append(Tag.D.value)
        elif i == 0 and last > 0 and (len(word) == 1 or lower in _PREFIX_TOKENS):
            tags.append(Tag.PRE.value)
        elif i == 0 and _first_word_is_verb(word, context, type_hint):
            tags.append(Tag.V.value)
        elif lower in _PREPOSITIONS:
            tags.append(Tag.P.value)
        elif i == last:
            tags.append(Tag.N.value)
        else:
            tags.append(Tag.NM.value)
    return tags


def tag_posse_like(
    words, context: IdentifierContext, type_hint: str = ""
) -> list[str]:
    """Phrase-shaping tagger with a merged closed-list category.

    Prepositions, determiners, and pronouns all collapse to P.  Preambles
    are not recognized and plural-looking words read as plain nouns.  Never
    emits NPL, CJ, or PRE.
    """
    tokens = _word_list(words)
    if not tokens:
        raise ValueError("cannot tag an empty word list")
    last = len(tokens) - 1
    tags: list[str] = []
    for i, word in enumerate(tokens):
        lower = word.lower()
        if word.isdigit():
            tags.append(Tag.D.value)
        elif lower in _PREPOSITIONS or lower in _CLOSED_DETERMINERS or lower in _CLOSED_PRONOUNS:
            tags.append(Tag.P.value)
        elif i == 0 and _first_word_is_verb(word, context, type_hint):
            tags.append(Tag.V.value)
        elif i == last or _looks_plural(word):
            tags.append(Tag.N.value)
        else:
            tags.append(Tag.NM.value)
    return tags


def standin_constituents(
    words,
    context: IdentifierContext,
    type_hint: str,
    conjugation: Conjugation,
    lexicon: Lexicon | None = None,
) -> list[ConstituentTags]:
    """Run all three stand-ins over one identifier."""
    swum = tag_swum_like(words, context, type_hint)
    posse = tag_posse_like(words, context, type_hint)
    stanford = tag_lexicon(words, context, conjugation, lexicon)
    return [
        ConstituentTags(swum=s, posse=p, stanford=st)
        for s, p, st in zip(swum, posse, stanford)
    ]


def fill_missing_constituents(record, conjugation: Conjugation):
    """Return a record whose MISSING constituent cells are filled in.

    Precomputed annotations are kept; only MISSING cells are replaced with
    stand-in output.  Records with complete annotations come back unchanged.
    """
    from dataclasses import replace

    current = record.constituent
    if current is not None and all(
        MISSING not in (c.swum, c.posse, c.stanford) for c in current
    ):
        return record
    computed = standin_constituents(
        record.words, record.context, record.type_hint, conjugation
    )
    if current is None:
        return replace(record, constituent=computed)
    merged = [
        ConstituentTags(
            swum=c.swum if c.swum != MISSING else fresh.swum,
            posse=c.posse if c.posse != MISSING else fresh.posse,
            stanford=c.stanford if c.stanford != MISSING else fresh.stanford,
        )
        for c, fresh in zip(current, computed)
    ]
    return replace(record, constituent=merged)


def ensure_constituents(records, conjugation: Conjugation):
    return [fill_missing_constituents(r, conjugation) for r in records]
