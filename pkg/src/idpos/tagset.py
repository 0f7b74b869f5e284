"""Reduced tag alphabet, Penn Treebank mapping, and dataset transforms.

Identifier words are annotated with a reduced part-of-speech alphabet of
twelve symbols (eleven grammatical categories plus OTHER, which only appears
in augmented datasets where low-frequency tags are merged).  General-purpose
English taggers emit Penn Treebank annotations; ``map_penn_to_reduced``
projects the 27 Penn tags that occur in identifier text onto the reduced
alphabet.
"""

from __future__ import annotations

import enum
from collections import Counter
from dataclasses import dataclass
from typing import Iterable, Sequence

# Sentinel for an absent constituent-tagger annotation in corpus files.
# It is a visible categorical value: the learners may split on it.
MISSING = "MISSING"


class Tag(str, enum.Enum):
    """Reduced part-of-speech alphabet for identifier words."""

    N = "N"          # noun
    DT = "DT"        # determiner
    CJ = "CJ"        # conjunction
    P = "P"          # preposition
    NPL = "NPL"      # plural noun
    NM = "NM"        # noun modifier (adjective or noun-adjunct)
    V = "V"          # verb
    VM = "VM"        # verb modifier (adverb)
    PR = "PR"        # pronoun
    D = "D"          # digit
    PRE = "PRE"      # preamble prefix
    OTHER = "OTHER"  # merged low-frequency tags (augmented datasets only)

    def __str__(self) -> str:
        return self.value


class PennTag(str, enum.Enum):
    """Penn Treebank annotations with a defined reduced mapping."""

    CC = "CC"            # conjunction
    CD = "CD"            # cardinal number
    DT = "DT"            # determiner
    FW = "FW"            # foreign word
    IN = "IN"            # preposition
    JJ = "JJ"            # adjective
    JJR = "JJR"          # comparative adjective
    JJS = "JJS"          # superlative adjective
    LS = "LS"            # list item
    MD = "MD"            # modal
    NN = "NN"            # singular noun
    NNP = "NNP"          # proper noun
    NNPS = "NNPS"        # plural proper noun
    NNS = "NNS"          # plural noun
    PRP = "PRP"          # personal pronoun
    PRP_POSS = "PRP$"    # possessive pronoun
    RB = "RB"            # adverb
    RBR = "RBR"          # comparative adverb
    RP = "RP"            # particle
    SYM = "SYM"          # symbol
    TO = "TO"            # "to" preposition
    VB = "VB"            # base-form verb
    VBD = "VBD"          # past-tense verb
    VBG = "VBG"          # present participle
    VBN = "VBN"          # past participle
    VBP = "VBP"          # non-3rd-person present verb
    VBZ = "VBZ"          # 3rd-person present verb

    def __str__(self) -> str:
        return self.value


class IdentifierContext(str, enum.Enum):
    """Category of the site declaring an identifier."""

    FUNCTION = "FUNCTION"
    CLASS = "CLASS"
    ATTRIBUTE = "ATTRIBUTE"
    PARAMETER = "PARAMETER"
    DECLARATION = "DECLARATION"

    def __str__(self) -> str:
        return self.value


class Conjugation(str, enum.Enum):
    """Whether verb-conjugation labels are kept verbatim or collapsed to V."""

    CONJUGATED = "CONJUGATED"
    NORMALIZED = "NORMALIZED"

    def __str__(self) -> str:
        return self.value


class Variant(str, enum.Enum):
    """Plain keeps the full tag alphabet; augmented merges rare tags."""

    PLAIN = "PLAIN"
    AUGMENTED = "AUGMENTED"

    def __str__(self) -> str:
        return self.value


@dataclass(frozen=True)
class DatasetConfiguration:
    """One of the dataset preparation modes used for training/evaluation."""

    variant: Variant = Variant.PLAIN
    conjugation: Conjugation = Conjugation.CONJUGATED
    augment_threshold: int = 25

    def __post_init__(self) -> None:
        if self.augment_threshold <= 0:
            raise ValueError("augment_threshold must be positive")


# Penn tags whose reduced target depends on usage: kept verbatim in
# conjugated feature data, resolved by declaring context in gold labels.
VERB_OR_MODIFIER = frozenset({PennTag.VBD, PennTag.VBG, PennTag.VBN})

# String forms of the raw conjugation labels admitted as feature values.
CONJUGATION_LABELS = frozenset(t.value for t in VERB_OR_MODIFIER)

_PENN_TO_REDUCED = {
    PennTag.CC: Tag.CJ,
    PennTag.CD: Tag.D,
    PennTag.DT: Tag.DT,
    PennTag.FW: Tag.N,
    PennTag.IN: Tag.P,
    PennTag.JJ: Tag.NM,
    PennTag.JJR: Tag.NM,
    PennTag.JJS: Tag.NM,
    PennTag.LS: Tag.N,
    PennTag.MD: Tag.V,
    PennTag.NN: Tag.N,
    PennTag.NNP: Tag.N,
    PennTag.NNPS: Tag.NPL,
    PennTag.NNS: Tag.NPL,
    PennTag.PRP: Tag.PR,
    PennTag.PRP_POSS: Tag.PR,
    PennTag.RB: Tag.VM,
    PennTag.RBR: Tag.VM,
    PennTag.RP: Tag.VM,
    PennTag.SYM: Tag.N,
    PennTag.TO: Tag.P,
    PennTag.VB: Tag.V,
    PennTag.VBP: Tag.V,
    PennTag.VBZ: Tag.V,
}


def map_penn_to_reduced(
    penn: PennTag,
    conjugation: Conjugation,
    context: IdentifierContext,
    *,
    gold: bool = False,
) -> str:
    """Project a Penn Treebank annotation onto the reduced alphabet.

    Returns the label string used as a feature value.  VBD/VBG/VBN are the
    only context-sensitive rows: as feature values they stay verbatim under
    CONJUGATED and collapse to V under NORMALIZED.  With ``gold=True`` the
    same rows resolve the way human annotation treats them: a verb when the
    identifier is a function name, a noun modifier everywhere else.
    """
    if penn in VERB_OR_MODIFIER:
        if gold:
            tag = Tag.V if context is IdentifierContext.FUNCTION else Tag.NM
            return tag.value
        if conjugation is Conjugation.CONJUGATED:
            return penn.value
        return Tag.V.value
    return _PENN_TO_REDUCED[penn].value


def normalize_stanford_label(label: str, conjugation: Conjugation) -> str:
    """Collapse raw conjugation feature labels to V under NORMALIZED."""
    if conjugation is Conjugation.NORMALIZED and label in CONJUGATION_LABELS:
        return Tag.V.value
    return label


def rare_tags(
    train_sequences: Iterable[Sequence[Tag]], threshold: int
) -> frozenset[Tag]:
    """Tags whose total frequency in the training split is below threshold."""
    if threshold < 1:
        raise ValueError("threshold must be >= 1")
    counts: Counter[Tag] = Counter()
    for seq in train_sequences:
        counts.update(seq)
    return frozenset(tag for tag, n in counts.items() if n < threshold)


def relabel_rare(seq: Sequence[Tag], rare: frozenset[Tag]) -> list[Tag]:
    return [Tag.OTHER if tag in rare else tag for tag in seq]


def apply_augmentation(
    train_sequences: Sequence[Sequence[Tag]],
    threshold: int = 25,
    test_sequences: Sequence[Sequence[Tag]] | None = None,
):
    """Merge low-frequency gold tags into OTHER.

    Frequencies are counted over the training split only; the resulting
    relabeling is applied to the test split as well when one is given, so a
    model never consults test-set statistics.  Returns the relabeled training
    corpus, or a (train, test) pair when ``test_sequences`` is supplied.
    """
    rare = rare_tags(train_sequences, threshold)
    relabeled = [relabel_rare(seq, rare) for seq in train_sequences]
    if test_sequences is None:
        return relabeled
    return relabeled, [relabel_rare(seq, rare) for seq in test_sequences]


# Valid serialized values per corpus column.
GOLD_LABELS = frozenset(t.value for t in Tag)
CONSTITUENT_LABELS = GOLD_LABELS | CONJUGATION_LABELS | {MISSING}
