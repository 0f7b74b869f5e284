"""Identifier-name splitting into ordered word sequences.

Splits at delimiters and camel-case boundaries without a dictionary, the
way hand-split corpora are tokenized.  Abbreviations are never expanded.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

# Inside an alphanumeric chunk: a maximal uppercase run not followed by
# lowercase (acronym), a capitalized word, a lowercase run, or a digit run.
_TOKEN_RE = re.compile(r"[A-Z]+(?![a-z])|[A-Z][a-z]+|[a-z]+|[0-9]+")

_CHUNK_RE = re.compile(r"[A-Za-z0-9]+")

# A digit run stays attached when it directly follows a short all-uppercase
# token: domain abbreviations like IPV4 or GL2 are one term, not two.
_ACRONYM_DIGIT_MAX = 4


class UnsplittableIdentifier(ValueError):
    """Raised for names with no alphanumeric content."""


@dataclass(frozen=True)
class SplitIdentifier:
    raw: str
    words: tuple[str, ...]

    @property
    def positions(self) -> tuple[int, ...]:
        return tuple(range(1, len(self.words) + 1))

    def __len__(self) -> int:
        return len(self.words)


def _split_chunk(chunk: str) -> list[str]:
    tokens: list[str] = []
    for tok in _TOKEN_RE.findall(chunk):
        if (
            tok.isdigit()
            and tokens
            and tokens[-1].isupper()
            and tokens[-1].isalpha()
            and len(tokens[-1]) <= _ACRONYM_DIGIT_MAX
        ):
            tokens[-1] += tok
        else:
            tokens.append(tok)
    return tokens


def split(raw: str) -> SplitIdentifier:
    """Split an identifier into its ordered words.

    Delimiters are removed, camel-case boundaries are cut (an uppercase run
    keeps its last capital with the following lowercase word: XMLReader ->
    XML, Reader), and digit runs become their own token unless attached to a
    short uppercase abbreviation (IPV4 stays IPV4).  Only ASCII letters and
    digits count as word content; anything else, including non-ASCII
    letters, acts as a delimiter.
    """
    words: list[str] = []
    for chunk in _CHUNK_RE.findall(raw):
        words.extend(_split_chunk(chunk))
    if not words:
        raise UnsplittableIdentifier(
            f"identifier has no alphanumeric characters: {raw!r}"
        )
    return SplitIdentifier(raw=raw, words=tuple(words))
