"""Grammar-pattern derivation, mis-annotation ranking, per-context tables."""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass
from typing import Mapping, Sequence

from .corpus import IdentifierRecord
from .metrics import ContextMetrics
from .tagset import IdentifierContext


@dataclass(frozen=True)
class GrammarPattern:
    """The ordered tag sequence of one identifier, e.g. "V NM N"."""

    tags: tuple[str, ...]

    def __post_init__(self) -> None:
        if not self.tags:
            raise ValueError("a grammar pattern needs at least one tag")

    def __str__(self) -> str:
        return " ".join(self.tags)

    def __len__(self) -> int:
        return len(self.tags)

    @classmethod
    def parse(cls, text: str) -> "GrammarPattern":
        return cls(tuple(text.split()))


def pattern_of(tags: Sequence) -> GrammarPattern:
    return GrammarPattern(tuple(str(tag) for tag in tags))


@dataclass(frozen=True)
class MisannotationRow:
    pattern: GrammarPattern
    incorrect: int
    actual: int

    @property
    def proportion(self) -> float:
        return self.incorrect / self.actual


def misannotation_ranking(
    records: Sequence[IdentifierRecord],
    predictions: Mapping[str, Sequence[str]],
    top_k: int,
    group_by_predicted: bool = False,
) -> list[MisannotationRow]:
    """Rank gold grammar patterns by how often they were mis-annotated.

    Proportion is mis-annotated occurrences over total occurrences of the
    pattern; ties sort by higher occurrence count, then pattern text.
    Fully-correct patterns are omitted.  ``group_by_predicted`` groups by
    the predicted pattern instead, for exploring error modes.
    """
    if top_k < 1:
        raise ValueError("top_k must be >= 1")
    totals: dict[str, int] = defaultdict(int)
    wrong: dict[str, int] = defaultdict(int)
    for record in records:
        if record.gold is None:
            raise ValueError(f"record {record.id} has no gold tags")
        if record.id not in predictions:
            raise ValueError(f"record {record.id} has no prediction")
        gold = [tag.value for tag in record.gold]
        pred = list(predictions[record.id])
        key = str(pattern_of(pred if group_by_predicted else gold))
        totals[key] += 1
        if pred != gold:
            wrong[key] += 1
    rows = [
        MisannotationRow(
            pattern=GrammarPattern.parse(key),
            incorrect=wrong[key],
            actual=totals[key],
        )
        for key in totals
        if wrong[key] > 0
    ]
    rows.sort(key=lambda r: (-r.proportion, -r.actual, str(r.pattern)))
    return rows[:top_k]


@dataclass(frozen=True)
class ContextRow:
    context: str
    word_total: int
    word_accuracy: float
    identifier_total: int
    identifier_accuracy: float


def per_context_report(
    records: Sequence[IdentifierRecord],
    predictions: Mapping[str, Sequence[str]],
) -> list[ContextRow]:
    """Word and identifier accuracy per declaring context, plus an overall
    row, contexts in alphabetical order."""
    cells: dict[IdentifierContext, ContextMetrics] = {}
    overall = ContextMetrics()
    for record in records:
        if record.gold is None:
            raise ValueError(f"record {record.id} has no gold tags")
        gold = [tag.value for tag in record.gold]
        pred = list(predictions[record.id])
        cell = cells.setdefault(record.context, ContextMetrics())
        for bucket in (cell, overall):
            bucket.word_total += len(gold)
            bucket.word_correct += sum(g == p for g, p in zip(gold, pred))
            bucket.identifier_total += 1
            bucket.identifier_correct += pred == gold
    rows = []
    for context in sorted(IdentifierContext, key=lambda c: c.value):
        cell = cells.get(context)
        if cell is None:
            continue
        rows.append(
            ContextRow(
                context=context.value.capitalize(),
                word_total=cell.word_total,
                word_accuracy=cell.word_accuracy,
                identifier_total=cell.identifier_total,
                identifier_accuracy=cell.identifier_accuracy,
            )
        )
    rows.append(
        ContextRow(
            context="Overall",
            word_total=overall.word_total,
            word_accuracy=overall.word_accuracy,
            identifier_total=overall.identifier_total,
            identifier_accuracy=overall.identifier_accuracy,
        )
    )
    return rows
