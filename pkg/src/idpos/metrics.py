"""Evaluation metrics for word- and identifier-level tagging quality.

Word-level metrics derive from a confusion matrix over gold/predicted
labels: accuracy, balanced accuracy (mean per-tag recall over tags with
gold support), and support-weighted precision/recall/F1.  Identifier-level
accuracy counts a name as correct only when its whole tag sequence matches.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Mapping, Sequence

import numpy as np

from .corpus import IdentifierRecord
from .tagset import IdentifierContext


@dataclass
class ConfusionMatrix:
    """Square count table indexed by (gold, predicted) label, fixed order."""

    labels: tuple[str, ...]
    counts: np.ndarray

    @classmethod
    def from_pairs(
        cls,
        gold: Sequence[str],
        pred: Sequence[str],
        labels: Sequence[str] | None = None,
    ) -> "ConfusionMatrix":
        if len(gold) != len(pred):
            raise ValueError(
                f"gold and predicted lengths differ: {len(gold)} vs {len(pred)}"
            )
        if labels is None:
            labels = sorted(set(gold) | set(pred))
        labels = tuple(labels)
        index = {label: i for i, label in enumerate(labels)}
        counts = np.zeros((len(labels), len(labels)), dtype=np.int64)
        for g, p in zip(gold, pred):
            counts[index[g], index[p]] += 1
        return cls(labels=labels, counts=counts)

    @property
    def total(self) -> int:
        return int(self.counts.sum())

    def gold_support(self) -> np.ndarray:
        return self.counts.sum(axis=1)

    def predicted_total(self) -> np.ndarray:
        return self.counts.sum(axis=0)


@dataclass
class TagMetrics:
    precision: float
    recall: float
    f1: float
    support: int
    predicted: int


@dataclass
class ContextMetrics:
    word_total: int = 0
    word_correct: int = 0
    identifier_total: int = 0
    identifier_correct: int = 0

    @property
    def word_accuracy(self) -> float:
        return self.word_correct / self.word_total if self.word_total else 0.0

    @property
    def identifier_accuracy(self) -> float:
        if not self.identifier_total:
            return 0.0
        return self.identifier_correct / self.identifier_total


@dataclass
class EvaluationReport:
    confusion: ConfusionMatrix
    accuracy: float
    balanced_accuracy: float
    weighted_precision: float
    weighted_recall: float
    weighted_f1: float
    per_tag: dict[str, TagMetrics]
    identifier_accuracy: float = 0.0
    per_context: dict[IdentifierContext, ContextMetrics] = field(default_factory=dict)

    def scalar(self, name: str) -> float:
        return float(getattr(self, name))


def _f1(precision: float, recall: float) -> float:
    if precision + recall == 0.0:
        return 0.0
    return 2.0 * precision * recall / (precision + recall)


def word_metrics(gold: Sequence[str], pred: Sequence[str]) -> EvaluationReport:
    """Word-level metrics from parallel gold/predicted label sequences."""
    if not gold:
        raise ValueError("cannot score an empty label sequence")
    cm = ConfusionMatrix.from_pairs(gold, pred)
    support = cm.gold_support()
    predicted = cm.predicted_total()
    diag = np.diag(cm.counts)
    total = cm.total

    per_tag: dict[str, TagMetrics] = {}
    recalls_supported = []
    weighted_p = weighted_r = weighted_f = 0.0
    for i, label in enumerate(cm.labels):
        s, p_total, correct = int(support[i]), int(predicted[i]), int(diag[i])
        precision = correct / p_total if p_total else 0.0
        recall = correct / s if s else 0.0
        f1 = _f1(precision, recall)
        per_tag[label] = TagMetrics(
            precision=precision, recall=recall, f1=f1, support=s, predicted=p_total
        )
        if s > 0:
            recalls_supported.append(recall)
            weighted_p += s * precision
            weighted_r += s * recall
            weighted_f += s * f1

    accuracy = int(diag.sum()) / total
    balanced = sum(recalls_supported) / len(recalls_supported)
    return EvaluationReport(
        confusion=cm,
        accuracy=accuracy,
        balanced_accuracy=balanced,
        weighted_precision=weighted_p / total,
        weighted_recall=weighted_r / total,
        weighted_f1=weighted_f / total,
        per_tag=per_tag,
    )


def _record_gold_labels(record: IdentifierRecord) -> list[str]:
    if record.gold is None:
        raise ValueError(f"record {record.id} has no gold tags")
    return [tag.value for tag in record.gold]


def identifier_accuracy(
    records: Sequence[IdentifierRecord], predictions: Mapping[str, Sequence[str]]
) -> float:
    """Fraction of identifiers whose full predicted sequence matches gold."""
    if not records:
        raise ValueError("no records to score")
    correct = 0
    for record in records:
        gold = _record_gold_labels(record)
        if record.id not in predictions:
            raise ValueError(f"record {record.id} has no prediction")
        if list(predictions[record.id]) == gold:
            correct += 1
    return correct / len(records)


def evaluate_records(
    records: Sequence[IdentifierRecord], predictions: Mapping[str, Sequence[str]]
) -> EvaluationReport:
    """Full report: word metrics, identifier accuracy, per-context cells."""
    gold_flat: list[str] = []
    pred_flat: list[str] = []
    per_context: dict[IdentifierContext, ContextMetrics] = {}
    id_correct = 0
    for record in records:
        gold = _record_gold_labels(record)
        if record.id not in predictions:
            raise ValueError(f"record {record.id} has no prediction")
        pred = list(predictions[record.id])
        if len(pred) != len(gold):
            raise ValueError(
                f"record {record.id}: prediction length {len(pred)} "
                f"!= word count {len(gold)}"
            )
        gold_flat.extend(gold)
        pred_flat.extend(pred)
        cell = per_context.setdefault(record.context, ContextMetrics())
        cell.word_total += len(gold)
        cell.word_correct += sum(g == p for g, p in zip(gold, pred))
        cell.identifier_total += 1
        exact = pred == gold
        cell.identifier_correct += exact
        id_correct += exact
    report = word_metrics(gold_flat, pred_flat)
    report.identifier_accuracy = id_correct / len(records)
    report.per_context = per_context
    return report


METRIC_NAMES = ("accuracy", "balanced_accuracy", "f1", "precision", "recall")

_METRIC_FIELDS = {
    "accuracy": "accuracy",
    "balanced_accuracy": "balanced_accuracy",
    "f1": "weighted_f1",
    "precision": "weighted_precision",
    "recall": "weighted_recall",
}


def score(gold: Sequence[str], pred: Sequence[str], metric: str) -> float:
    if metric not in _METRIC_FIELDS:
        raise ValueError(
            f"unknown metric {metric!r}; choose from {sorted(_METRIC_FIELDS)}"
        )
    return word_metrics(gold, pred).scalar(_METRIC_FIELDS[metric])


def permutation_importance(
    model,
    vectors: Sequence[dict[str, str]],
    labels: Sequence[str],
    feature: str,
    metric: str = "accuracy",
    n_repeats: int = 5,
    seed: int = 0,
) -> float:
    """Mean score decrease when one feature column is shuffled.

    The baseline score minus the average score over n_repeats shuffles of
    the feature's encoded column; deterministic for a fixed seed.
    """
    if feature not in model.features:
        raise ValueError(f"model does not use feature {feature!r}")
    if metric not in _METRIC_FIELDS:
        raise ValueError(f"unknown metric {metric!r}")
    X = model.encoder.transform(vectors)
    column = list(model.features).index(feature)
    baseline = score(labels, model.predict_encoded(X), metric)
    rng = random.Random(seed)
    n = X.shape[0]
    total = 0.0
    for _ in range(n_repeats):
        perm = list(range(n))
        rng.shuffle(perm)
        shuffled = X.copy()
        shuffled[:, column] = X[perm, column]
        total += score(labels, model.predict_encoded(shuffled), metric)
    return baseline - total / n_repeats


def all_feature_subsets(features: Sequence[str]) -> list[tuple[str, ...]]:
    """Every non-empty subset, enumerated smallest-first in feature order."""
    from itertools import combinations

    features = tuple(features)
    subsets: list[tuple[str, ...]] = []
    for size in range(1, len(features) + 1):
        subsets.extend(combinations(features, size))
    return subsets


@dataclass
class DropColumnResult:
    rows: list[tuple[tuple[str, ...], dict[str, float]]]
    best: dict[str, tuple[str, ...]]


def drop_column_importance(
    records: Sequence[IdentifierRecord],
    features: Sequence[str],
    hp,
    config,
    k: int = 5,
    seed: int = 0,
) -> DropColumnResult:
    """Retrain and cross-validate one model per non-empty feature subset.

    Returns the mean f1 / accuracy / balanced accuracy per subset plus the
    best subset for each of the three metrics.
    """
    from .learners import kfold_evaluate

    if not features:
        raise ValueError("need at least one feature")
    rows = []
    for subset in all_feature_subsets(features):
        result = kfold_evaluate(records, k, hp, config, subset, seed)
        rows.append(
            (
                subset,
                {
                    "f1": result.mean_metrics["weighted_f1"],
                    "accuracy": result.mean_metrics["accuracy"],
                    "balanced_accuracy": result.mean_metrics["balanced_accuracy"],
                },
            )
        )
    best = {
        metric: max(rows, key=lambda row: row[1][metric])[0]
        for metric in ("f1", "accuracy", "balanced_accuracy")
    }
    return DropColumnResult(rows=rows, best=best)
