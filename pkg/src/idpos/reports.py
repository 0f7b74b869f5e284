"""Report serialization: tab-separated tables and JSON documents.

Every report opens with '#'-prefixed comment lines echoing the run
configuration, so a report file alone is enough to reproduce the run.
Numbers print with six decimals to keep files byte-stable across runs.
"""

from __future__ import annotations

import json
from pathlib import Path
from typing import Mapping, Sequence

from .analysis import ContextRow, MisannotationRow
from .metrics import EvaluationReport


def fmt(value: float) -> str:
    return f"{value:.6f}"


def run_header(run: Mapping[str, object]) -> list[str]:
    return [f"# {key}\t{run[key]}" for key in run]


def _write(path: str | Path, lines: Sequence[str]) -> None:
    Path(path).write_text("\n".join(lines) + "\n", encoding="utf-8", newline="\n")


def write_json(path: str | Path, document: dict) -> None:
    Path(path).write_text(
        json.dumps(document, sort_keys=True, indent=2) + "\n",
        encoding="utf-8",
        newline="\n",
    )


# -- cross-validation ------------------------------------------------------

CROSSVAL_METRICS = (
    ("accuracy", "Accuracy"),
    ("balanced_accuracy", "Balanced Accuracy"),
    ("weighted_f1", "Weighted F1"),
    ("weighted_precision", "Weighted Precision"),
    ("weighted_recall", "Weighted Recall"),
    ("identifier_accuracy", "Identifier Accuracy"),
)


def crossval_lines(
    fold_reports: Sequence[EvaluationReport],
    mean_metrics: Mapping[str, float],
    run: Mapping[str, object],
) -> list[str]:
    k = len(fold_reports)
    lines = run_header(run)
    lines.append("\t".join(["metric"] + [f"fold_{i + 1}" for i in range(k)] + ["average"]))
    for name, label in CROSSVAL_METRICS:
        cells = [fmt(getattr(report, name)) for report in fold_reports]
        lines.append("\t".join([label] + cells + [fmt(mean_metrics[name])]))
    return lines


def write_crossval_tsv(path, fold_reports, mean_metrics, run) -> None:
    _write(path, crossval_lines(fold_reports, mean_metrics, run))


def crossval_document(fold_reports, mean_metrics, run) -> dict:
    return {
        "run": dict(run),
        "folds": [
            {name: getattr(report, name) for name, _ in CROSSVAL_METRICS}
            for report in fold_reports
        ],
        "average": {name: mean_metrics[name] for name, _ in CROSSVAL_METRICS},
    }


# -- per-tag table ---------------------------------------------------------


def per_tag_lines(report: EvaluationReport, run: Mapping[str, object]) -> list[str]:
    lines = run_header(run)
    lines.append("annotation\tsupport\tprecision\trecall\tf1\tpredicted")
    for label in report.confusion.labels:
        tag = report.per_tag[label]
        lines.append(
            "\t".join(
                (
                    label,
                    str(tag.support),
                    fmt(tag.precision),
                    fmt(tag.recall),
                    fmt(tag.f1),
                    str(tag.predicted),
                )
            )
        )
    lines.append(f"# accuracy\t{fmt(report.accuracy)}")
    return lines


def per_tag_document(report: EvaluationReport) -> dict:
    return {
        "accuracy": report.accuracy,
        "balanced_accuracy": report.balanced_accuracy,
        "weighted_precision": report.weighted_precision,
        "weighted_recall": report.weighted_recall,
        "weighted_f1": report.weighted_f1,
        "identifier_accuracy": report.identifier_accuracy,
        "per_tag": {
            label: {
                "support": tag.support,
                "precision": tag.precision,
                "recall": tag.recall,
                "f1": tag.f1,
                "predicted": tag.predicted,
            }
            for label, tag in report.per_tag.items()
        },
    }


# -- per-context table -----------------------------------------------------


def context_lines(rows: Sequence[ContextRow], run: Mapping[str, object]) -> list[str]:
    lines = run_header(run)
    lines.append(
        "context\tword_total\tword_accuracy\tidentifier_total\tidentifier_accuracy"
    )
    for row in rows:
        lines.append(
            "\t".join(
                (
                    row.context,
                    str(row.word_total),
                    fmt(row.word_accuracy),
                    str(row.identifier_total),
                    fmt(row.identifier_accuracy),
                )
            )
        )
    return lines


def context_document(rows: Sequence[ContextRow]) -> list[dict]:
    return [
        {
            "context": row.context,
            "word_total": row.word_total,
            "word_accuracy": row.word_accuracy,
            "identifier_total": row.identifier_total,
            "identifier_accuracy": row.identifier_accuracy,
        }
        for row in rows
    ]


# -- mis-annotation ranking ------------------------------------------------


def misannotation_lines(
    rows: Sequence[MisannotationRow], run: Mapping[str, object]
) -> list[str]:
    lines = run_header(run)
    lines.append("grammar_pattern\tincorrect\tactual\tproportion")
    for row in rows:
        lines.append(
            f"{row.pattern}\t{row.incorrect}\t{row.actual}\t{row.proportion:.2f}"
        )
    return lines


def misannotation_document(rows: Sequence[MisannotationRow]) -> list[dict]:
    return [
        {
            "grammar_pattern": str(row.pattern),
            "incorrect": row.incorrect,
            "actual": row.actual,
            "proportion": row.proportion,
        }
        for row in rows
    ]


# -- feature importances ---------------------------------------------------


def permutation_lines(
    rows: Sequence[tuple[str, str, list[float]]],
    k: int,
    run: Mapping[str, object],
) -> list[str]:
    """Rows are (metric, feature, per-fold importances)."""
    lines = run_header(run)
    lines.append(
        "\t".join(["metric", "feature"] + [f"fold_{i + 1}" for i in range(k)] + ["average"])
    )
    for metric, feature, values in rows:
        avg = sum(values) / len(values)
        lines.append(
            "\t".join([metric, feature] + [fmt(v) for v in values] + [fmt(avg)])
        )
    return lines


def dropcolumn_lines(
    rows: Sequence[tuple[tuple[str, ...], dict[str, float]]],
    best: Mapping[str, tuple[str, ...]],
    run: Mapping[str, object],
) -> list[str]:
    lines = run_header(run)
    for metric in ("f1", "accuracy", "balanced_accuracy"):
        lines.append(f"# best_{metric}\t{','.join(best[metric])}")
    lines.append("features\tf1\taccuracy\tbalanced_accuracy")
    for subset, scores in rows:
        lines.append(
            "\t".join(
                (
                    ",".join(subset),
                    fmt(scores["f1"]),
                    fmt(scores["accuracy"]),
                    fmt(scores["balanced_accuracy"]),
                )
            )
        )
    return lines


def permutation_document(
    rows: Sequence[tuple[str, str, list[float]]], run: Mapping[str, object]
) -> dict:
    return {
        "run": dict(run),
        "rows": [
            {
                "metric": metric,
                "feature": feature,
                "folds": list(values),
                "average": sum(values) / len(values),
            }
            for metric, feature, values in rows
        ],
    }


def dropcolumn_document(
    rows: Sequence[tuple[tuple[str, ...], dict[str, float]]],
    best: Mapping[str, tuple[str, ...]],
    run: Mapping[str, object],
) -> dict:
    return {
        "run": dict(run),
        "best": {metric: list(subset) for metric, subset in best.items()},
        "rows": [
            {"features": list(subset), **scores} for subset, scores in rows
        ],
    }


# -- grid search -----------------------------------------------------------


def gridsearch_document(result, run: Mapping[str, object]) -> dict:
    best = result.best
    return {
        "run": dict(run),
        "best": best.to_dict(),
        "rows": [
            {
                "criterion": hp.criterion.value,
                "max_depth": hp.max_depth,
                "n_estimators": hp.n_estimators,
                "bootstrap": hp.bootstrap,
                "folds": list(scores),
                "mean": mean,
            }
            for hp, scores, mean in result.rows
        ],
    }


def gridsearch_lines(result, k: int, run: Mapping[str, object]) -> list[str]:
    lines = run_header(run)
    best = result.best
    lines.append(
        f"# best\tcriterion={best.criterion} max_depth={best.max_depth} "
        f"n_estimators={best.n_estimators} bootstrap={best.bootstrap}"
    )
    lines.append(
        "\t".join(
            ["criterion", "max_depth", "n_estimators", "bootstrap"]
            + [f"fold_{i + 1}" for i in range(k)]
            + ["average"]
        )
    )
    for hp, scores, mean in result.rows:
        lines.append(
            "\t".join(
                [
                    hp.criterion.value,
                    str(hp.max_depth),
                    str(hp.n_estimators),
                    str(hp.bootstrap).lower(),
                ]
                + [fmt(s) for s in scores]
                + [fmt(mean)]
            )
        )
    return lines
