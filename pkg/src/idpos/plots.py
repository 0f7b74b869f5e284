"""Figure rendering for the report paths (Agg backend, files only)."""

from __future__ import annotations

from pathlib import Path
from typing import Mapping, Sequence

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
import numpy as np

from .analysis import ContextRow, MisannotationRow
from .metrics import EvaluationReport


def save_fold_metrics(
    fold_reports: Sequence[EvaluationReport],
    mean_metrics: Mapping[str, float],
    path: str | Path,
) -> None:
    names = ["accuracy", "balanced_accuracy", "weighted_f1"]
    k = len(fold_reports)
    x = np.arange(k)
    width = 0.8 / len(names)
    fig, ax = plt.subplots(figsize=(7, 3.5))
    for j, name in enumerate(names):
        values = [getattr(r, name) for r in fold_reports]
        ax.bar(x + j * width, values, width, label=name.replace("_", " "))
        ax.axhline(mean_metrics[name], lw=0.7, ls="--", color=f"C{j}", alpha=0.6)
    ax.set_xticks(x + width)
    ax.set_xticklabels([f"fold {i + 1}" for i in range(k)])
    ax.set_ylim(0, 1.05)
    ax.set_ylabel("score")
    ax.legend(fontsize=8)
    fig.tight_layout()
    fig.savefig(path, dpi=120)
    plt.close(fig)


def save_confusion(report: EvaluationReport, path: str | Path) -> None:
    cm = report.confusion
    n = len(cm.labels)
    fig, ax = plt.subplots(figsize=(0.6 * n + 2, 0.6 * n + 1.5))
    ax.imshow(cm.counts, cmap="Blues")
    ax.set_xticks(range(n))
    ax.set_yticks(range(n))
    ax.set_xticklabels(cm.labels, rotation=45, ha="right", fontsize=8)
    ax.set_yticklabels(cm.labels, fontsize=8)
    ax.set_xlabel("predicted")
    ax.set_ylabel("gold")
    vmax = cm.counts.max() or 1
    for i in range(n):
        for j in range(n):
            count = int(cm.counts[i, j])
            if count:
                color = "white" if count > vmax / 2 else "black"
                ax.text(j, i, str(count), ha="center", va="center",
                        fontsize=7, color=color)
    fig.tight_layout()
    fig.savefig(path, dpi=120)
    plt.close(fig)


def save_per_tag_f1(report: EvaluationReport, path: str | Path) -> None:
    labels = [l for l in report.confusion.labels if report.per_tag[l].support > 0]
    values = [report.per_tag[l].f1 for l in labels]
    fig, ax = plt.subplots(figsize=(max(4, 0.6 * len(labels)), 3.2))
    ax.bar(labels, values, color="C0")
    ax.set_ylim(0, 1.05)
    ax.set_ylabel("F1")
    fig.tight_layout()
    fig.savefig(path, dpi=120)
    plt.close(fig)


def save_context_accuracy(rows: Sequence[ContextRow], path: str | Path) -> None:
    names = [row.context for row in rows]
    x = np.arange(len(names))
    fig, ax = plt.subplots(figsize=(6.5, 3.2))
    ax.bar(x - 0.2, [r.word_accuracy for r in rows], 0.4, label="word")
    ax.bar(x + 0.2, [r.identifier_accuracy for r in rows], 0.4, label="identifier")
    ax.set_xticks(x)
    ax.set_xticklabels(names, rotation=20, ha="right", fontsize=8)
    ax.set_ylim(0, 1.05)
    ax.set_ylabel("accuracy")
    ax.legend(fontsize=8)
    fig.tight_layout()
    fig.savefig(path, dpi=120)
    plt.close(fig)


def save_misannotation(rows: Sequence[MisannotationRow], path: str | Path) -> None:
    names = [str(row.pattern) for row in rows][::-1]
    values = [row.proportion for row in rows][::-1]
    fig, ax = plt.subplots(figsize=(6.5, 0.45 * max(len(rows), 2) + 1.5))
    ax.barh(names, values, color="C3")
    ax.set_xlim(0, 1.05)
    ax.set_xlabel("proportion mis-annotated")
    fig.tight_layout()
    fig.savefig(path, dpi=120)
    plt.close(fig)


def save_importances(
    rows: Sequence[tuple[str, str, list[float]]], path: str | Path
) -> None:
    """Permutation importances: one bar group per feature, one bar per metric."""
    metrics = sorted({metric for metric, _, _ in rows})
    features = []
    for _, feature, _ in rows:
        if feature not in features:
            features.append(feature)
    x = np.arange(len(features))
    width = 0.8 / max(len(metrics), 1)
    averages = {
        (metric, feature): sum(values) / len(values)
        for metric, feature, values in rows
    }
    fig, ax = plt.subplots(figsize=(7, 3.5))
    for j, metric in enumerate(metrics):
        values = [averages.get((metric, f), 0.0) for f in features]
        ax.bar(x + j * width, values, width, label=metric)
    ax.set_xticks(x + width * (len(metrics) - 1) / 2)
    ax.set_xticklabels(features, rotation=20, ha="right", fontsize=8)
    ax.set_ylabel("mean score decrease")
    ax.legend(fontsize=8)
    fig.tight_layout()
    fig.savefig(path, dpi=120)
    plt.close(fig)


def save_subset_scores(
    rows: Sequence[tuple[tuple[str, ...], dict[str, float]]],
    path: str | Path,
    top: int = 15,
) -> None:
    ranked = sorted(rows, key=lambda row: -row[1]["f1"])[:top][::-1]
    names = [",".join(subset) for subset, _ in ranked]
    values = [scores["f1"] for _, scores in ranked]
    fig, ax = plt.subplots(figsize=(7, 0.4 * max(len(ranked), 2) + 1.5))
    ax.barh(names, values, color="C2")
    ax.set_xlabel("mean weighted F1")
    ax.tick_params(axis="y", labelsize=7)
    fig.tight_layout()
    fig.savefig(path, dpi=120)
    plt.close(fig)
