"""Decision-tree and random-forest classifiers over categorical features.

Both learners are written from scratch.  Trees use binary equality splits
("feature == value") because the features are categorical: an ordinal
threshold over tag codes would be meaningless.  Every tie (split choice,
leaf argmax, forest vote) breaks along a fixed lexical order, and all
randomness flows from explicit seeds, so training and prediction are fully
reproducible across runs and platforms.
"""

from __future__ import annotations

import enum
import json
import math
import random
from dataclasses import dataclass, field
from pathlib import Path
from typing import Sequence

import numpy as np

from .corpus import FoldAssignment, IdentifierRecord, assign_folds
from .features import (
    BEST_FEATURES,
    FeatureEncoder,
    FeatureError,
    gold_labels,
    normalize_constituents,
    prepare_split,
    validate_subset,
    vectorize,
    vectorize_all,
)
from .metrics import EvaluationReport, evaluate_records
from .tagset import DatasetConfiguration

MODEL_FORMAT_VERSION = 1


class ModelError(ValueError):
    pass


class Criterion(str, enum.Enum):
    GINI = "gini"
    ENTROPY = "entropy"

    def __str__(self) -> str:
        return self.value


class Algorithm(str, enum.Enum):
    DECISION_TREE = "decision_tree"
    RANDOM_FOREST = "random_forest"

    def __str__(self) -> str:
        return self.value


@dataclass(frozen=True)
class Hyperparameters:
    algorithm: Algorithm
    criterion: Criterion
    max_depth: int
    n_estimators: int = 250
    bootstrap: bool = True
    feature_subsampling: bool = True
    seed: int = 0

    def __post_init__(self) -> None:
        # depth 0 is the degenerate single-leaf predictor, still valid
        if self.max_depth < 0:
            raise ValueError("max_depth must be >= 0")
        if self.n_estimators < 1:
            raise ValueError("n_estimators must be >= 1")

    @classmethod
    def forest_defaults(cls, seed: int = 0) -> "Hyperparameters":
        return cls(
            algorithm=Algorithm.RANDOM_FOREST,
            criterion=Criterion.GINI,
            max_depth=83,
            n_estimators=250,
            bootstrap=True,
            feature_subsampling=True,
            seed=seed,
        )

    @classmethod
    def tree_defaults(cls, seed: int = 0) -> "Hyperparameters":
        return cls(
            algorithm=Algorithm.DECISION_TREE,
            criterion=Criterion.ENTROPY,
            max_depth=9,
            n_estimators=1,
            bootstrap=False,
            feature_subsampling=False,
            seed=seed,
        )

    def to_dict(self) -> dict:
        return {
            "algorithm": self.algorithm.value,
            "criterion": self.criterion.value,
            "max_depth": self.max_depth,
            "n_estimators": self.n_estimators,
            "bootstrap": self.bootstrap,
            "feature_subsampling": self.feature_subsampling,
            "seed": self.seed,
        }

    @classmethod
    def from_dict(cls, data: dict) -> "Hyperparameters":
        return cls(
            algorithm=Algorithm(data["algorithm"]),
            criterion=Criterion(data["criterion"]),
            max_depth=int(data["max_depth"]),
            n_estimators=int(data["n_estimators"]),
            bootstrap=bool(data["bootstrap"]),
            feature_subsampling=bool(data["feature_subsampling"]),
            seed=int(data["seed"]),
        )


def impurity(class_counts: Sequence[int], criterion: Criterion) -> float:
    """Gini (1 - sum p^2) or entropy (-sum p log2 p) of a count vector."""
    total = int(sum(class_counts))
    if total <= 0:
        raise ValueError("impurity of an empty node is undefined")
    if criterion is Criterion.GINI:
        return 1.0 - sum((c / total) ** 2 for c in class_counts)
    return -sum(
        (c / total) * math.log2(c / total) for c in class_counts if c
    )


class TreeModel:
    """A trained tree as flat node arrays (preorder, true child first).

    feature[i] == -1 marks a leaf; counts[i] holds the class-count
    distribution at leaves and is empty for internal nodes.
    """

    def __init__(self, n_classes: int):
        self.n_classes = n_classes
        self.feature: list[int] = []
        self.value: list[int] = []
        self.true_child: list[int] = []
        self.false_child: list[int] = []
        self.counts: list[list[int]] = []
        self._arrays: tuple | None = None

    def _add_leaf(self, counts: Sequence[int]) -> int:
        index = len(self.feature)
        self.feature.append(-1)
        self.value.append(-1)
        self.true_child.append(-1)
        self.false_child.append(-1)
        self.counts.append([int(c) for c in counts])
        return index

    def _add_branch(self, feature: int, value: int) -> int:
        index = len(self.feature)
        self.feature.append(int(feature))
        self.value.append(int(value))
        self.true_child.append(-1)
        self.false_child.append(-1)
        self.counts.append([])
        return index

    @property
    def n_nodes(self) -> int:
        return len(self.feature)

    def depth(self) -> int:
        depths = [0] * self.n_nodes
        best = 0
        for i in range(self.n_nodes):
            if self.feature[i] >= 0:
                depths[self.true_child[i]] = depths[i] + 1
                depths[self.false_child[i]] = depths[i] + 1
            else:
                best = max(best, depths[i])
        return best

    def _compiled(self):
        if self._arrays is None:
            feature = np.asarray(self.feature, dtype=np.int64)
            value = np.asarray(self.value, dtype=np.int64)
            true_child = np.asarray(self.true_child, dtype=np.int64)
            false_child = np.asarray(self.false_child, dtype=np.int64)
            leaf_class = np.zeros(self.n_nodes, dtype=np.int64)
            leaf_counts = np.zeros((self.n_nodes, self.n_classes), dtype=np.int64)
            for i, counts in enumerate(self.counts):
                if counts:
                    # argmax with ties going to the lowest class index
                    leaf_class[i] = max(
                        range(self.n_classes), key=lambda c: (counts[c], -c)
                    )
                    leaf_counts[i] = counts
            self._arrays = (
                feature,
                value,
                true_child,
                false_child,
                leaf_class,
                leaf_counts,
            )
        return self._arrays

    def _leaf_nodes(self, X: np.ndarray) -> np.ndarray:
        feature, value, true_child, false_child, _, _ = self._compiled()
        node = np.zeros(X.shape[0], dtype=np.int64)
        active = np.nonzero(feature[node] >= 0)[0]
        while active.size:
            cur = node[active]
            go_true = X[active, feature[cur]] == value[cur]
            node[active] = np.where(go_true, true_child[cur], false_child[cur])
            active = active[feature[node[active]] >= 0]
        return node

    def predict_ids(self, X: np.ndarray) -> np.ndarray:
        leaf_class = self._compiled()[4]
        return leaf_class[self._leaf_nodes(X)]

    def predict_counts(self, X: np.ndarray) -> np.ndarray:
        leaf_counts = self._compiled()[5]
        return leaf_counts[self._leaf_nodes(X)]

    def to_dict(self) -> dict:
        return {
            "n_classes": self.n_classes,
            "feature": self.feature,
            "value": self.value,
            "true_child": self.true_child,
            "false_child": self.false_child,
            "counts": self.counts,
        }

    @classmethod
    def from_dict(cls, data: dict) -> "TreeModel":
        tree = cls(int(data["n_classes"]))
        tree.feature = [int(x) for x in data["feature"]]
        tree.value = [int(x) for x in data["value"]]
        tree.true_child = [int(x) for x in data["true_child"]]
        tree.false_child = [int(x) for x in data["false_child"]]
        tree.counts = [[int(c) for c in row] for row in data["counts"]]
        return tree


def _best_split(
    X: np.ndarray,
    y: np.ndarray,
    rows: np.ndarray,
    counts: np.ndarray,
    candidates: Sequence[int],
    criterion: Criterion,
) -> tuple[float, int, int] | None:
    """Highest-gain (feature, value) equality split over the given rows.

    Candidates are scanned in ascending feature order and values in
    ascending code order; strict improvement keeps the earliest maximum.
    """
    n = len(rows)
    n_classes = counts.shape[0]
    parent = impurity(counts.tolist(), criterion)
    y_rows = y[rows]
    best: tuple[float, int, int] | None = None
    for f in candidates:
        col = X[rows, f]
        values, value_idx = np.unique(col, return_inverse=True)
        if values.size < 2:
            continue
        contingency = np.bincount(
            value_idx * n_classes + y_rows, minlength=values.size * n_classes
        ).reshape(values.size, n_classes)
        totals = contingency.sum(axis=1)
        for j in range(values.size):
            n_true = int(totals[j])
            if n_true == 0 or n_true == n:
                continue
            true_counts = contingency[j].tolist()
            false_counts = (counts - contingency[j]).tolist()
            children = (
                n_true * impurity(true_counts, criterion)
                + (n - n_true) * impurity(false_counts, criterion)
            ) / n
            gain = parent - children
            if gain > 0.0 and (best is None or gain > best[0]):
                best = (gain, int(f), int(values[j]))
    return best


def train_tree(
    X: np.ndarray,
    y: np.ndarray,
    hp: Hyperparameters,
    rng: random.Random | None = None,
    n_classes: int | None = None,
) -> TreeModel:
    """Grow a CART-style tree with equality splits.

    Recursion stops at max_depth, on pure nodes, or when no split has
    positive impurity decrease.  When ``rng`` is given and ``hp`` enables
    feature subsampling, each node considers ceil(sqrt(F)) features drawn
    without replacement.
    """
    X = np.asarray(X, dtype=np.int64)
    y = np.asarray(y, dtype=np.int64)
    if X.ndim != 2 or len(X) != len(y) or len(y) == 0:
        raise ModelError("training data must be a non-empty matrix with labels")
    if n_classes is None:
        n_classes = int(y.max()) + 1
    n_features = X.shape[1]
    subsample = (
        rng is not None and hp.feature_subsampling and n_features > 1
    )
    m = math.ceil(math.sqrt(n_features))
    tree = TreeModel(n_classes)

    def candidates() -> list[int]:
        if subsample and m < n_features:
            return sorted(rng.sample(range(n_features), m))
        return list(range(n_features))

    def grow(rows: np.ndarray, depth: int) -> int:
        counts = np.bincount(y[rows], minlength=n_classes)
        if depth >= hp.max_depth or int((counts > 0).sum()) <= 1:
            return tree._add_leaf(counts)
        best = _best_split(X, y, rows, counts, candidates(), hp.criterion)
        if best is None:
            return tree._add_leaf(counts)
        _, f, v = best
        node = tree._add_branch(f, v)
        mask = X[rows, f] == v
        tree.true_child[node] = grow(rows[mask], depth + 1)
        tree.false_child[node] = grow(rows[~mask], depth + 1)
        return node

    grow(np.arange(len(y)), 0)
    return tree


@dataclass
class ForestModel:
    """Bootstrap-aggregated trees voting by majority."""

    trees: list[TreeModel]
    tree_seeds: list[int]
    bootstrap: bool
    feature_subsample_size: int
    n_classes: int = field(init=False)

    def __post_init__(self) -> None:
        self.n_classes = self.trees[0].n_classes if self.trees else 0

    def vote_counts(self, X: np.ndarray) -> np.ndarray:
        votes = np.zeros((X.shape[0], self.n_classes), dtype=np.int64)
        rows = np.arange(X.shape[0])
        for tree in self.trees:
            votes[rows, tree.predict_ids(X)] += 1
        return votes

    def predict_ids(self, X: np.ndarray) -> np.ndarray:
        # np.argmax keeps the first maximum: ties go to the lowest class id.
        return np.argmax(self.vote_counts(X), axis=1)

    def predict_counts(self, X: np.ndarray) -> np.ndarray:
        return self.vote_counts(X)

    def to_dict(self) -> dict:
        return {
            "tree_seeds": self.tree_seeds,
            "bootstrap": self.bootstrap,
            "feature_subsample_size": self.feature_subsample_size,
            "trees": [t.to_dict() for t in self.trees],
        }

    @classmethod
    def from_dict(cls, data: dict) -> "ForestModel":
        return cls(
            trees=[TreeModel.from_dict(t) for t in data["trees"]],
            tree_seeds=[int(s) for s in data["tree_seeds"]],
            bootstrap=bool(data["bootstrap"]),
            feature_subsample_size=int(data["feature_subsample_size"]),
        )


def train_forest(
    X: np.ndarray,
    y: np.ndarray,
    hp: Hyperparameters,
    n_classes: int | None = None,
) -> ForestModel:
    """Train hp.n_estimators trees on bootstrap resamples.

    Per-tree RNG streams derive from hp.seed, so the forest is reproducible
    regardless of training order.
    """
    X = np.asarray(X, dtype=np.int64)
    y = np.asarray(y, dtype=np.int64)
    if len(X) != len(y) or len(y) == 0:
        raise ModelError("training data must be a non-empty matrix with labels")
    if n_classes is None:
        n_classes = int(y.max()) + 1
    master = random.Random(hp.seed)
    tree_seeds = [master.getrandbits(63) for _ in range(hp.n_estimators)]
    n = len(y)
    trees = []
    for seed in tree_seeds:
        rng = random.Random(seed)
        if hp.bootstrap:
            rows = np.array([rng.randrange(n) for _ in range(n)], dtype=np.int64)
            Xb, yb = X[rows], y[rows]
        else:
            Xb, yb = X, y
        trees.append(train_tree(Xb, yb, hp, rng=rng, n_classes=n_classes))
    m = math.ceil(math.sqrt(X.shape[1])) if hp.feature_subsampling else X.shape[1]
    return ForestModel(
        trees=trees,
        tree_seeds=tree_seeds,
        bootstrap=hp.bootstrap,
        feature_subsample_size=m,
    )


class TaggerModel:
    """A trained ensemble plus everything needed to tag new identifiers:

    hyperparameters, dataset configuration, feature subset, encoding
    dictionaries, and the fixed class order used for tie-breaking.
    """

    def __init__(
        self,
        hp: Hyperparameters,
        config: DatasetConfiguration,
        features: Sequence[str],
        classes: Sequence[str],
        encoder: FeatureEncoder,
        core: TreeModel | ForestModel,
        rare_labels: Sequence[str] = (),
    ):
        self.hp = hp
        self.config = config
        self.features = tuple(features)
        self.classes = list(classes)
        self.encoder = encoder
        self.core = core
        # Tags the augmented training split merged into OTHER; evaluation
        # against this model must relabel gold the same way.
        self.rare_labels = sorted(rare_labels)

    def relabel_gold(self, records: Sequence[IdentifierRecord]):
        """Apply the training split's OTHER-merging to gold tags."""
        from .corpus import relabel_gold
        from .tagset import Tag, relabel_rare

        if not self.rare_labels:
            return list(records)
        rare = frozenset(Tag(label) for label in self.rare_labels)
        return relabel_gold(records, lambda seq: relabel_rare(seq, rare))

    # -- prediction --------------------------------------------------------

    def _check_constituent_coverage(self, record: IdentifierRecord) -> None:
        """MISSING cells are only valid input if training saw MISSING."""
        from .tagset import MISSING

        if record.constituent is None:
            return
        for feature in ("swum", "posse", "stanford"):
            if feature not in self.features:
                continue
            if MISSING in self.encoder.mapping.get(feature, {}):
                continue
            if any(getattr(c, feature) == MISSING for c in record.constituent):
                raise ModelError(
                    f"record {record.id} has MISSING {feature} annotations but "
                    f"the model was trained without them; enable stand-ins or "
                    f"supply the {feature} column"
                )

    def predict_encoded(self, X: np.ndarray) -> list[str]:
        ids = self.core.predict_ids(np.asarray(X, dtype=np.int64))
        return [self.classes[i] for i in ids]

    def predict_vectors(self, vectors: Sequence[dict[str, str]]) -> list[str]:
        if not vectors:
            return []
        return self.predict_encoded(self.encoder.transform(vectors))

    def predict_record(
        self, record: IdentifierRecord, standins: bool = True
    ) -> tuple[list[str], np.ndarray]:
        """Tag one identifier; returns labels and per-word distributions."""
        from .taggers import fill_missing_constituents

        if standins:
            record = fill_missing_constituents(record, self.config.conjugation)
        record = normalize_constituents(record, self.config)
        self._check_constituent_coverage(record)
        try:
            vectors = vectorize(record, self.features)
        except FeatureError as exc:
            raise ModelError(str(exc)) from exc
        X = self.encoder.transform(vectors)
        labels = self.predict_encoded(X)
        counts = self.core.predict_counts(X).astype(float)
        totals = counts.sum(axis=1, keepdims=True)
        totals[totals == 0] = 1.0
        return labels, counts / totals

    def predict_records(
        self, records: Sequence[IdentifierRecord], standins: bool = True
    ) -> dict[str, list[str]]:
        """Tag many identifiers in one batched pass over the ensemble."""
        from .taggers import fill_missing_constituents

        if not records:
            return {}
        prepared = []
        for record in records:
            if standins:
                record = fill_missing_constituents(record, self.config.conjugation)
            record = normalize_constituents(record, self.config)
            self._check_constituent_coverage(record)
            prepared.append(record)
        try:
            vectors = vectorize_all(prepared, self.features)
        except FeatureError as exc:
            raise ModelError(str(exc)) from exc
        labels = self.predict_vectors(vectors)
        out: dict[str, list[str]] = {}
        offset = 0
        for record in prepared:
            out[record.id] = labels[offset : offset + len(record.words)]
            offset += len(record.words)
        return out

    # -- persistence -------------------------------------------------------

    def to_dict(self) -> dict:
        return {
            "format_version": MODEL_FORMAT_VERSION,
            "hyperparameters": self.hp.to_dict(),
            "config": {
                "variant": self.config.variant.value,
                "conjugation": self.config.conjugation.value,
                "augment_threshold": self.config.augment_threshold,
            },
            "features": list(self.features),
            "classes": self.classes,
            "rare_labels": self.rare_labels,
            "encoder": self.encoder.to_dict(),
            "kind": "forest" if isinstance(self.core, ForestModel) else "tree",
            "core": self.core.to_dict(),
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True, separators=(",", ":")) + "\n"

    def save(self, path: str | Path) -> None:
        Path(path).write_text(self.to_json(), encoding="utf-8")

    @classmethod
    def from_dict(cls, data: dict) -> "TaggerModel":
        from .tagset import Conjugation, Variant

        if data.get("format_version") != MODEL_FORMAT_VERSION:
            raise ModelError(
                f"unsupported model format version {data.get('format_version')!r}"
            )
        config = DatasetConfiguration(
            variant=Variant(data["config"]["variant"]),
            conjugation=Conjugation(data["config"]["conjugation"]),
            augment_threshold=int(data["config"]["augment_threshold"]),
        )
        core_cls = ForestModel if data["kind"] == "forest" else TreeModel
        return cls(
            hp=Hyperparameters.from_dict(data["hyperparameters"]),
            config=config,
            features=data["features"],
            classes=[str(c) for c in data["classes"]],
            encoder=FeatureEncoder.from_dict(data["encoder"]),
            core=core_cls.from_dict(data["core"]),
            rare_labels=[str(label) for label in data.get("rare_labels", [])],
        )

    @classmethod
    def load(cls, path: str | Path) -> "TaggerModel":
        try:
            data = json.loads(Path(path).read_text(encoding="utf-8"))
        except json.JSONDecodeError as exc:
            raise ModelError(f"not a model file: {path} ({exc})") from exc
        return cls.from_dict(data)


def train_model(
    records: Sequence[IdentifierRecord],
    hp: Hyperparameters,
    config: DatasetConfiguration,
    subset: Sequence[str] = BEST_FEATURES,
) -> TaggerModel:
    """Full training pipeline over prepared identifier records.

    The given records are the training split: augmentation frequencies and
    encoding dictionaries both come from them alone.
    """
    from .tagset import Variant, rare_tags, relabel_rare
    from .corpus import relabel_gold

    subset = validate_subset(subset)
    prepared = [normalize_constituents(r, config) for r in records]
    rare: frozenset = frozenset()
    if config.variant is Variant.AUGMENTED:
        rare = rare_tags(
            [r.gold for r in prepared if r.gold is not None],
            config.augment_threshold,
        )
        prepared = relabel_gold(prepared, lambda seq: relabel_rare(seq, rare))
    vectors = vectorize_all(prepared, subset)
    labels = gold_labels(prepared)
    classes = sorted(set(labels))
    class_index = {c: i for i, c in enumerate(classes)}
    encoder = FeatureEncoder(subset).fit(vectors)
    X = encoder.transform(vectors)
    y = np.array([class_index[label] for label in labels], dtype=np.int64)
    if hp.algorithm is Algorithm.RANDOM_FOREST:
        core: TreeModel | ForestModel = train_forest(
            X, y, hp, n_classes=len(classes)
        )
    else:
        core = train_tree(X, y, hp, n_classes=len(classes))
    return TaggerModel(
        hp=hp,
        config=config,
        features=subset,
        classes=classes,
        encoder=encoder,
        core=core,
        rare_labels=[tag.value for tag in rare],
    )


@dataclass
class KFoldResult:
    fold_reports: list[EvaluationReport]
    mean_metrics: dict[str, float]
    folds: FoldAssignment

    def fold_values(self, metric: str) -> list[float]:
        return [getattr(report, metric) for report in self.fold_reports]


_SCALARS = (
    "accuracy",
    "balanced_accuracy",
    "weighted_f1",
    "weighted_precision",
    "weighted_recall",
    "identifier_accuracy",
)


def kfold_evaluate(
    records: Sequence[IdentifierRecord],
    k: int,
    hp: Hyperparameters,
    config: DatasetConfiguration,
    subset: Sequence[str] = BEST_FEATURES,
    seed: int = 0,
) -> KFoldResult:
    """Stratified k-fold cross-validation, reporting the five core metrics
    (plus identifier-level accuracy) per fold and their means."""
    if k < 2:
        raise ValueError("k must be >= 2")
    for record in records:
        if record.gold is None:
            raise ModelError(f"record {record.id} has no gold tags")
    folds = assign_folds(records, k, seed)
    reports = []
    for fold in range(k):
        test = [r for r in records if folds.fold_of[r.id] == fold]
        train = [r for r in records if folds.fold_of[r.id] != fold]
        train_prep, test_prep = prepare_split(train, test, config)
        # prepare_split already applied the config; train on identity config.
        neutral = DatasetConfiguration(
            conjugation=config.conjugation,
            augment_threshold=config.augment_threshold,
        )
        model = train_model(train_prep, hp, neutral, subset)
        predictions = model.predict_records(test_prep, standins=False)
        reports.append(evaluate_records(test_prep, predictions))
    mean = {
        name: sum(getattr(r, name) for r in reports) / len(reports)
        for name in _SCALARS
    }
    return KFoldResult(fold_reports=reports, mean_metrics=mean, folds=folds)


_METRIC_TO_FIELD = {
    "accuracy": "accuracy",
    "balanced_accuracy": "balanced_accuracy",
    "f1": "weighted_f1",
    "precision": "weighted_precision",
    "recall": "weighted_recall",
}


@dataclass
class GridSearchResult:
    best: Hyperparameters
    rows: list[tuple[Hyperparameters, list[float], float]]


def grid_search(
    records: Sequence[IdentifierRecord],
    grid: dict[str, Sequence],
    base_hp: Hyperparameters,
    k: int,
    metric: str,
    config: DatasetConfiguration,
    subset: Sequence[str] = BEST_FEATURES,
    seed: int = 0,
) -> GridSearchResult:
    """Exhaustive search over the Cartesian product of the grid values.

    Each combination is scored by k-fold cross-validation on the training
    records; the configuration maximizing the mean metric wins.  Ties break
    toward smaller max_depth, then fewer estimators, then grid order.
    """
    import itertools

    if metric not in _METRIC_TO_FIELD:
        raise ValueError(
            f"unknown metric {metric!r}; choose from {sorted(_METRIC_TO_FIELD)}"
        )
    if not grid or any(len(v) == 0 for v in grid.values()):
        raise ValueError("grid must have at least one candidate per entry")
    unknown = set(grid) - {"criterion", "max_depth", "n_estimators", "bootstrap"}
    if unknown:
        raise ValueError(f"unknown grid entries: {sorted(unknown)}")

    field_name = _METRIC_TO_FIELD[metric]
    keys = list(grid.keys())
    rows: list[tuple[Hyperparameters, list[float], float]] = []
    best: tuple[float, int, int, int] | None = None  # (-score, depth, est, order)
    best_hp = None
    for order, combo in enumerate(itertools.product(*(grid[k] for k in keys))):
        overrides = dict(zip(keys, combo))
        hp = Hyperparameters(
            algorithm=base_hp.algorithm,
            criterion=Criterion(overrides.get("criterion", base_hp.criterion)),
            max_depth=int(overrides.get("max_depth", base_hp.max_depth)),
            n_estimators=int(overrides.get("n_estimators", base_hp.n_estimators)),
            bootstrap=bool(overrides.get("bootstrap", base_hp.bootstrap)),
            feature_subsampling=base_hp.feature_subsampling,
            seed=base_hp.seed,
        )
        result = kfold_evaluate(records, k, hp, config, subset, seed)
        scores = result.fold_values(field_name)
        mean = sum(scores) / len(scores)
        rows.append((hp, scores, mean))
        key = (-mean, hp.max_depth, hp.n_estimators, order)
        if best is None or key < best:
            best = key
            best_hp = hp
    assert best_hp is not None
    return GridSearchResult(best=best_hp, rows=rows)
