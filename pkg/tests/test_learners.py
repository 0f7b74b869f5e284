import json
import math
import random

import numpy as np
import pytest

from idpos.features import BEST_FEATURES
from idpos.learners import (
    Algorithm,
    Criterion,
    Hyperparameters,
    ModelError,
    TaggerModel,
    _best_split,
    grid_search,
    impurity,
    kfold_evaluate,
    train_forest,
    train_model,
    train_tree,
)
from idpos.tagset import DatasetConfiguration, IdentifierContext, Tag

from conftest import make_noisy_corpus

GINI = Criterion.GINI
ENTROPY = Criterion.ENTROPY


# -- impurity ----------------------------------------------------------------


def test_impurity_known_values():
    assert impurity([10, 0], GINI) == 0.0
    assert impurity([5, 5], GINI) == 0.5
    assert impurity([5, 5], ENTROPY) == 1.0


def test_impurity_pure_and_uniform():
    for n in (1, 7, 100):
        assert impurity([n, 0, 0], GINI) == 0.0
        assert impurity([n, 0, 0], ENTROPY) == 0.0
    for c in (2, 4, 8):
        assert impurity([3] * c, ENTROPY) == pytest.approx(math.log2(c), abs=1e-12)


def test_impurity_empty_is_error():
    with pytest.raises(ValueError):
        impurity([0, 0], GINI)


# -- tree training -----------------------------------------------------------


def _hp_tree(depth=9, criterion=ENTROPY, seed=0):
    return Hyperparameters(
        algorithm=Algorithm.DECISION_TREE,
        criterion=criterion,
        max_depth=depth,
        n_estimators=1,
        bootstrap=False,
        feature_subsampling=False,
        seed=seed,
    )


def test_perfectly_separable_feature_gives_depth_one():
    X = np.array([[1, 1], [1, 2], [2, 1], [2, 2]])
    y = np.array([0, 0, 1, 1])
    tree = train_tree(X, y, _hp_tree())
    assert tree.depth() == 1
    assert (tree.predict_ids(X) == y).all()


def test_max_depth_zero_is_majority_leaf():
    X = np.array([[1], [2], [3]])
    y = np.array([0, 1, 1])
    tree = train_tree(X, y, _hp_tree(depth=0))
    assert tree.n_nodes == 1
    assert (tree.predict_ids(X) == 1).all()


def test_empty_training_data_is_error():
    with pytest.raises(ModelError):
        train_tree(np.zeros((0, 2), dtype=int), np.zeros(0, dtype=int), _hp_tree())


def _random_dataset(rng, max_rows=200, max_features=5):
    n = rng.randint(2, max_rows)
    f = rng.randint(1, max_features)
    n_classes = rng.randint(2, 5)
    X = np.array(
        [[rng.randint(0, 7) for _ in range(f)] for _ in range(n)], dtype=np.int64
    )
    y = np.array([rng.randint(0, n_classes - 1) for _ in range(n)], dtype=np.int64)
    return X, y, n_classes


def _impurity_ref(counts, criterion):
    # independent reference implementation (plain python)
    total = sum(counts)
    if criterion is GINI:
        return 1.0 - sum((c / total) ** 2 for c in counts)
    return -sum((c / total) * math.log2(c / total) for c in counts if c)


def _exhaustive_best_gain(X, y, n_classes, criterion):
    n = len(y)
    counts = [0] * n_classes
    for label in y:
        counts[label] += 1
    parent = _impurity_ref(counts, criterion)
    best = None
    for f in range(X.shape[1]):
        for v in sorted(set(X[:, f].tolist())):
            left = [0] * n_classes
            n_left = 0
            for i in range(n):
                if X[i, f] == v:
                    left[y[i]] += 1
                    n_left += 1
            if n_left == 0 or n_left == n:
                continue
            right = [c - l for c, l in zip(counts, left)]
            gain = parent - (
                n_left * _impurity_ref(left, criterion)
                + (n - n_left) * _impurity_ref(right, criterion)
            ) / n
            if gain > 0.0 and (best is None or gain > best):
                best = gain
    return best


def test_root_split_matches_exhaustive_oracle():
    rng = random.Random(2024)
    for trial in range(60):
        X, y, n_classes = _random_dataset(rng)
        criterion = GINI if trial % 2 else ENTROPY
        counts = np.bincount(y, minlength=n_classes)
        found = _best_split(
            X, y, np.arange(len(y)), counts, range(X.shape[1]), criterion
        )
        expected = _exhaustive_best_gain(X, y, n_classes, criterion)
        if expected is None:
            assert found is None
        else:
            assert found is not None
            assert found[0] == expected  # exact float equality


def test_forest_of_one_reduces_to_tree():
    rng = random.Random(7)
    for trial in range(25):
        X, y, n_classes = _random_dataset(rng, max_rows=80)
        hp = Hyperparameters(
            algorithm=Algorithm.RANDOM_FOREST,
            criterion=GINI if trial % 2 else ENTROPY,
            max_depth=6,
            n_estimators=1,
            bootstrap=False,
            feature_subsampling=False,
            seed=trial,
        )
        forest = train_forest(X, y, hp, n_classes=n_classes)
        tree = train_tree(X, y, hp, n_classes=n_classes)
        assert (forest.predict_ids(X) == tree.predict_ids(X)).all()


def test_training_accuracy_monotone_in_depth():
    rng = random.Random(5)
    X, y, n_classes = _random_dataset(rng, max_rows=150)
    last = -1.0
    for depth in range(0, 9):
        tree = train_tree(X, y, _hp_tree(depth=depth), n_classes=n_classes)
        accuracy = float((tree.predict_ids(X) == y).mean())
        assert accuracy >= last
        last = accuracy


def test_tree_depth_respects_max_depth():
    rng = random.Random(11)
    for _ in range(10):
        X, y, n_classes = _random_dataset(rng, max_rows=120)
        tree = train_tree(X, y, _hp_tree(depth=3), n_classes=n_classes)
        assert tree.depth() <= 3


def test_unknown_codes_take_false_branch():
    # feature value 9 never seen in training: rows must flow to the
    # false branch of every equality test, never crash
    X = np.array([[1], [1], [2], [2]])
    y = np.array([0, 0, 1, 1])
    tree = train_tree(X, y, _hp_tree())
    unseen = tree.predict_ids(np.array([[9]]))
    false_side = tree.predict_ids(np.array([[2 if tree.value[0] == 1 else 1]]))
    assert unseen[0] == false_side[0]


# -- model pipeline ----------------------------------------------------------


def test_model_roundtrips_bit_exactly(tmp_path, noisy_corpus):
    hp = Hyperparameters.forest_defaults(seed=13)
    hp = Hyperparameters(**{**hp.to_dict(), "algorithm": Algorithm.RANDOM_FOREST,
                            "criterion": Criterion.GINI, "n_estimators": 10,
                            "max_depth": 12})
    model = train_model(noisy_corpus, hp, DatasetConfiguration())
    path = tmp_path / "model.json"
    model.save(path)
    loaded = TaggerModel.load(path)
    path2 = tmp_path / "model2.json"
    loaded.save(path2)
    assert path.read_bytes() == path2.read_bytes()
    predictions = model.predict_records(noisy_corpus, standins=False)
    assert loaded.predict_records(noisy_corpus, standins=False) == predictions


def test_same_seed_same_model(noisy_corpus):
    hp = Hyperparameters(
        algorithm=Algorithm.RANDOM_FOREST, criterion=GINI, max_depth=10,
        n_estimators=8, bootstrap=True, feature_subsampling=True, seed=99,
    )
    a = train_model(noisy_corpus, hp, DatasetConfiguration())
    b = train_model(noisy_corpus, hp, DatasetConfiguration())
    assert a.to_json() == b.to_json()


def test_predict_record_shape_and_distributions(noisy_corpus):
    hp = _hp_tree(seed=3)
    model = train_model(noisy_corpus, hp, DatasetConfiguration())
    record = noisy_corpus[0]
    labels, dists = model.predict_record(record, standins=False)
    assert len(labels) == len(record.words)
    assert dists.shape == (len(record.words), len(model.classes))
    assert np.allclose(dists.sum(axis=1), 1.0)


def test_predict_requires_constituents_when_standins_off(noisy_corpus):
    from idpos.corpus import IdentifierRecord

    hp = _hp_tree(seed=3)
    model = train_model(noisy_corpus, hp, DatasetConfiguration())
    bare = IdentifierRecord(
        id="q", system="s", context=IdentifierContext.FUNCTION, type_hint="int",
        raw_name="getToken", words=["get", "token"],
    )
    with pytest.raises(ModelError):
        model.predict_record(bare, standins=False)
    labels, _ = model.predict_record(bare, standins=True)
    assert len(labels) == 2


def test_unseen_word_categorical_still_predicts(noisy_corpus):
    subset = ("word", "swum", "posse", "stanford", "normalized_position", "context")
    model = train_model(noisy_corpus, _hp_tree(seed=4), DatasetConfiguration(), subset)
    from dataclasses import replace

    record = replace(noisy_corpus[0], words=["zzzunseen"] * len(noisy_corpus[0].words))
    labels, _ = model.predict_record(record, standins=False)
    assert len(labels) == len(record.words)


def test_augmented_model_stores_and_applies_rare_labels():
    from idpos.tagset import Variant

    records = make_noisy_corpus(200, seed=3)
    config = DatasetConfiguration(variant=Variant.AUGMENTED, augment_threshold=25)
    model = train_model(records, _hp_tree(seed=1), config)
    assert model.rare_labels, "fixture should have rare tags"
    assert Tag.OTHER.value in model.classes
    relabeled = model.relabel_gold(records)
    tags = {t for r in relabeled for t in r.gold}
    assert Tag.OTHER in tags
    assert not {Tag(v) for v in model.rare_labels} & tags
    # plain models leave gold untouched
    plain = train_model(records, _hp_tree(seed=1), DatasetConfiguration())
    assert plain.rare_labels == []
    assert [r.gold for r in plain.relabel_gold(records)] == [r.gold for r in records]


def test_model_rejects_unknown_format_version(tmp_path, noisy_corpus):
    model = train_model(noisy_corpus[:30], _hp_tree(), DatasetConfiguration())
    data = model.to_dict()
    data["format_version"] = 999
    path = tmp_path / "bad.json"
    path.write_text(json.dumps(data), encoding="utf-8")
    with pytest.raises(ModelError):
        TaggerModel.load(path)


# -- k-fold and grid search --------------------------------------------------


def test_kfold_perfect_on_leak_corpus():
    # gold copied verbatim into a constituent feature: every metric is 1.0
    records = make_noisy_corpus(60, seed=17, p=0.0)
    result = kfold_evaluate(
        records, 3, _hp_tree(seed=1), DatasetConfiguration(), BEST_FEATURES, seed=2
    )
    for report in result.fold_reports:
        assert report.accuracy == 1.0
        assert report.balanced_accuracy == 1.0
        assert report.weighted_f1 == 1.0
        assert report.weighted_precision == 1.0
        assert report.weighted_recall == 1.0
        assert report.identifier_accuracy == 1.0


def test_kfold_fold_sizes_1335():
    records = make_noisy_corpus(1335, seed=23)
    result = kfold_evaluate(
        records, 5, _hp_tree(seed=1), DatasetConfiguration(), BEST_FEATURES, seed=3
    )
    sizes = [sum(1 for f in result.folds.fold_of.values() if f == i) for i in range(5)]
    assert sizes == [267] * 5
    assert len(result.fold_reports) == 5


def test_kfold_k_must_be_at_least_two(noisy_corpus):
    with pytest.raises(ValueError):
        kfold_evaluate(noisy_corpus, 1, _hp_tree(), DatasetConfiguration())


def test_kfold_missing_gold_is_error(noisy_corpus):
    from dataclasses import replace

    records = [replace(noisy_corpus[0], gold=None)] + noisy_corpus[1:]
    with pytest.raises(ModelError):
        kfold_evaluate(records, 2, _hp_tree(), DatasetConfiguration())


def test_grid_search_product_size_and_oracle(noisy_corpus):
    records = noisy_corpus[:120]
    grid = {"max_depth": [2, 4, 6], "criterion": [GINI, ENTROPY]}
    base = _hp_tree(seed=5)
    result = grid_search(
        records, grid, base, 2, "accuracy", DatasetConfiguration(), seed=7
    )
    assert len(result.rows) == 6

    # independent re-evaluation: recompute each mean and apply the tie rules
    best = None
    best_key = None
    for order, (hp, scores, mean) in enumerate(result.rows):
        recomputed = kfold_evaluate(
            records, 2, hp, DatasetConfiguration(), BEST_FEATURES, seed=7
        )
        expected_mean = sum(recomputed.fold_values("accuracy")) / 2
        assert mean == pytest.approx(expected_mean, abs=1e-12)
        key = (-expected_mean, hp.max_depth, hp.n_estimators, order)
        if best_key is None or key < best_key:
            best_key, best = key, hp
    assert result.best == best


def test_grid_search_errors(noisy_corpus):
    with pytest.raises(ValueError):
        grid_search(noisy_corpus, {}, _hp_tree(), 2, "accuracy", DatasetConfiguration())
    with pytest.raises(ValueError):
        grid_search(
            noisy_corpus, {"max_depth": [3]}, _hp_tree(), 2, "nope",
            DatasetConfiguration(),
        )
    with pytest.raises(ValueError):
        grid_search(
            noisy_corpus, {"wing_span": [3]}, _hp_tree(), 2, "accuracy",
            DatasetConfiguration(),
        )


def test_hyperparameter_defaults_match_tuned_values():
    forest = Hyperparameters.forest_defaults()
    assert forest.criterion is GINI
    assert forest.max_depth == 83
    assert forest.n_estimators == 250
    assert forest.bootstrap is True
    tree = Hyperparameters.tree_defaults()
    assert tree.criterion is ENTROPY
    assert tree.max_depth == 9


def test_hyperparameter_validation():
    with pytest.raises(ValueError):
        Hyperparameters(Algorithm.DECISION_TREE, GINI, max_depth=-1)
    with pytest.raises(ValueError):
        Hyperparameters(Algorithm.RANDOM_FOREST, GINI, max_depth=5, n_estimators=0)


def test_single_class_training_data():
    X = np.array([[1], [2], [3]])
    y = np.array([0, 0, 0])
    tree = train_tree(X, y, _hp_tree())
    assert tree.n_nodes == 1
    assert (tree.predict_ids(X) == 0).all()


def test_grid_search_tie_prefers_smaller_depth():
    # leak corpus: several depths reach identical scores, shallowest wins
    records = make_noisy_corpus(60, seed=2, p=0.0)
    grid = {"max_depth": [8, 4, 6]}
    result = grid_search(
        records, grid, _hp_tree(seed=1), 2, "accuracy", DatasetConfiguration(),
        seed=3,
    )
    means = [mean for _, _, mean in result.rows]
    assert means[0] == means[1] == means[2] == 1.0
    assert result.best.max_depth == 4


def test_grid_search_over_forest_dimensions(noisy_corpus):
    records = noisy_corpus[:80]
    base = Hyperparameters.forest_defaults(seed=2)
    grid = {"n_estimators": [2, 4], "bootstrap": [True, False], "max_depth": [4]}
    result = grid_search(
        records, grid, base, 2, "f1", DatasetConfiguration(), seed=3
    )
    assert len(result.rows) == 4
    assert result.best.n_estimators in (2, 4)
    assert result.best.max_depth == 4
