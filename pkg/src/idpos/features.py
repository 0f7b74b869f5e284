"""Categorical feature vectors for the ensemble learners.

Each identifier word becomes one vector.  All features are categorical;
ordinal integer codes exist only so trees can test equality, so the code
order carries no meaning.  Unseen values encode to a reserved UNKNOWN index
at prediction time.
"""

from __future__ import annotations

from dataclasses import replace
from typing import Iterable, Sequence

import numpy as np

from .corpus import IdentifierRecord
from .taggers import ConstituentTags
from .tagset import (
    DatasetConfiguration,
    Variant,
    normalize_stanford_label,
    rare_tags,
    relabel_rare,
)

FEATURE_NAMES = (
    "word",
    "type",
    "swum",
    "posse",
    "stanford",
    "position",
    "size",
    "normalized_position",
    "context",
)

# The subset found to maximize evaluation metrics.
BEST_FEATURES = ("swum", "posse", "stanford", "normalized_position", "context")

_CONSTITUENT_FEATURES = ("swum", "posse", "stanford")


class FeatureError(ValueError):
    pass


def normalized_position(index: int, length: int) -> int:
    """Collapse a 1-based word position to beginning (1), middle (2), end (3).

    Single-word identifiers count as beginning.
    """
    if not 1 <= index <= length:
        raise ValueError(f"index {index} out of range for length {length}")
    if index == 1:
        return 1
    if index == length:
        return 3
    return 2


def canonical_type(type_hint: str) -> str:
    """Strip whitespace and pointer sigils so 'GList *' == 'GList*'."""
    return "".join(type_hint.split()).replace("*", "").replace("&", "").lower()


def validate_subset(subset: Sequence[str]) -> tuple[str, ...]:
    subset = tuple(subset)
    if not subset:
        raise FeatureError("feature subset must not be empty")
    unknown = [name for name in subset if name not in FEATURE_NAMES]
    if unknown:
        raise FeatureError(f"unknown feature name(s): {', '.join(unknown)}")
    return subset


def vectorize(
    record: IdentifierRecord, subset: Sequence[str]
) -> list[dict[str, str]]:
    """One feature dict per word, restricted to the requested subset."""
    subset = validate_subset(subset)
    needs_constituent = [f for f in subset if f in _CONSTITUENT_FEATURES]
    if needs_constituent and record.constituent is None:
        raise FeatureError(
            f"record {record.id} lacks constituent tags required by "
            f"feature '{needs_constituent[0]}'"
        )
    length = len(record.words)
    vectors = []
    for i, word in enumerate(record.words, start=1):
        tags = record.constituent[i - 1] if record.constituent else ConstituentTags()
        full = {
            "word": word.lower(),
            "type": canonical_type(record.type_hint),
            "swum": tags.swum,
            "posse": tags.posse,
            "stanford": tags.stanford,
            "position": str(i),
            "size": str(length),
            "normalized_position": str(normalized_position(i, length)),
            "context": record.context.value,
        }
        vectors.append({name: full[name] for name in subset})
    return vectors


def vectorize_all(
    records: Iterable[IdentifierRecord], subset: Sequence[str]
) -> list[dict[str, str]]:
    out: list[dict[str, str]] = []
    for record in records:
        out.extend(vectorize(record, subset))
    return out


def gold_labels(records: Iterable[IdentifierRecord]) -> list[str]:
    labels: list[str] = []
    for record in records:
        if record.gold is None:
            raise FeatureError(f"record {record.id} has no gold tags")
        labels.extend(tag.value for tag in record.gold)
    return labels


def normalize_constituents(record: IdentifierRecord, config) -> IdentifierRecord:
    if record.constituent is None:
        return record
    normalized = [
        ConstituentTags(
            swum=c.swum,
            posse=c.posse,
            stanford=normalize_stanford_label(c.stanford, config.conjugation),
        )
        for c in record.constituent
    ]
    return replace(record, constituent=normalized)


def prepare_split(
    train: Sequence[IdentifierRecord],
    test: Sequence[IdentifierRecord],
    config: DatasetConfiguration,
) -> tuple[list[IdentifierRecord], list[IdentifierRecord]]:
    """Apply a dataset configuration to a train/test pair.

    Conjugation handling rewrites the stanford feature column; augmentation
    relabels gold tags using frequencies from the training side only.
    """
    train = [normalize_constituents(r, config) for r in train]
    test = [normalize_constituents(r, config) for r in test]
    if config.variant is Variant.AUGMENTED:
        train_gold = [r.gold for r in train if r.gold is not None]
        rare = rare_tags(train_gold, config.augment_threshold)

        def relabel(records):
            return [
                replace(r, gold=relabel_rare(r.gold, rare))
                if r.gold is not None
                else r
                for r in records
            ]

        train, test = relabel(train), relabel(test)
    return train, test


UNKNOWN_INDEX = 0


class FeatureEncoder:
    """Per-feature value -> integer codes, with 0 reserved for UNKNOWN."""

    def __init__(self, features: Sequence[str]):
        self.features = tuple(features)
        self.mapping: dict[str, dict[str, int]] = {f: {} for f in self.features}

    def fit(self, vectors: Sequence[dict[str, str]]) -> "FeatureEncoder":
        for feature in self.features:
            values = sorted({vec[feature] for vec in vectors})
            self.mapping[feature] = {
                value: i for i, value in enumerate(values, start=1)
            }
        return self

    def transform(self, vectors: Sequence[dict[str, str]]) -> np.ndarray:
        out = np.zeros((len(vectors), len(self.features)), dtype=np.int64)
        for j, feature in enumerate(self.features):
            table = self.mapping[feature]
            for i, vec in enumerate(vectors):
                out[i, j] = table.get(vec[feature], UNKNOWN_INDEX)
        return out

    def fit_transform(self, vectors: Sequence[dict[str, str]]) -> np.ndarray:
        return self.fit(vectors).transform(vectors)

    def to_dict(self) -> dict:
        return {
            "features": list(self.features),
            "mapping": {f: dict(self.mapping[f]) for f in self.features},
        }

    @classmethod
    def from_dict(cls, data: dict) -> "FeatureEncoder":
        encoder = cls(data["features"])
        encoder.mapping = {
            f: {str(k): int(v) for k, v in data["mapping"][f].items()}
            for f in encoder.features
        }
        return encoder
