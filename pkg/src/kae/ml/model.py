"""Classifier container, training entry point and the KAEM binary model format.

Layout (little-endian)::

    b"KAEM" | version u16 | kind u8 | feature count u16 | payload | training seed u64

gbdt payload: base score f64, learning rate f64, tree count u32, then per tree
a node count u32 and the feature i32[], threshold f64[], left i32[],
right i32[], value f64[] arrays. mlp payload: hidden width u32, W1 f64[f*h]
(row-major), b1 f64[h], W2 f64[h], b2 f64.
"""

from __future__ import annotations

import struct
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any

import numpy as np

from kae.errors import DimensionError, ModelFormatError, TrainingDataError
from kae.ml.gbdt import GradientBoostedTrees, Tree
from kae.ml.mlp import MLP

MAGIC = b"KAEM"
VERSION = 1
KIND_TAGS = {"gbdt": 0, "mlp": 1}
MODEL_KINDS = tuple(KIND_TAGS)

GBDT_DEFAULTS = {"n_trees": 100, "max_depth": 3, "learning_rate": 0.1}
MLP_DEFAULTS = {"hidden": 16, "learning_rate": 0.05, "epochs": 500}


@dataclass
class ClassifierModel:
    kind: str
    feature_count: int
    training_seed: int
    estimator: Any = field(repr=False)

    def predict_proba(self, X) -> np.ndarray:
        X = np.atleast_2d(np.asarray(X, dtype=np.float64))
        if X.shape[1] != self.feature_count:
            raise DimensionError(
                f"model expects {self.feature_count} features, got {X.shape[1]}"
            )
        return np.clip(self.estimator.predict_proba(X), 0.0, 1.0)

    def to_bytes(self) -> bytes:
        out = [MAGIC, struct.pack("<HBH", VERSION, KIND_TAGS[self.kind], self.feature_count)]
        est = self.estimator
        if self.kind == "gbdt":
            out.append(struct.pack("<ddI", est.base_score, est.learning_rate, len(est.trees)))
            for t in est.trees:
                out.append(struct.pack("<I", len(t.feature)))
                out.append(t.feature.astype("<i4").tobytes())
                out.append(t.threshold.astype("<f8").tobytes())
                out.append(t.left.astype("<i4").tobytes())
                out.append(t.right.astype("<i4").tobytes())
                out.append(t.value.astype("<f8").tobytes())
        else:
            out.append(struct.pack("<I", est.hidden))
            out.append(np.ascontiguousarray(est.W1).astype("<f8").tobytes())
            out.append(est.b1.astype("<f8").tobytes())
            out.append(est.W2.astype("<f8").tobytes())
            out.append(struct.pack("<d", est.b2))
        out.append(struct.pack("<Q", self.training_seed))
        return b"".join(out)

    @classmethod
    def from_bytes(cls, blob: bytes) -> ClassifierModel:
        reader = _Reader(blob)
        if reader.take(4) != MAGIC:
            raise ModelFormatError("not a KAEM model file (bad magic)")
        version, tag, nfeat = reader.unpack("<HBH")
        if version != VERSION:
            raise ModelFormatError(f"unsupported KAEM version {version}")
        kinds = {v: k for k, v in KIND_TAGS.items()}
        if tag not in kinds:
            raise ModelFormatError(f"unknown model kind tag {tag}")
        kind = kinds[tag]
        if kind == "gbdt":
            base, lr, ntrees = reader.unpack("<ddI")
            est = GradientBoostedTrees(n_trees=ntrees, learning_rate=lr, base_score=base)
            for _ in range(ntrees):
                (n,) = reader.unpack("<I")
                est.trees.append(
                    Tree(
                        reader.array("<i4", n), reader.array("<f8", n), reader.array("<i4", n),
                        reader.array("<i4", n), reader.array("<f8", n),
                    )
                )
        else:
            (hidden,) = reader.unpack("<I")
            est = MLP(hidden=hidden)
            est.W1 = reader.array("<f8", nfeat * hidden).reshape(nfeat, hidden)
            est.b1 = reader.array("<f8", hidden)
            est.W2 = reader.array("<f8", hidden)
            (est.b2,) = reader.unpack("<d")
        (seed,) = reader.unpack("<Q")
        if reader.pos != len(blob):
            raise ModelFormatError("trailing bytes after KAEM model payload")
        return cls(kind, nfeat, seed, est)

    def save(self, path: str | Path) -> None:
        Path(path).write_bytes(self.to_bytes())

    @classmethod
    def load(cls, path: str | Path) -> ClassifierModel:
        return cls.from_bytes(Path(path).read_bytes())


class _Reader:
    def __init__(self, blob: bytes):
        self.blob, self.pos = blob, 0

    def take(self, n: int) -> bytes:
        if self.pos + n > len(self.blob):
            raise ModelFormatError("truncated KAEM model file")
        chunk = self.blob[self.pos : self.pos + n]
        self.pos += n
        return chunk

    def unpack(self, fmt: str):
        return struct.unpack(fmt, self.take(struct.calcsize(fmt)))

    def array(self, dtype: str, n: int) -> np.ndarray:
        dt = np.dtype(dtype)
        return np.frombuffer(self.take(dt.itemsize * n), dtype=dt).astype(dt.newbyteorder("="))


def train_classifier(X, y, kind: str = "gbdt", hyper: dict | None = None, seed: int = 42) -> ClassifierModel:
    """Fit a binary classifier; identical (samples, hyper, seed) give identical bytes."""
    X = np.atleast_2d(np.asarray(X, dtype=np.float64))
    y = np.asarray(y, dtype=np.float64)
    if len(X) == 0:
        raise TrainingDataError("no training samples")
    if len(X) != len(y):
        raise DimensionError(f"{len(X)} feature rows but {len(y)} labels")
    if len(np.unique(y)) < 2:
        raise TrainingDataError(
            "training samples contain a single class; check that the gold alignment "
            "matches the candidate pairs (positives and negatives are both required)"
        )
    if kind == "gbdt":
        est = GradientBoostedTrees(**{**GBDT_DEFAULTS, **(hyper or {})}).fit(X, y)
    elif kind == "mlp":
        est = MLP(**{**MLP_DEFAULTS, **(hyper or {})}, seed=seed).fit(X, y)
    else:
        raise ValueError(f"unknown model kind {kind!r}; expected one of {MODEL_KINDS}")
    return ClassifierModel(kind, X.shape[1], seed, est)


def predict_pair(model: ClassifierModel, features) -> float:
    return float(model.predict_proba(np.asarray(features, dtype=np.float64).reshape(1, -1))[0])
