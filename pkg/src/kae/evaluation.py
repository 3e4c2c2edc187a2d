"""Scoring against gold alignments and assembling train/test sample sets."""

from __future__ import annotations

from dataclasses import asdict, dataclass
from typing import Iterable, Sequence

import numpy as np

from kae.config import RunConfig
from kae.ingest import AlignmentResult
from kae.matcher import (
    TASK_FEATURES,
    TrainingSample,
    balance_training_set,
    entity_candidates,
    etype_candidates,
    stratified_split,
)
from kae.model import KnowledgeGraph

BETAS = (0.5, 1.0, 2.0)


@dataclass(frozen=True)
class GoldAlignment:
    pairs: tuple[tuple[str, str, str], ...]

    def __init__(self, pairs: Iterable[tuple[str, str, str]]):
        seen: dict[tuple[str, str, str], None] = {}
        for p in pairs:
            p = tuple(p)
            if p in seen:
                raise ValueError(f"duplicate gold pair {p}")
            seen[p] = None
        object.__setattr__(self, "pairs", tuple(seen))

    def of_kind(self, kind: str) -> GoldAlignment:
        return GoldAlignment(p for p in self.pairs if p[2] == kind)

    def as_set(self) -> set[tuple[str, str, str]]:
        return set(self.pairs)

    def check(self, ref_kg: KnowledgeGraph, cand_kg: KnowledgeGraph) -> None:
        for ref, cand, kind in self.pairs:
            cand_ids = cand_kg.etypes if kind == "etype" else cand_kg.entities
            if ref not in ref_kg.etypes or cand not in cand_ids:
                raise ValueError(f"gold pair ({ref}, {cand}, {kind}) does not resolve in the KGs")

    def to_dict(self) -> dict:
        return {"pairs": [{"ref": r, "cand": c, "kind": k} for r, c, k in self.pairs]}


def f_beta(precision: float, recall: float, beta: float) -> float:
    b2 = beta * beta
    denom = b2 * precision + recall
    if denom == 0:
        return 0.0
    return (1 + b2) * precision * recall / denom


@dataclass(frozen=True)
class EvalReport:
    precision: float
    recall: float
    f05: float
    f1: float
    f2: float
    true_pos: int
    false_pos: int
    false_neg: int

    @classmethod
    def from_counts(cls, tp: int, fp: int, fn: int) -> EvalReport:
        precision = tp / (tp + fp) if tp + fp else 1.0
        recall = tp / (tp + fn) if tp + fn else 1.0
        return cls(
            precision, recall,
            f_beta(precision, recall, 0.5), f_beta(precision, recall, 1.0), f_beta(precision, recall, 2.0),
            tp, fp, fn,
        )

    def to_dict(self) -> dict:
        return asdict(self)

    def table(self) -> str:
        rows = [
            ("precision", f"{self.precision:.4f}"),
            ("recall", f"{self.recall:.4f}"),
            ("F0.5", f"{self.f05:.4f}"),
            ("F1", f"{self.f1:.4f}"),
            ("F2", f"{self.f2:.4f}"),
            ("true positives", str(self.true_pos)),
            ("false positives", str(self.false_pos)),
            ("false negatives", str(self.false_neg)),
        ]
        width = max(len(k) for k, _ in rows)
        return "\n".join(f"{k:<{width}}  {v:>8}" for k, v in rows)


def score_pairs(predicted: Iterable[tuple[str, str, str]], gold: Iterable[tuple[str, str, str]]) -> EvalReport:
    pred, truth = set(predicted), set(gold)
    tp = len(pred & truth)
    return EvalReport.from_counts(tp, len(pred) - tp, len(truth) - tp)


def score(predicted: AlignmentResult, gold: GoldAlignment) -> EvalReport:
    """Only pairs marked aligned count as predictions."""
    return score_pairs(((p.ref, p.cand, p.kind) for p in predicted.aligned_pairs()), gold.pairs)


def build_samples(
    ref_kg: KnowledgeGraph,
    cand_kg: KnowledgeGraph,
    gold: GoldAlignment,
    task: str,
    cfg: RunConfig | None = None,
    preselect: bool = False,
    pm=None,
) -> list[TrainingSample]:
    """Labelled feature vectors for every candidate pair (or only the kept ones with ``preselect``)."""
    cfg = cfg or RunConfig()
    rows = (etype_candidates if task == "etype" else entity_candidates)(ref_kg, cand_kg, cfg, pm)
    truth = gold.of_kind(task).as_set()
    names = TASK_FEATURES[task]
    return [
        TrainingSample(row.vector(names), (row.pair.ref, row.pair.cand, task) in truth, row.pair)
        for row in rows
        if row.kept or not preselect
    ]


def build_dataset(
    ref_kg: KnowledgeGraph,
    cand_kg: KnowledgeGraph,
    gold: GoldAlignment,
    task: str,
    seed: int = 42,
    split: float = 0.8,
    cfg: RunConfig | None = None,
    preselect: bool = False,
) -> tuple[list[TrainingSample], list[TrainingSample]]:
    """Stratified seeded split; only the training part is balanced."""
    cfg = cfg or RunConfig()
    samples = build_samples(ref_kg, cand_kg, gold, task, cfg, preselect)
    train, test = stratified_split(samples, split, seed)
    return balance_training_set(train, cfg.ratio, seed), test


def accuracy(model, samples: Sequence[TrainingSample], threshold: float = 0.5) -> float:
    probs = model.predict_proba(np.array([s.features for s in samples]))
    return float(np.mean([(p >= threshold) == s.label for p, s in zip(probs, samples)]))
