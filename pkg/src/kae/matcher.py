"""Etype alignment and etype recognition as pairwise binary classification."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from kae.config import RunConfig
from kae.errors import DimensionError, TrainingDataError
from kae.ingest import AlignedPair, AlignmentResult
from kae.lexical import EmbeddingStore, LexicalResources, label_features, ngram_sim, w2v_sim
from kae.ml.model import ClassifierModel
from kae.model import KnowledgeGraph
from kae.property_matcher import PropertyMatch, greedy_one_to_one, match_properties
from kae.similarity import CandidatePair, aligned_pairs, similarity_matrix

ETYPE_FEATURES = ("simH", "simV", "simI", "ngram", "lcs", "lev", "wup", "w2v")
ENTITY_FEATURES = ("simH", "simV", "simI")
TASK_FEATURES = {"etype": ETYPE_FEATURES, "entity": ENTITY_FEATURES}


@dataclass(frozen=True)
class PreselectionConfig:
    th: float = 0.3
    enabled: bool = True
    direction: str = "below"

    def __post_init__(self):
        if not (0.0 <= self.th <= 2.0):
            raise ValueError(f"pre-selection threshold out of range: {self.th}")

    @classmethod
    def from_run(cls, cfg: RunConfig) -> PreselectionConfig:
        return cls(cfg.preselect_th, cfg.preselect_enabled, cfg.preselect_direction)


@dataclass(frozen=True)
class TrainingSample:
    features: tuple[float, ...]
    label: bool
    pair: CandidatePair | None = None


@dataclass(frozen=True)
class ScoredCandidate:
    pair: CandidatePair
    features: dict[str, float]
    kept: bool

    def vector(self, names: Sequence[str]) -> tuple[float, ...]:
        return tuple(self.features[n] for n in names)


def preselection_factor(ref_label: str, cand_label: str, store: EmbeddingStore, res: LexicalResources | None = None) -> float:
    res = res or LexicalResources.load()
    a, b = res.normalize(ref_label), res.normalize(cand_label)
    return ngram_sim(a, b) + w2v_sim(a, b, store)


def _keep(ps: float, cfg: PreselectionConfig) -> bool:
    if not cfg.enabled:
        return True
    if cfg.direction == "above":
        return not ps > cfg.th
    return not ps < cfg.th


def preselect_etype_pair(ref_label: str, cand_label: str, store: EmbeddingStore, cfg: PreselectionConfig) -> str:
    if not cfg.enabled:
        return "keep"
    return "keep" if _keep(preselection_factor(ref_label, cand_label, store), cfg) else "prune"


def preselect_entity_pair(
    ref_kg: KnowledgeGraph, ref_etype: str, cand_kg: KnowledgeGraph, cand_entity: str, pm: Sequence[PropertyMatch]
) -> str:
    k = len(aligned_pairs(ref_kg.prop_set(ref_etype), cand_kg.prop_set(cand_entity, "entity"), pm))
    return "keep" if k > 0 else "prune"


def balance_training_set(samples: Sequence[TrainingSample], ratio: int = 10, seed: int = 42) -> list[TrainingSample]:
    """Duplicate positives until #pos >= #neg / ratio, then shuffle."""
    pos = [s for s in samples if s.label]
    neg = [s for s in samples if not s.label]
    if not pos or not neg:
        raise TrainingDataError(
            f"balancing needs positive and negative samples, got {len(pos)} positive / {len(neg)} negative"
        )
    rng = np.random.default_rng(seed)
    target = math.ceil(len(neg) / ratio)
    if len(pos) < target:
        copies, remainder = divmod(target, len(pos))
        extra = sorted(rng.choice(len(pos), size=remainder, replace=False)) if remainder else []
        pos = pos * copies + [pos[i] for i in extra]
    out = pos + neg
    order = rng.permutation(len(out))
    return [out[i] for i in order]


def stratified_split(samples: Sequence[TrainingSample], split: float = 0.8, seed: int = 42):
    """Seeded per-label shuffle; the first ``round(n * split)`` of each label go to training."""
    if not (0.0 < split < 1.0):
        raise ValueError(f"split must lie in (0, 1), got {split}")
    rng = np.random.default_rng(seed)
    train, test = [], []
    for label in (True, False):
        group = [s for s in samples if s.label == label]
        order = rng.permutation(len(group))
        cut = round(len(group) * split)
        train += [group[i] for i in order[:cut]]
        test += [group[i] for i in order[cut:]]
    return train, test


# --- candidate generation ----------------------------------------------------------


def _pm(ref_kg, cand_kg, cfg: RunConfig, pm):
    if pm is None:
        pm = match_properties(ref_kg, cand_kg, cfg.prop_th, cfg.resources, jobs=cfg.jobs)
    return pm


def etype_candidates(
    ref_kg: KnowledgeGraph, cand_kg: KnowledgeGraph, cfg: RunConfig, pm=None
) -> list[ScoredCandidate]:
    """Every ref x cand etype pair with its 8 features and pre-selection verdict."""
    pm = _pm(ref_kg, cand_kg, cfg, pm)
    pre = PreselectionConfig.from_run(cfg)
    res = cfg.resources
    out = []
    for pair, vec in similarity_matrix(ref_kg, cand_kg, pm, cfg.lam, "etype", jobs=cfg.jobs):
        lex = label_features(ref_kg.etypes[pair.ref].label, cand_kg.etypes[pair.cand].label, res)
        kept = _keep(lex["ngram"] + lex["w2v"], pre)
        out.append(ScoredCandidate(pair, {**vec.as_features(), **lex}, kept))
    return out


def entity_candidates(
    ref_kg: KnowledgeGraph, cand_kg: KnowledgeGraph, cfg: RunConfig, pm=None
) -> list[ScoredCandidate]:
    """Every ref etype x cand entity pair; pairs without an aligned property are pruned."""
    pm = _pm(ref_kg, cand_kg, cfg, pm)
    return [
        ScoredCandidate(pair, vec.as_features(), vec.k > 0 or not cfg.preselect_enabled)
        for pair, vec in similarity_matrix(ref_kg, cand_kg, pm, cfg.lam, "entity", jobs=cfg.jobs)
    ]


def _check_model(model: ClassifierModel, task: str) -> None:
    want = len(TASK_FEATURES[task])
    if model.feature_count != want:
        raise DimensionError(
            f"{task} task needs a {want}-feature model, got {model.feature_count} features"
        )


def _predict(model: ClassifierModel, rows: list[ScoredCandidate], names) -> list[float]:
    if not rows:
        return []
    X = np.array([r.vector(names) for r in rows], dtype=np.float64)
    return [float(p) for p in model.predict_proba(X)]


def align_etypes(
    ref_kg: KnowledgeGraph, cand_kg: KnowledgeGraph, model: ClassifierModel, cfg: RunConfig | None = None, pm=None
) -> AlignmentResult:
    cfg = cfg or RunConfig()
    _check_model(model, "etype")
    kept = [c for c in etype_candidates(ref_kg, cand_kg, cfg, pm) if c.kept]
    probs = _predict(model, kept, ETYPE_FEATURES)
    chosen = {
        (r, c)
        for r, c, _ in greedy_one_to_one(
            (row.pair.ref, row.pair.cand, p) for row, p in zip(kept, probs) if p >= cfg.decision_th
        )
    }
    pairs = [
        AlignedPair(row.pair.ref, row.pair.cand, "etype", p, (row.pair.ref, row.pair.cand) in chosen, dict(row.features))
        for row, p in zip(kept, probs)
    ]
    return AlignmentResult(ref_kg.name, cand_kg.name, pairs)


def recognize_etypes(
    ref_kg: KnowledgeGraph, cand_kg: KnowledgeGraph, model: ClassifierModel, cfg: RunConfig | None = None, pm=None
) -> AlignmentResult:
    """Assign each candidate entity the most probable reference etype (if any reaches the threshold).

    Non-selected etypes that also clear the threshold are flagged with
    ``features["runnerUp"] = 1``.
    """
    cfg = cfg or RunConfig()
    _check_model(model, "entity")
    kept = [c for c in entity_candidates(ref_kg, cand_kg, cfg, pm) if c.kept]
    probs = _predict(model, kept, ENTITY_FEATURES)
    best: dict[str, tuple[float, str]] = {}
    for row, p in zip(kept, probs):
        if p < cfg.decision_th:
            continue
        cur = best.get(row.pair.cand)
        if cur is None or (-p, row.pair.ref) < (-cur[0], cur[1]):
            best[row.pair.cand] = (p, row.pair.ref)
    pairs = []
    for row, p in zip(kept, probs):
        selected = best.get(row.pair.cand, (None, None))[1] == row.pair.ref
        feats = dict(row.features)
        if p >= cfg.decision_th and not selected:
            feats["runnerUp"] = 1.0
        pairs.append(AlignedPair(row.pair.ref, row.pair.cand, "entity", p, selected, feats))
    return AlignmentResult(ref_kg.name, cand_kg.name, pairs)
