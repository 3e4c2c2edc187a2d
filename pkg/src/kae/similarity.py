"""Property-based similarity (Sim_H, Sim_V, Sim_I) of etype-etype and etype-entity pairs."""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Sequence

from kae.errors import UnknownIdError
from kae.model import KnowledgeGraph, build_context
from kae.property_matcher import PropertyMatch
from kae.specificity import DEFAULT_LAMBDA, METRICS, SpecificityTable, build_specificity_table

KINDS = ("etype", "entity")


@dataclass(frozen=True, order=True)
class CandidatePair:
    ref: str
    cand: str
    kind: str = "etype"


@dataclass(frozen=True)
class SimilarityVector:
    sim_h: float
    sim_v: float
    sim_i: float
    k: int
    raw: tuple[float, float, float] = (0.0, 0.0, 0.0)

    def as_features(self) -> dict[str, float]:
        return {"simH": self.sim_h, "simV": self.sim_v, "simI": self.sim_i}


def specificity_table_for(kg: KnowledgeGraph, lam: float = DEFAULT_LAMBDA) -> SpecificityTable:
    # entity counts feed the entropy only when the KG actually has entities
    return build_specificity_table(build_context(kg, count_entities=bool(kg.entities)), lam)


def aligned_pairs(ref_props: frozenset[str], cand_props: frozenset[str], pm: Sequence[PropertyMatch]):
    return sorted((m.ref, m.cand) for m in pm if m.ref in ref_props and m.cand in cand_props)


def _resolve(kg: KnowledgeGraph, item_id: str, kind: str) -> frozenset[str]:
    if kind not in KINDS:
        raise ValueError(f"unknown pair kind {kind!r}")
    return kg.prop_set(item_id, kind)


def pair_similarity(
    ref_table: SpecificityTable,
    cand_table: SpecificityTable,
    ref_kg: KnowledgeGraph,
    cand_kg: KnowledgeGraph,
    pair: CandidatePair,
    pm: Sequence[PropertyMatch],
    metric: str,
) -> float:
    """Raw (un-normalized) similarity of one pair under one specificity metric."""
    if metric not in METRICS:
        raise ValueError(f"unknown metric {metric!r}; expected one of {METRICS}")
    ref_props = _resolve(ref_kg, pair.ref, "etype")
    cand_props = _resolve(cand_kg, pair.cand, pair.kind)
    if not ref_props or not cand_props:
        return 0.0
    terms = []
    for p_ref, p_cand in aligned_pairs(ref_props, cand_props, pm):
        ref_spc = ref_table.value(metric, pair.ref, p_ref)
        if pair.kind == "etype":
            cand_spc = cand_table.value(metric, pair.cand, p_cand)
        else:
            cand_spc = cand_table.property_value(metric, p_cand)
        terms.append(ref_spc / len(ref_props))
        terms.append(cand_spc / len(cand_props))
    # fsum is order-independent, so swapping the KGs transposes the matrix exactly
    return 0.5 * math.fsum(terms)


def _minmax(column: list[float]) -> list[float]:
    lo, hi = min(column), max(column)
    if hi == lo:
        return [0.5] * len(column)
    return [(v - lo) / (hi - lo) for v in column]


def candidate_pairs(ref_kg: KnowledgeGraph, cand_kg: KnowledgeGraph, kind: str = "etype") -> list[CandidatePair]:
    if kind not in KINDS:
        raise ValueError(f"unknown pair kind {kind!r}")
    cand_ids = cand_kg.etypes if kind == "etype" else cand_kg.entities
    return [CandidatePair(r, c, kind) for r in sorted(ref_kg.etypes) for c in sorted(cand_ids)]


def raw_similarities(
    ref_kg: KnowledgeGraph,
    cand_kg: KnowledgeGraph,
    pm: Sequence[PropertyMatch],
    pairs: Sequence[CandidatePair],
    lam: float = DEFAULT_LAMBDA,
    jobs: int = 1,
) -> list[tuple[tuple[float, float, float], int]]:
    ref_table = specificity_table_for(ref_kg, lam)
    cand_table = specificity_table_for(cand_kg, lam)

    def one(pair: CandidatePair):
        raw = tuple(
            pair_similarity(ref_table, cand_table, ref_kg, cand_kg, pair, pm, m) for m in METRICS
        )
        k = len(aligned_pairs(ref_kg.prop_set(pair.ref), cand_kg.prop_set(pair.cand, pair.kind), pm))
        return raw, k

    if jobs > 1 and len(pairs) > 1:
        with ThreadPoolExecutor(max_workers=jobs) as pool:
            return list(pool.map(one, pairs))
    return [one(p) for p in pairs]


def similarity_matrix(
    ref_kg: KnowledgeGraph,
    cand_kg: KnowledgeGraph,
    pm: Sequence[PropertyMatch],
    lam: float = DEFAULT_LAMBDA,
    kind: str = "etype",
    pairs: Sequence[CandidatePair] | None = None,
    jobs: int = 1,
) -> list[tuple[CandidatePair, SimilarityVector]]:
    """Raw similarities of every candidate pair, each metric min-max scaled over the list.

    ``pairs`` defaults to the full cross product for ``kind``.
    """
    if pairs is None:
        pairs = candidate_pairs(ref_kg, cand_kg, kind)
    else:
        pairs = sorted(pairs)
        for p in pairs:
            if p.ref not in ref_kg.etypes:
                raise UnknownIdError(f"unknown reference etype {p.ref!r}", p.ref)
    if not pairs:
        return []
    raws = raw_similarities(ref_kg, cand_kg, pm, pairs, lam, jobs)
    columns = [_minmax([r[0][i] for r in raws]) for i in range(3)]
    return [
        (pair, SimilarityVector(columns[0][n], columns[1][n], columns[2][n], k, raw))
        for n, (pair, (raw, k)) in enumerate(zip(pairs, raws))
    ]


def matrix_to_csv(rows: Sequence[tuple[CandidatePair, SimilarityVector]]) -> str:
    lines = ["refId,candId,kind,simH,simV,simI,k"]
    for pair, vec in rows:
        lines.append(
            f"{pair.ref},{pair.cand},{pair.kind},{vec.sim_h:.6f},{vec.sim_v:.6f},{vec.sim_i:.6f},{vec.k}"
        )
    return "\n".join(lines) + "\n"
