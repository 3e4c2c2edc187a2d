"""One-to-one alignment of properties between two KGs by normalized-label similarity."""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Iterable

from kae.errors import ConfigError
from kae.lexical import LexicalResources, NormalizedLabel, lcs_sim, lev_sim, ngram_sim, w2v_sim
from kae.model import KnowledgeGraph

DEFAULT_PROPERTY_THRESHOLD = 0.75


@dataclass(frozen=True)
class PropertyMatch:
    ref: str
    cand: str
    score: float

    def to_dict(self) -> dict:
        return {"ref": self.ref, "cand": self.cand, "score": self.score}


def label_score(a: NormalizedLabel, b: NormalizedLabel, res: LexicalResources) -> float:
    """Unweighted mean of trigram, Levenshtein, LCS and embedding similarity."""
    return (
        ngram_sim(a, b)
        + lev_sim(a.text, b.text)
        + lcs_sim(a.text, b.text)
        + w2v_sim(a, b, res.embeddings)
    ) / 4.0


def greedy_one_to_one(scored: Iterable[tuple[str, str, float]]) -> list[tuple[str, str, float]]:
    """Pick pairs by descending score, ties by (left, right) id, each id used once."""
    used_l, used_r, out = set(), set(), []
    for left, right, score in sorted(scored, key=lambda t: (-t[2], t[0], t[1])):
        if left in used_l or right in used_r:
            continue
        used_l.add(left)
        used_r.add(right)
        out.append((left, right, score))
    return out


def match_properties(
    ref_kg: KnowledgeGraph,
    cand_kg: KnowledgeGraph,
    threshold: float = DEFAULT_PROPERTY_THRESHOLD,
    resources: LexicalResources | None = None,
    ref_props: Iterable[str] | None = None,
    cand_props: Iterable[str] | None = None,
    jobs: int = 1,
) -> list[PropertyMatch]:
    if not (0.0 < threshold <= 1.0):
        raise ConfigError(f"property-match threshold must lie in (0, 1], got {threshold}")
    res = resources or LexicalResources.load()
    ref_ids = sorted(ref_kg.properties if ref_props is None else ref_props)
    cand_ids = sorted(cand_kg.properties if cand_props is None else cand_props)
    ref_labels = {p: res.normalize(ref_kg.properties[p].label) for p in ref_ids}
    cand_labels = {p: res.normalize(cand_kg.properties[p].label) for p in cand_ids}

    def row(ref_id: str) -> list[tuple[str, str, float]]:
        out = []
        for cand_id in cand_ids:
            s = label_score(ref_labels[ref_id], cand_labels[cand_id], res)
            if s >= threshold:
                out.append((ref_id, cand_id, s))
        return out

    if jobs > 1 and len(ref_ids) > 1:
        with ThreadPoolExecutor(max_workers=jobs) as pool:
            rows = list(pool.map(row, ref_ids))
    else:
        rows = [row(r) for r in ref_ids]
    scored = [t for r in rows for t in r]
    return [PropertyMatch(r, c, s) for r, c, s in greedy_one_to_one(scored)]
