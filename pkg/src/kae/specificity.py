"""Horizontal, vertical and informational specificity of (etype, property) cells."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Mapping

from kae.errors import ConfigError
from kae.model import FcaContext

DEFAULT_LAMBDA = 0.5
METRICS = ("H", "V", "I")


def check_lambda(lam: float) -> float:
    if not (0.0 < lam <= 1.0):
        raise ConfigError(f"lambda must lie in (0, 1], got {lam}")
    return float(lam)


def _hs_magnitude(ctx: FcaContext, prop_id: str, lam: float) -> float:
    # a property no etype positively uses behaves like a single-etype property
    kp = max(len(ctx.describers(prop_id)), 1)
    return math.exp(lam * (1 - kp))


def horizontal_specificity(ctx: FcaContext, etype_id: str, prop_id: str, lam: float = DEFAULT_LAMBDA) -> float:
    check_lambda(lam)
    w = ctx.weight(etype_id, prop_id)
    if w == 0:
        return 0.0
    return w * _hs_magnitude(ctx, prop_id, lam)


def _vs_magnitude(ctx: FcaContext, prop_id: str) -> float:
    kp = ctx.describers(prop_id)
    return min((ctx.layer(e) for e in kp), default=0.0)


def vertical_specificity(ctx: FcaContext, etype_id: str, prop_id: str) -> float:
    w = ctx.weight(etype_id, prop_id)
    if w == 0:
        return 0.0
    return w * _vs_magnitude(ctx, prop_id)


def entropy_of_counts(counts: Iterable[int]) -> float:
    counts = [c for c in counts]
    total = sum(counts)
    if total <= 0:
        return 0.0
    acc = 0.0
    for c in counts:
        if c > 0:
            acc -= c * math.log(c / total)
    return acc / total


def info_entropy(ctx: FcaContext, etypes: Iterable[str]) -> float:
    """Count-weighted entropy H(K_v) of an etype set (natural log); 0 for an empty set."""
    return entropy_of_counts(ctx.entity_count(e) for e in sorted(set(etypes)))


def _is_base(ctx: FcaContext, prop_id: str) -> float:
    everything = set(ctx.etype_ids)
    rest = everything - ctx.describers(prop_id)
    return info_entropy(ctx, everything) - info_entropy(ctx, rest)


def informational_specificity(ctx: FcaContext, etype_id: str, prop_id: str) -> float:
    """Raw (un-normalized) informational specificity."""
    w = ctx.weight(etype_id, prop_id)
    if w == 0:
        return 0.0
    return w * _is_base(ctx, prop_id)


@dataclass(frozen=True)
class SpecificityTable:
    ctx: FcaContext
    lam: float
    hs_values: Mapping[tuple[str, str], float]
    vs_values: Mapping[tuple[str, str], float]
    is_raw_values: Mapping[tuple[str, str], float]
    is_values: Mapping[tuple[str, str], float]
    # divisor applied to raw IS; 0 when every raw value is zero
    is_scale: float

    def hs(self, etype_id: str, prop_id: str) -> float:
        self.ctx.weight(etype_id, prop_id)
        return self.hs_values.get((etype_id, prop_id), 0.0)

    def vs(self, etype_id: str, prop_id: str) -> float:
        self.ctx.weight(etype_id, prop_id)
        return self.vs_values.get((etype_id, prop_id), 0.0)

    def is_(self, etype_id: str, prop_id: str) -> float:
        self.ctx.weight(etype_id, prop_id)
        return self.is_values.get((etype_id, prop_id), 0.0)

    def is_raw(self, etype_id: str, prop_id: str) -> float:
        self.ctx.weight(etype_id, prop_id)
        return self.is_raw_values.get((etype_id, prop_id), 0.0)

    def value(self, metric: str, etype_id: str, prop_id: str) -> float:
        return {"H": self.hs, "V": self.vs, "I": self.is_}[metric](etype_id, prop_id)

    def property_value(self, metric: str, prop_id: str) -> float:
        """Specificity of a property as if positively associated (w = +1).

        Used for entities, which carry no association weights of their own.
        """
        if metric == "H":
            return _hs_magnitude(self.ctx, prop_id, self.lam)
        if metric == "V":
            return _vs_magnitude(self.ctx, prop_id)
        if metric == "I":
            return _is_base(self.ctx, prop_id) / self.is_scale if self.is_scale else 1.0
        raise ValueError(f"unknown specificity metric {metric!r}")

    def rows(self) -> list[tuple[str, str, float, float, float, float]]:
        return [
            (e, p, self.hs_values[(e, p)], self.vs_values[(e, p)],
             self.is_raw_values[(e, p)], self.is_values[(e, p)])
            for e, p in self.ctx.nonzero_cells()
        ]

    def to_csv(self) -> str:
        lines = ["etypeId,propertyId,hs,vs,isRaw,isNorm"]
        for e, p, *vals in self.rows():
            lines.append(",".join([e, p] + [f"{v:.6f}" for v in vals]))
        return "\n".join(lines) + "\n"


def build_specificity_table(ctx: FcaContext, lam: float = DEFAULT_LAMBDA) -> SpecificityTable:
    check_lambda(lam)
    cells = ctx.nonzero_cells()
    hs, vs, raw = {}, {}, {}
    base_cache: dict[str, float] = {}
    for e, p in cells:
        hs[(e, p)] = horizontal_specificity(ctx, e, p, lam)
        vs[(e, p)] = vertical_specificity(ctx, e, p)
        if p not in base_cache:
            base_cache[p] = _is_base(ctx, p)
        raw[(e, p)] = ctx.weight(e, p) * base_cache[p]

    scale = max((abs(v) for v in raw.values()), default=0.0)
    if scale > 0:
        norm = {c: v / scale for c, v in raw.items()}
    else:
        # degenerate table: every raw value is 0, map each cell to its weight sign
        norm = {c: float(ctx.weight(*c)) for c in raw}
    return SpecificityTable(ctx, lam, hs, vs, raw, norm, scale)
