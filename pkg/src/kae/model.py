"""Knowledge-graph domain types and the FCA-style property context built from them."""

from __future__ import annotations

from dataclasses import dataclass, field
from types import MappingProxyType
from typing import Iterable, Mapping

from kae.errors import StructuralError, UnknownIdError

ASSOCIATED = 1
UNDEFINED = 0
UNASSOCIATED = -1


@dataclass
class PropertyDef:
    id: str
    label: str


@dataclass
class EtypeNode:
    id: str
    label: str
    parent: str | None = None
    # property id -> +1 (associated) / -1 (unassociated); absent means undefined
    associations: dict[str, int] = field(default_factory=dict)

    def positive_properties(self) -> list[str]:
        return sorted(p for p, w in self.associations.items() if w == ASSOCIATED)


@dataclass
class EntityNode:
    id: str
    label: str
    etypes: list[str] = field(default_factory=list)
    properties: frozenset[str] = field(default_factory=frozenset)

    def __post_init__(self):
        self.properties = frozenset(self.properties)


@dataclass
class KnowledgeGraph:
    """A KG schema (etypes, properties, associations) plus its entities.

    All three collections are dicts keyed by id, so uniqueness holds by
    construction; :meth:`validate` checks the remaining invariants.
    """

    name: str
    etypes: dict[str, EtypeNode] = field(default_factory=dict)
    properties: dict[str, PropertyDef] = field(default_factory=dict)
    entities: dict[str, EntityNode] = field(default_factory=dict)

    @classmethod
    def build(
        cls,
        name: str,
        etypes: Iterable[EtypeNode] = (),
        properties: Iterable[PropertyDef] = (),
        entities: Iterable[EntityNode] = (),
    ) -> KnowledgeGraph:
        kg = cls(name)
        for kind, items, target in (
            ("etype", etypes, kg.etypes),
            ("property", properties, kg.properties),
            ("entity", entities, kg.entities),
        ):
            for item in items:
                if item.id in target:
                    raise StructuralError(f"duplicate {kind} id {item.id!r} in KG {name!r}")
                target[item.id] = item
        kg.validate()
        return kg

    def validate(self) -> None:
        for prop in self.properties.values():
            if not prop.label.strip():
                raise StructuralError(f"property {prop.id!r} has an empty label")
        for et in self.etypes.values():
            if et.parent is not None and et.parent not in self.etypes:
                raise UnknownIdError(
                    f"etype {et.id!r} references unknown parent {et.parent!r}", et.parent
                )
            for pid, w in et.associations.items():
                if pid not in self.properties:
                    raise UnknownIdError(f"etype {et.id!r} references unknown property {pid!r}", pid)
                if w not in (ASSOCIATED, UNASSOCIATED):
                    raise StructuralError(
                        f"etype {et.id!r} has association weight {w!r} for {pid!r}; expected 1 or -1"
                    )
        for ent in self.entities.values():
            for tid in ent.etypes:
                if tid not in self.etypes:
                    raise UnknownIdError(f"entity {ent.id!r} references unknown etype {tid!r}", tid)
            for pid in ent.properties:
                if pid not in self.properties:
                    raise UnknownIdError(f"entity {ent.id!r} references unknown property {pid!r}", pid)
        self.depths()

    def depths(self) -> dict[str, int]:
        """Depth of every etype (roots are 0). Raises on a cyclic parent chain."""
        depth: dict[str, int] = {}
        for start in self.etypes:
            chain: list[str] = []
            on_chain: set[str] = set()
            node: str | None = start
            while node is not None and node not in depth:
                if node in on_chain:
                    cycle = chain[chain.index(node):] + [node]
                    raise StructuralError("cyclic parent chain: " + " -> ".join(cycle))
                chain.append(node)
                on_chain.add(node)
                node = self.etypes[node].parent
            base = -1 if node is None else depth[node]
            for offset, tid in enumerate(reversed(chain), start=1):
                depth[tid] = base + offset
        return depth

    def children(self, etype_id: str) -> list[str]:
        return sorted(t.id for t in self.etypes.values() if t.parent == etype_id)

    def descendants(self, etype_id: str) -> list[str]:
        out, stack = [], self.children(etype_id)
        while stack:
            tid = stack.pop(0)
            out.append(tid)
            stack.extend(self.children(tid))
        return out

    def entities_of(self, etype_id: str) -> list[EntityNode]:
        return [e for _, e in sorted(self.entities.items()) if etype_id in e.etypes]

    def prop_set(self, item_id: str, kind: str = "etype") -> frozenset[str]:
        """prop(X): +1-associated properties of an etype, or the properties an entity uses."""
        if kind == "etype":
            if item_id not in self.etypes:
                raise UnknownIdError(f"unknown etype {item_id!r} in KG {self.name!r}", item_id)
            return frozenset(self.etypes[item_id].positive_properties())
        if item_id not in self.entities:
            raise UnknownIdError(f"unknown entity {item_id!r} in KG {self.name!r}", item_id)
        return self.entities[item_id].properties


@dataclass(frozen=True)
class FcaContext:
    """Three-valued etype x property incidence table of one KG, plus depths and counts."""

    kg_name: str
    etype_ids: tuple[str, ...]
    property_ids: tuple[str, ...]
    weights: Mapping[tuple[str, str], int]
    layers: Mapping[str, float]
    describer_sets: Mapping[str, frozenset[str]]
    entity_counts: Mapping[str, int]

    def _check_etype(self, etype_id: str) -> None:
        if etype_id not in self.layers:
            raise UnknownIdError(f"unknown etype {etype_id!r} in context {self.kg_name!r}", etype_id)

    def _check_property(self, prop_id: str) -> None:
        if prop_id not in self.describer_sets:
            raise UnknownIdError(f"unknown property {prop_id!r} in context {self.kg_name!r}", prop_id)

    def weight(self, etype_id: str, prop_id: str) -> int:
        self._check_etype(etype_id)
        self._check_property(prop_id)
        return self.weights.get((etype_id, prop_id), UNDEFINED)

    def layer(self, etype_id: str) -> float:
        self._check_etype(etype_id)
        return self.layers[etype_id]

    def describers(self, prop_id: str) -> frozenset[str]:
        """K_p: etypes positively associated with the property."""
        self._check_property(prop_id)
        return self.describer_sets[prop_id]

    def entity_count(self, etype_id: str) -> int:
        self._check_etype(etype_id)
        return self.entity_counts[etype_id]

    def nonzero_cells(self) -> list[tuple[str, str]]:
        return sorted(self.weights)


def build_context(kg: KnowledgeGraph, count_entities: bool = False) -> FcaContext:
    kg.validate()
    depth = kg.depths()
    max_depth = max(depth.values(), default=0)
    layers = {t: (d / max_depth if max_depth else 0.0) for t, d in sorted(depth.items())}

    weights: dict[tuple[str, str], int] = {}
    describers: dict[str, set[str]] = {p: set() for p in kg.properties}
    for tid in sorted(kg.etypes):
        for pid, w in sorted(kg.etypes[tid].associations.items()):
            weights[(tid, pid)] = w
            if w == ASSOCIATED:
                describers[pid].add(tid)

    if count_entities:
        counts = dict.fromkeys(sorted(kg.etypes), 0)
        for ent in kg.entities.values():
            # an entity declaring the same etype twice still counts once for it
            for tid in set(ent.etypes):
                counts[tid] += 1
    else:
        counts = dict.fromkeys(sorted(kg.etypes), 1)

    return FcaContext(
        kg_name=kg.name,
        etype_ids=tuple(sorted(kg.etypes)),
        property_ids=tuple(sorted(kg.properties)),
        weights=MappingProxyType(weights),
        layers=MappingProxyType(layers),
        describer_sets=MappingProxyType({p: frozenset(s) for p, s in sorted(describers.items())}),
        entity_counts=MappingProxyType(counts),
    )
