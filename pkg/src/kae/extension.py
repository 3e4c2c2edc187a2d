"""Extending a reference KG with the etypes, properties and entities of a candidate KG."""

from __future__ import annotations

import copy
from dataclasses import asdict, dataclass, field

from kae.config import RunConfig
from kae.errors import UnknownIdError
from kae.ingest import AlignmentResult
from kae.matcher import recognize_etypes
from kae.ml.model import ClassifierModel
from kae.model import EntityNode, EtypeNode, KnowledgeGraph, PropertyDef
from kae.property_matcher import PropertyMatch, match_properties

PREFIX = "cand:"
UNALIGNED_ROOT = PREFIX + "Unaligned"


@dataclass
class ExtensionReport:
    merged_etypes: list[tuple[str, str]] = field(default_factory=list)
    absorbed_subclasses: list[tuple[str, str]] = field(default_factory=list)
    merged_entities: list[tuple[str, str]] = field(default_factory=list)
    recognized_entities: list[tuple[str, str]] = field(default_factory=list)
    discarded_entities: list[str] = field(default_factory=list)
    added_properties: int = 0
    added_etypes: list[str] = field(default_factory=list)
    # association-weight disagreements, resolved in favour of the reference
    conflicts: list[dict] = field(default_factory=list)
    # candidate entities whose prefixed id already existed (re-extension)
    duplicate_entities: list[str] = field(default_factory=list)

    def to_dict(self) -> dict:
        doc = asdict(self)
        for key in ("merged_etypes", "absorbed_subclasses", "merged_entities", "recognized_entities"):
            doc[key] = [list(t) for t in doc[key]]
        return doc


class _Extender:
    def __init__(self, ref_kg, cand_kg, cfg: RunConfig, pm):
        self.ref, self.cand, self.cfg = ref_kg, cand_kg, cfg
        self.out = copy.deepcopy(ref_kg)
        self.report = ExtensionReport()
        self.prop_map, self.matches = self._property_map(pm)

    def _property_map(self, pm):
        # candidate properties already imported by an earlier extension keep their id
        premapped = {p: PREFIX + p for p in self.cand.properties if PREFIX + p in self.ref.properties}
        if pm is None:
            pm = match_properties(
                self.ref, self.cand, self.cfg.prop_th, self.cfg.resources,
                ref_props=[p for p in self.ref.properties if p not in premapped.values()],
                cand_props=[p for p in self.cand.properties if p not in premapped],
                jobs=self.cfg.jobs,
            )
        mapping = dict(premapped)
        for m in pm:
            mapping.setdefault(m.cand, m.ref)
        matches = [PropertyMatch(r, c, 1.0) for c, r in sorted(premapped.items())]
        matches += [m for m in pm if m.cand not in premapped]
        return mapping, matches

    def prop(self, cand_pid: str) -> str:
        if cand_pid in self.prop_map:
            return self.prop_map[cand_pid]
        new_id = PREFIX + cand_pid
        if new_id not in self.out.properties:
            self.out.properties[new_id] = PropertyDef(new_id, self.cand.properties[cand_pid].label)
            self.report.added_properties += 1
        self.prop_map[cand_pid] = new_id
        return new_id

    def merge_associations(self, target: str, source: str) -> None:
        node = self.out.etypes[target]
        for pid, w in sorted(self.cand.etypes[source].associations.items()):
            mapped = self.prop(pid)
            current = node.associations.get(mapped)
            if current is None:
                node.associations[mapped] = w
            elif current != w:
                self.report.conflicts.append(
                    {"etype": target, "property": mapped, "reference": current, "candidate": w, "source": source}
                )


def _aligned_etype_pairs(alignment: AlignmentResult, ref_kg, cand_kg) -> list[tuple[str, str]]:
    pairs = []
    for p in alignment.aligned_pairs():
        if p.kind != "etype":
            continue
        if p.ref not in ref_kg.etypes:
            raise UnknownIdError(f"alignment references unknown reference etype {p.ref!r}", p.ref)
        if p.cand not in cand_kg.etypes:
            raise UnknownIdError(f"alignment references unknown candidate etype {p.cand!r}", p.cand)
        pairs.append((p.ref, p.cand))
    return sorted(set(pairs))


def extend_kg(
    ref_kg: KnowledgeGraph,
    cand_kg: KnowledgeGraph,
    alignment: AlignmentResult,
    recognizer: ClassifierModel | None,
    cfg: RunConfig | None = None,
    pm: list[PropertyMatch] | None = None,
) -> tuple[KnowledgeGraph, ExtensionReport]:
    """Merge aligned etypes (with their unaligned subclasses flattened in), then type leftovers.

    Candidate entities whose etypes were not aligned go through the recognizer;
    with ``recognizer=None`` they are all discarded. The inputs are not modified.
    """
    cfg = cfg or RunConfig()
    ext = _Extender(ref_kg, cand_kg, cfg, pm)
    out, report = ext.out, ext.report
    aligned = _aligned_etype_pairs(alignment, ref_kg, cand_kg)
    aligned_cand = {c for _, c in aligned}

    # cand etype -> reference etypes its entities land in
    targets: dict[str, set[str]] = {}
    for ref_id, cand_id in aligned:
        report.merged_etypes.append((ref_id, cand_id))
        ext.merge_associations(ref_id, cand_id)
        targets.setdefault(cand_id, set()).add(ref_id)
        stack = cand_kg.children(cand_id)
        while stack:
            sub = stack.pop(0)
            if sub in aligned_cand:
                continue  # handled by its own alignment, together with its subtree
            report.absorbed_subclasses.append((ref_id, sub))
            ext.merge_associations(ref_id, sub)
            targets.setdefault(sub, set()).add(ref_id)
            stack.extend(cand_kg.children(sub))

    if cfg.keep_unaligned_etypes:
        _attach_unaligned(ext, targets)

    remaining = []
    for ent_id, ent in sorted(cand_kg.entities.items()):
        dest = sorted(set().union(*(targets.get(t, set()) for t in ent.etypes)))
        if dest:
            for ref_id in dest:
                report.merged_entities.append((ent_id, ref_id))
            _add_entity(ext, ent, dest)
        else:
            remaining.append(ent_id)

    if remaining:
        best = {}
        if recognizer is not None:
            result = recognize_etypes(ref_kg, cand_kg, recognizer, cfg, pm=ext.matches)
            best = {p.cand: p.ref for p in result.aligned_pairs()}
        for ent_id in remaining:
            if ent_id in best:
                report.recognized_entities.append((ent_id, best[ent_id]))
                _add_entity(ext, cand_kg.entities[ent_id], [best[ent_id]])
            else:
                report.discarded_entities.append(ent_id)

    out.validate()
    return out, report


def _add_entity(ext: _Extender, ent: EntityNode, etypes: list[str]) -> None:
    new_id = PREFIX + ent.id
    if new_id in ext.out.entities:
        ext.report.duplicate_entities.append(ent.id)
        return
    props = frozenset(ext.prop(p) for p in ent.properties)
    ext.out.entities[new_id] = EntityNode(new_id, ent.label, list(etypes), props)


def _attach_unaligned(ext: _Extender, targets: dict[str, set[str]]) -> None:
    """Copy etypes that were neither aligned nor absorbed under a synthetic root."""
    cand, out = ext.cand, ext.out
    loose = [t for t in sorted(cand.etypes) if t not in targets]
    if not loose:
        return
    if UNALIGNED_ROOT not in out.etypes:
        out.etypes[UNALIGNED_ROOT] = EtypeNode(UNALIGNED_ROOT, "Unaligned")
        ext.report.added_etypes.append(UNALIGNED_ROOT)
    loose_set = set(loose)
    depth = cand.depths()
    for tid in sorted(loose, key=lambda t: (depth[t], t)):
        new_id = PREFIX + tid
        parent = cand.etypes[tid].parent
        new_parent = PREFIX + parent if parent in loose_set else UNALIGNED_ROOT
        if new_id not in out.etypes:
            out.etypes[new_id] = EtypeNode(new_id, cand.etypes[tid].label, new_parent)
            ext.report.added_etypes.append(new_id)
        node = out.etypes[new_id]
        for pid, w in sorted(cand.etypes[tid].associations.items()):
            node.associations.setdefault(ext.prop(pid), w)
        targets[tid] = {new_id}
