"""Reading and writing KGs, alignments and gold files; triple flattening; Turtle subset."""

from __future__ import annotations

import json
import re
from dataclasses import dataclass
from pathlib import Path
from typing import Any

import jsonschema

from kae.errors import (
    KaeError,
    ParseError,
    SchemaValidationError,
    StructuralError,
    UnknownIdError,
    UnsupportedFeatureError,
)
from kae.model import EntityNode, EtypeNode, KnowledgeGraph, PropertyDef

_ID = {"type": "string", "minLength": 1}

KG_SCHEMA: dict[str, Any] = {
    "type": "object",
    "required": ["name", "etypes", "properties", "entities"],
    "additionalProperties": False,
    "properties": {
        "name": {"type": "string"},
        "etypes": {
            "type": "array",
            "items": {
                "type": "object",
                "required": ["id", "label"],
                "additionalProperties": False,
                "properties": {
                    "id": _ID,
                    "label": {"type": "string"},
                    "parent": {"type": ["string", "null"]},
                    "associations": {
                        "type": "object",
                        "additionalProperties": {"enum": [1, -1]},
                    },
                },
            },
        },
        "properties": {
            "type": "array",
            "items": {
                "type": "object",
                "required": ["id", "label"],
                "additionalProperties": False,
                "properties": {"id": _ID, "label": {"type": "string", "pattern": r"\S"}},
            },
        },
        "entities": {
            "type": "array",
            "items": {
                "type": "object",
                "required": ["id", "label"],
                "additionalProperties": False,
                "properties": {
                    "id": _ID,
                    "label": {"type": "string"},
                    "etypes": {"type": "array", "items": {"type": "string"}},
                    "properties": {"type": "array", "items": {"type": "string"}},
                },
            },
        },
    },
}

_FEATURE_KEYS = ("simH", "simV", "simI", "ngram", "lcs", "lev", "wup", "w2v")

ALIGNMENT_SCHEMA: dict[str, Any] = {
    "type": "object",
    "required": ["reference", "candidate", "pairs"],
    "properties": {
        "reference": {"type": "string"},
        "candidate": {"type": "string"},
        "pairs": {
            "type": "array",
            "items": {
                "type": "object",
                "required": ["ref", "cand", "kind", "score", "aligned"],
                "properties": {
                    "ref": {"type": "string"},
                    "cand": {"type": "string"},
                    "kind": {"enum": ["etype", "entity"]},
                    "score": {"type": "number", "minimum": 0, "maximum": 1},
                    "aligned": {"type": "boolean"},
                    "features": {"type": "object", "additionalProperties": {"type": "number"}},
                },
            },
        },
    },
}

GOLD_SCHEMA: dict[str, Any] = {
    "type": "object",
    "required": ["pairs"],
    "properties": {
        "pairs": {
            "type": "array",
            "items": {
                "type": "object",
                "required": ["ref", "cand", "kind"],
                "properties": {
                    "ref": {"type": "string"},
                    "cand": {"type": "string"},
                    "kind": {"enum": ["etype", "entity"]},
                },
            },
        }
    },
}


def _json_path(path) -> str:
    out = ""
    for part in path:
        out += f"[{part}]" if isinstance(part, int) else (f".{part}" if out else str(part))
    return out or "<root>"


def _read_json(path: str | Path) -> Any:
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except FileNotFoundError:
        raise KaeError(f"file not found: {path}") from None
    except UnicodeDecodeError as exc:
        raise ParseError(f"{path} is not valid UTF-8: {exc}") from None
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"malformed JSON in {path}: {exc.msg}", exc.lineno, exc.colno) from None


def _validate(doc: Any, schema: dict, what: str) -> None:
    errors = sorted(
        jsonschema.Draft7Validator(schema).iter_errors(doc), key=lambda e: list(e.absolute_path)
    )
    if errors:
        err = errors[0]
        field = _json_path(err.absolute_path)
        raise SchemaValidationError(f"invalid {what} at {field}: {err.message}", field)


def kg_from_document(doc: Any) -> KnowledgeGraph:
    _validate(doc, KG_SCHEMA, "KG document")
    etype_ids = {e["id"] for e in doc["etypes"]}
    prop_ids = {p["id"] for p in doc["properties"]}
    for section, known in (("etypes", etype_ids), ("properties", prop_ids), ("entities", None)):
        seen: set[str] = set()
        for i, item in enumerate(doc[section]):
            if item["id"] in seen:
                raise SchemaValidationError(
                    f"duplicate id {item['id']!r} in {section}", f"{section}[{i}].id"
                )
            seen.add(item["id"])
    for i, et in enumerate(doc["etypes"]):
        parent = et.get("parent")
        if parent is not None and parent not in etype_ids:
            raise SchemaValidationError(
                f"etype {et['id']!r} references unknown parent {parent!r}", f"etypes[{i}].parent"
            )
        for pid in et.get("associations", {}):
            if pid not in prop_ids:
                raise SchemaValidationError(
                    f"etype {et['id']!r} references unknown property {pid!r}",
                    f"etypes[{i}].associations.{pid}",
                )
    for i, ent in enumerate(doc["entities"]):
        for tid in ent.get("etypes", []):
            if tid not in etype_ids:
                raise SchemaValidationError(
                    f"entity {ent['id']!r} references unknown etype {tid!r}", f"entities[{i}].etypes"
                )
        for pid in ent.get("properties", []):
            if pid not in prop_ids:
                raise SchemaValidationError(
                    f"entity {ent['id']!r} references unknown property {pid!r}",
                    f"entities[{i}].properties",
                )
    return KnowledgeGraph.build(
        doc["name"],
        etypes=[
            EtypeNode(e["id"], e["label"], e.get("parent"), dict(e.get("associations", {})))
            for e in doc["etypes"]
        ],
        properties=[PropertyDef(p["id"], p["label"]) for p in doc["properties"]],
        entities=[
            EntityNode(e["id"], e["label"], list(e.get("etypes", [])), frozenset(e.get("properties", [])))
            for e in doc["entities"]
        ],
    )


def kg_to_document(kg: KnowledgeGraph) -> dict[str, Any]:
    return {
        "name": kg.name,
        "etypes": [
            {
                "id": et.id,
                "label": et.label,
                "parent": et.parent,
                "associations": dict(sorted(et.associations.items())),
            }
            for _, et in sorted(kg.etypes.items())
        ],
        "properties": [{"id": p.id, "label": p.label} for _, p in sorted(kg.properties.items())],
        "entities": [
            {
                "id": e.id,
                "label": e.label,
                "etypes": list(e.etypes),
                "properties": sorted(e.properties),
            }
            for _, e in sorted(kg.entities.items())
        ],
    }


def load_kg(path: str | Path) -> KnowledgeGraph:
    return kg_from_document(_read_json(path))


def dump_json(obj: Any, path: str | Path) -> None:
    Path(path).write_text(json.dumps(obj, indent=2, ensure_ascii=False) + "\n", encoding="utf-8")


def save_kg(kg: KnowledgeGraph, path: str | Path) -> None:
    dump_json(kg_to_document(kg), path)


@dataclass(frozen=True, order=True)
class Triple:
    subject: str
    predicate: str
    object: str
    # association sign for "hasProperty"; 1 for everything else
    weight: int = 1


TRIPLE_PREDICATES = ("type", "subClassOf", "hasProperty", "label", "usesProperty")


def flatten_triples(kg: KnowledgeGraph) -> list[Triple]:
    triples = []
    for et in kg.etypes.values():
        triples.append(Triple(et.id, "label", et.label))
        if et.parent is not None:
            triples.append(Triple(et.id, "subClassOf", et.parent))
        for pid, w in et.associations.items():
            triples.append(Triple(et.id, "hasProperty", pid, w))
    for ent in kg.entities.values():
        triples.append(Triple(ent.id, "label", ent.label))
        for tid in ent.etypes:
            triples.append(Triple(ent.id, "type", tid))
        for pid in ent.properties:
            triples.append(Triple(ent.id, "usesProperty", pid))
    return sorted(triples)


# --- alignment / gold artifacts ---------------------------------------------


@dataclass
class AlignedPair:
    ref: str
    cand: str
    kind: str
    score: float
    aligned: bool
    features: dict[str, float]

    def to_dict(self) -> dict[str, Any]:
        return {
            "ref": self.ref,
            "cand": self.cand,
            "kind": self.kind,
            "score": self.score,
            "aligned": self.aligned,
            "features": dict(self.features),
        }


@dataclass
class AlignmentResult:
    reference: str
    candidate: str
    pairs: list[AlignedPair]

    def aligned_pairs(self) -> list[AlignedPair]:
        return [p for p in self.pairs if p.aligned]

    def to_dict(self) -> dict[str, Any]:
        return {
            "reference": self.reference,
            "candidate": self.candidate,
            "pairs": [p.to_dict() for p in self.pairs],
        }

    @classmethod
    def from_dict(cls, doc: Any) -> AlignmentResult:
        _validate(doc, ALIGNMENT_SCHEMA, "alignment document")
        return cls(
            doc["reference"],
            doc["candidate"],
            [
                AlignedPair(
                    p["ref"], p["cand"], p["kind"], float(p["score"]), bool(p["aligned"]),
                    dict(p.get("features", {})),
                )
                for p in doc["pairs"]
            ],
        )


def load_alignment(path: str | Path) -> AlignmentResult:
    return AlignmentResult.from_dict(_read_json(path))


def save_alignment(result: AlignmentResult, path: str | Path) -> None:
    dump_json(result.to_dict(), path)


def load_gold(path: str | Path):
    from kae.evaluation import GoldAlignment

    doc = _read_json(path)
    _validate(doc, GOLD_SCHEMA, "gold document")
    return GoldAlignment([(p["ref"], p["cand"], p["kind"]) for p in doc["pairs"]])


# --- Turtle subset ------------------------------------------------------------

_TOKEN_RE = re.compile(
    r"""
    (?P<ws>[ \t\r]+)
  | (?P<comment>\#[^\n]*)
  | (?P<newline>\n)
  | (?P<iri><[^<>"{}|^`\\\s]*>)
  | (?P<string>"(?:[^"\\\n]|\\.)*")
  | (?P<langtag>@[A-Za-z]+(?:-[A-Za-z0-9]+)*)
  | (?P<dtype>\^\^)
  | (?P<blank>\[|_:)
  | (?P<collection>\()
  | (?P<name>[A-Za-z_][\w\-]*(?:\.[\w\-]+)*:(?:[\w\-]+(?:\.[\w\-]+)*)?|:(?:[\w\-]+(?:\.[\w\-]+)*)?|[A-Za-z][\w\-]*)
  | (?P<number>[+-]?\d+(?:\.\d+)?)
  | (?P<punct>[.;,])
    """,
    re.VERBOSE,
)

_CLASS_TYPES = {"owl:Class", "rdfs:Class"}
_PROPERTY_TYPES = {
    "owl:ObjectProperty",
    "owl:DatatypeProperty",
    "owl:AnnotationProperty",
    "rdf:Property",
    "owl:FunctionalProperty",
}
_IGNORED_TYPES = {"owl:Ontology", "owl:NamedIndividual"}
_RDFS_NS = "http://www.w3.org/2000/01/rdf-schema#"
_RDF_NS = "http://www.w3.org/1999/02/22-rdf-syntax-ns#"
_OWL_NS = "http://www.w3.org/2002/07/owl#"


def _tokenize(text: str):
    line, pos = 1, 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if m is None:
            raise ParseError(f"unsupported Turtle syntax near {text[pos:pos + 20]!r}", line)
        kind = m.lastgroup
        value = m.group()
        pos = m.end()
        if kind == "newline":
            line += 1
            continue
        if kind in ("ws", "comment"):
            continue
        if kind == "blank":
            raise UnsupportedFeatureError("blank nodes are not supported by the Turtle subset", line)
        if kind == "collection":
            raise UnsupportedFeatureError("RDF collections are not supported by the Turtle subset", line)
        yield kind, value, line


class _TurtleReader:
    def __init__(self, text: str):
        self.tokens = list(_tokenize(text))
        self.i = 0
        self.prefixes: dict[str, str] = {}

    def _peek(self):
        return self.tokens[self.i] if self.i < len(self.tokens) else (None, None, self.tokens[-1][2])

    def _next(self):
        tok = self._peek()
        if tok[0] is None:
            raise ParseError("unexpected end of Turtle input", tok[2])
        self.i += 1
        return tok

    def _expect_punct(self, char: str):
        kind, value, line = self._next()
        if kind != "punct" or value != char:
            raise ParseError(f"expected {char!r}, found {value!r}", line)

    def _canonical(self, kind: str, value: str, line: int) -> str:
        """Rewrite well-known vocabulary IRIs/prefixes to rdf:/rdfs:/owl: form."""
        if kind == "name":
            if value == "a":
                return "rdf:type"
            prefix, _, local = value.partition(":")
            if prefix not in self.prefixes:
                raise ParseError(f"undeclared prefix {prefix!r}:", line)
            iri = self.prefixes[prefix] + local
        elif kind == "iri":
            iri = value[1:-1]
        else:
            raise ParseError(f"expected a term, found {value!r}", line)
        for ns, short in ((_RDFS_NS, "rdfs:"), (_RDF_NS, "rdf:"), (_OWL_NS, "owl:")):
            if iri.startswith(ns):
                return short + iri[len(ns):]
        if kind == "name":
            return value[1:] if value.startswith(":") else value
        tail = re.split(r"[#/]", iri.rstrip("/#"))[-1]
        return tail or iri

    def _object(self):
        kind, value, line = self._next()
        if kind == "string":
            literal = json.loads(value) if "\\" in value else value[1:-1]
            if self._peek()[0] == "langtag":
                self._next()
            elif self._peek()[0] == "dtype":
                self._next()
                k, v, ln = self._next()
                self._canonical(k, v, ln)
            return ("literal", literal)
        if kind == "number":
            return ("literal", value)
        return ("term", self._canonical(kind, value, line))

    def statements(self):
        while self.i < len(self.tokens):
            kind, value, line = self._peek()
            if kind == "langtag" and value in ("@prefix", "@base"):
                self._next()
                if value == "@base":
                    raise UnsupportedFeatureError("@base is not supported by the Turtle subset", line)
                k, name, ln = self._next()
                if k != "name" or not name.endswith(":"):
                    raise ParseError(f"malformed @prefix declaration {name!r}", ln)
                k, iri, ln = self._next()
                if k != "iri":
                    raise ParseError("@prefix requires an IRI", ln)
                self.prefixes[name[:-1]] = iri[1:-1]
                self._expect_punct(".")
                continue
            if kind == "name" and value.upper() in ("PREFIX", "BASE"):
                raise UnsupportedFeatureError("SPARQL-style PREFIX/BASE is not supported", line)
            self._next()
            subject = self._canonical(kind, value, line)
            while True:
                k, v, ln = self._next()
                predicate = self._canonical(k, v, ln)
                while True:
                    yield line, subject, predicate, self._object()
                    if self._peek()[:2] == ("punct", ","):
                        self._next()
                        continue
                    break
                k, v, ln = self._next()
                if (k, v) == ("punct", ";"):
                    if self._peek()[:2] == ("punct", "."):
                        self._next()
                        break
                    continue
                if (k, v) == ("punct", "."):
                    break
                raise ParseError(f"expected ';' or '.', found {v!r}", ln)


def load_turtle_subset(path: str | Path) -> KnowledgeGraph:
    """Read classes, properties with rdfs:domain, labels and typed individuals.

    Predicates outside the subset (rdfs:range, rdfs:comment, ...) are skipped.
    A subject typed with anything other than a class/property keyword becomes
    an entity; triples whose predicate is a known property record usage.
    """
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except FileNotFoundError:
        raise KaeError(f"file not found: {path}") from None
    stmts = list(_TurtleReader(text).statements())

    classes: dict[str, None] = {}
    props: dict[str, None] = {}
    labels: dict[str, str] = {}
    parents: dict[str, str] = {}
    domains: list[tuple[str, str]] = []
    individuals: dict[str, list[str]] = {}
    for line, s, p, (okind, o) in stmts:
        if p == "rdf:type" and okind == "term":
            if o in _CLASS_TYPES:
                classes.setdefault(s)
            elif o in _PROPERTY_TYPES:
                props.setdefault(s)
            elif o not in _IGNORED_TYPES:
                individuals.setdefault(s, [])
                if o not in individuals[s]:
                    individuals[s].append(o)
        elif p == "rdfs:label" and okind == "literal":
            labels.setdefault(s, o)
        elif p == "rdfs:subClassOf" and okind == "term":
            classes.setdefault(s)
            if o == "owl:Thing":
                continue
            classes.setdefault(o)
            if s in parents and parents[s] != o:
                raise StructuralError(
                    f"etype {s!r} has several parents ({parents[s]!r}, {o!r}); "
                    f"multiple inheritance is not supported (line {line})"
                )
            parents[s] = o
        elif p == "rdfs:domain" and okind == "term":
            props.setdefault(s)
            classes.setdefault(o)
            domains.append((o, s))

    uses: dict[str, set[str]] = {}
    for _, s, p, _obj in stmts:
        if s in individuals and p in props:
            uses.setdefault(s, set()).add(p)

    kg = KnowledgeGraph(path.stem)
    for pid in props:
        kg.properties[pid] = PropertyDef(pid, labels.get(pid, pid))
    for cid in classes:
        kg.etypes[cid] = EtypeNode(cid, labels.get(cid, cid), parents.get(cid))
    for cid, pid in domains:
        kg.etypes[cid].associations[pid] = 1
    for iid, types in individuals.items():
        for t in types:
            if t not in kg.etypes:
                kg.etypes[t] = EtypeNode(t, labels.get(t, t))
        kg.entities[iid] = EntityNode(iid, labels.get(iid, iid), types, frozenset(uses.get(iid, ())))
    try:
        kg.validate()
    except UnknownIdError as exc:
        raise StructuralError(str(exc)) from None
    return kg
