import json

import pytest

from kae.bundled import fixture_path
from kae.errors import KaeError, ParseError, SchemaValidationError, UnsupportedFeatureError
from kae.ingest import (
    AlignedPair,
    AlignmentResult,
    Triple,
    flatten_triples,
    kg_from_document,
    kg_to_document,
    load_alignment,
    load_kg,
    load_turtle_subset,
    save_alignment,
    save_kg,
)
from kae.model import EntityNode, EtypeNode, KnowledgeGraph, PropertyDef

from conftest import ALL_PAIRS


def write(tmp_path, name, text):
    path = tmp_path / name
    path.write_text(text, encoding="utf-8")
    return path


def test_minimal_document():
    kg = kg_from_document({"name": "t", "etypes": [{"id": "A", "label": "A"}], "properties": [], "entities": []})
    assert list(kg.etypes) == ["A"]


def test_conf_mini_ref_counts():
    kg = load_kg(fixture_path("conf_mini_ref.json"))
    assert (len(kg.etypes), len(kg.properties), len(kg.entities)) == (6, 14, 0)


def test_entity_with_unknown_property_names_the_id():
    doc = {
        "name": "t",
        "etypes": [{"id": "A", "label": "A"}],
        "properties": [],
        "entities": [{"id": "e", "label": "e", "etypes": ["A"], "properties": ["ghostProp"]}],
    }
    with pytest.raises(SchemaValidationError, match="ghostProp"):
        kg_from_document(doc)


def test_schema_error_names_field(tmp_path):
    path = write(tmp_path, "bad.json", json.dumps({"name": "t", "etypes": [{"id": "A"}], "properties": [], "entities": []}))
    with pytest.raises(SchemaValidationError) as err:
        load_kg(path)
    assert err.value.field == "etypes[0]"


def test_association_weight_zero_is_rejected():
    doc = {"name": "t", "etypes": [{"id": "A", "label": "A", "associations": {"p": 0}}],
           "properties": [{"id": "p", "label": "p"}], "entities": []}
    with pytest.raises(SchemaValidationError):
        kg_from_document(doc)


def test_malformed_json_reports_position(tmp_path):
    path = write(tmp_path, "broken.json", '{"name": "t",\n  "etypes": [,]}')
    with pytest.raises(ParseError) as err:
        load_kg(path)
    assert err.value.line == 2


def test_missing_file(tmp_path):
    with pytest.raises(KaeError):
        load_kg(tmp_path / "absent.json")


@pytest.mark.parametrize("pair", ALL_PAIRS)
def test_fixture_round_trip(tmp_path, pair):
    for side in ("ref", "cand"):
        kg = load_kg(fixture_path(f"{pair}_{side}.json"))
        save_kg(kg, tmp_path / "out.json")
        again = load_kg(tmp_path / "out.json")
        assert again == kg
        assert kg_to_document(again) == kg_to_document(kg)


def test_round_trip_keeps_negative_weights(tmp_path):
    kg = load_kg(fixture_path("conf_mini_ref.json"))
    save_kg(kg, tmp_path / "out.json")
    assert load_kg(tmp_path / "out.json").etypes["Author"].associations["chairsSession"] == -1


def test_triples_single_association():
    kg = KnowledgeGraph.build("t", [EtypeNode("A", "A", None, {"p": 1})], [PropertyDef("p", "p")])
    triples = flatten_triples(kg)
    assert [t.predicate for t in triples] == ["hasProperty", "label"]


def test_triples_entity_counts():
    kg = KnowledgeGraph.build(
        "t",
        [EtypeNode("A", "A"), EtypeNode("B", "B")],
        [PropertyDef("p", "p")],
        [EntityNode("e", "e", ["A", "B"], frozenset({"p"}))],
    )
    mine = [t for t in flatten_triples(kg) if t.subject == "e"]
    preds = sorted(t.predicate for t in mine)
    assert preds == ["label", "type", "type", "usesProperty"]


def test_triples_empty_and_sorted():
    assert flatten_triples(KnowledgeGraph("empty")) == []
    triples = flatten_triples(load_kg(fixture_path("conf_mini_cand.json")))
    assert triples == sorted(triples)
    assert Triple("A", "hasProperty", "p", -1).weight == -1


def test_alignment_round_trip(tmp_path):
    result = AlignmentResult("r", "c", [AlignedPair("A", "B", "etype", 0.75, True, {"simH": 0.5})])
    save_alignment(result, tmp_path / "a.json")
    assert load_alignment(tmp_path / "a.json") == result


TURTLE = """
@prefix : <http://example.org/conf#> .
@prefix owl: <http://www.w3.org/2002/07/owl#> .
@prefix rdfs: <http://www.w3.org/2000/01/rdf-schema#> .

:Document a owl:Class ; rdfs:label "Document"@en .
:Paper a owl:Class ;
    rdfs:subClassOf :Document .
:title a owl:DatatypeProperty ; rdfs:domain :Paper .
:hasAuthor a owl:ObjectProperty ; rdfs:domain :Paper , :Document .
:p1 a :Paper ; :title "On things" .
"""


def test_turtle_subset(tmp_path):
    kg = load_turtle_subset(write(tmp_path, "conf.ttl", TURTLE))
    assert set(kg.etypes) == {"Document", "Paper"}
    assert kg.etypes["Paper"].parent == "Document"
    assert kg.etypes["Paper"].associations == {"title": 1, "hasAuthor": 1}
    assert kg.etypes["Document"].associations == {"hasAuthor": 1}
    assert kg.entities["p1"].etypes == ["Paper"]
    assert kg.entities["p1"].properties == {"title"}


def test_turtle_single_class(tmp_path):
    text = "@prefix owl: <http://www.w3.org/2002/07/owl#> .\n@prefix : <http://x/#> .\n:Paper a owl:Class .\n"
    kg = load_turtle_subset(write(tmp_path, "one.ttl", text))
    assert list(kg.etypes) == ["Paper"]


def test_turtle_blank_node_rejected(tmp_path):
    text = "@prefix : <http://x/#> .\n:a :b [ :c :d ] .\n"
    with pytest.raises(UnsupportedFeatureError) as err:
        load_turtle_subset(write(tmp_path, "blank.ttl", text))
    assert err.value.line == 2


def test_turtle_collection_rejected(tmp_path):
    text = "@prefix : <http://x/#> .\n:a :b ( :c :d ) .\n"
    with pytest.raises(UnsupportedFeatureError):
        load_turtle_subset(write(tmp_path, "coll.ttl", text))
