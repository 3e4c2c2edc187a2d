import pytest

from kae.errors import ConfigError
from kae.lexical import LexicalResources
from kae.model import KnowledgeGraph, PropertyDef
from kae.property_matcher import greedy_one_to_one, label_score, match_properties

from conftest import ALL_PAIRS, load_pair


def props_kg(name, labels):
    return KnowledgeGraph.build(name, [], [PropertyDef(pid, label) for pid, label in labels])


def test_identical_labels_match_with_score_one():
    pm = match_properties(props_kg("a", [("t", "title")]), props_kg("b", [("u", "title")]))
    assert [(m.ref, m.cand, m.score) for m in pm] == [("t", "u", 1.0)]


def test_unrelated_labels_do_not_match():
    res = LexicalResources.load()
    assert label_score(res.normalize("name"), res.normalize("settlement"), res) < 0.75
    assert match_properties(props_kg("a", [("n", "name")]), props_kg("b", [("s", "settlement")])) == []


def test_tie_goes_to_lexicographically_first_ref():
    ref = props_kg("a", [("zeta", "title"), ("alpha", "title")])
    cand = props_kg("b", [("t", "title")])
    assert [(m.ref, m.cand) for m in match_properties(ref, cand)] == [("alpha", "t")]


def test_greedy_is_one_to_one_and_sorted():
    scored = [("a", "x", 0.9), ("a", "y", 0.95), ("b", "y", 0.95), ("b", "x", 0.8)]
    assert greedy_one_to_one(scored) == [("a", "y", 0.95), ("b", "x", 0.8)]


def test_threshold_range():
    with pytest.raises(ConfigError):
        match_properties(props_kg("a", []), props_kg("b", []), threshold=0.0)


@pytest.mark.parametrize("pair", ALL_PAIRS)
def test_one_to_one_sorted_and_swap_symmetric(pair):
    ref, cand, _ = load_pair(pair)
    pm = match_properties(ref, cand)
    assert len({m.ref for m in pm}) == len(pm) == len({m.cand for m in pm})
    assert [m.score for m in pm] == sorted((m.score for m in pm), reverse=True)
    swapped = match_properties(cand, ref)
    assert {(m.cand, m.ref) for m in swapped} == {(m.ref, m.cand) for m in pm}


def test_jobs_do_not_change_result():
    ref, cand, _ = load_pair("conf_mini")
    assert match_properties(ref, cand, jobs=4) == match_properties(ref, cand, jobs=1)


@pytest.mark.parametrize("threshold", [0.5, 0.6, 0.75, 0.9, 1.0])
def test_threshold_sweep_is_monotone(threshold):
    ref, cand, _ = load_pair("biblio_mini")
    pm = match_properties(ref, cand, threshold=threshold)
    assert all(m.score >= threshold for m in pm)
    looser = match_properties(ref, cand, threshold=threshold - 0.05)
    assert len(looser) >= len(pm)
