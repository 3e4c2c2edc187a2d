import itertools
import json
import math
from pathlib import Path

import pytest

from kae.bundled import fixture_path
from kae.errors import ConfigError
from kae.ingest import load_kg
from kae.model import EntityNode, EtypeNode, KnowledgeGraph, PropertyDef, build_context
from kae.specificity import (
    build_specificity_table,
    entropy_of_counts,
    horizontal_specificity,
    info_entropy,
    informational_specificity,
    vertical_specificity,
)

import oracles

GOLDEN = Path(__file__).parent / "golden" / "conf_mini_ref_specificity.csv"


def kg_with(k_p, total=3, extra=None):
    """Etypes E0..E{total-1}; property p is associated with the first k_p of them."""
    etypes = [EtypeNode(f"E{i}", f"E{i}", None, {"p": 1} if i < k_p else {}) for i in range(total)]
    if extra:
        etypes[-1].associations.update(extra)
    return KnowledgeGraph.build("k", etypes, [PropertyDef("p", "p"), PropertyDef("q", "q")])


def test_hs_examples():
    ctx = build_context(kg_with(1))
    assert horizontal_specificity(ctx, "E0", "p", 0.5) == 1.0
    ctx = build_context(kg_with(3))
    assert horizontal_specificity(ctx, "E0", "p", 0.5) == pytest.approx(math.exp(-1), abs=1e-12)
    assert horizontal_specificity(ctx, "E0", "q", 0.5) == 0.0


def test_hs_lambda_range():
    ctx = build_context(kg_with(1))
    with pytest.raises(ConfigError):
        horizontal_specificity(ctx, "E0", "p", 0.0)


def layered_kg(weight):
    # Root -> Mid -> Leaf; p describes Mid and Leaf (layers 0.5 and 1.0)
    return KnowledgeGraph.build(
        "l",
        [
            EtypeNode("Root", "Root", None, {"r": 1, "p": weight}),
            EtypeNode("Mid", "Mid", "Root", {"p": 1}),
            EtypeNode("Leaf", "Leaf", "Mid", {"p": 1}),
        ],
        [PropertyDef("p", "p"), PropertyDef("r", "r")],
    )


def test_vs_examples():
    ctx = build_context(layered_kg(-1))
    assert vertical_specificity(ctx, "Root", "r") == 0.0
    assert vertical_specificity(ctx, "Mid", "p") == 0.5
    assert vertical_specificity(ctx, "Root", "p") == -0.5


def test_entropy_examples():
    assert entropy_of_counts([5]) == 0.0
    assert entropy_of_counts([1, 1]) == pytest.approx(math.log(2), abs=1e-12)
    assert entropy_of_counts([3, 1]) == pytest.approx((3 * math.log(4 / 3) + math.log(4)) / 4, abs=1e-12)
    assert entropy_of_counts([3, 1]) == pytest.approx(0.562335, abs=1e-6)
    assert entropy_of_counts([]) == 0.0
    assert entropy_of_counts([0, 0]) == 0.0


def test_is_examples():
    ctx = build_context(kg_with(1))
    assert informational_specificity(ctx, "E0", "p") == pytest.approx(math.log(3) - math.log(2), abs=1e-12)
    ctx = build_context(kg_with(3))
    assert informational_specificity(ctx, "E0", "p") == pytest.approx(info_entropy(ctx, ctx.etype_ids))
    assert informational_specificity(ctx, "E0", "q") == 0.0


def test_one_etype_table():
    kg = KnowledgeGraph.build("one", [EtypeNode("A", "A", None, {"p": 1})], [PropertyDef("p", "p")])
    table = build_specificity_table(build_context(kg), 0.5)
    assert (table.hs("A", "p"), table.vs("A", "p"), table.is_("A", "p")) == (1.0, 0.0, 1.0)


def test_all_zero_weights_give_empty_table():
    kg = KnowledgeGraph.build("z", [EtypeNode("A", "A")], [PropertyDef("p", "p")])
    table = build_specificity_table(build_context(kg))
    assert table.rows() == []
    assert table.hs("A", "p") == 0.0


def test_golden_csv_matches_oracle_and_package():
    golden = GOLDEN.read_text(encoding="utf-8")
    doc = json.loads(fixture_path("conf_mini_ref.json").read_text(encoding="utf-8"))
    assert oracles.specificity_csv(doc) == golden
    table = build_specificity_table(build_context(load_kg(fixture_path("conf_mini_ref.json"))))
    assert table.to_csv() == golden


def test_value_ranges_and_signs():
    for name in ("conf_mini_ref.json", "conf_mini_cand.json", "uni_mini_ref.json"):
        kg = load_kg(fixture_path(name))
        table = build_specificity_table(build_context(kg, count_entities=bool(kg.entities)))
        for e, p, hs, vs, _, isn in table.rows():
            w = kg.etypes[e].associations[p]
            assert -1.0 <= hs <= 1.0 and -1.0 <= vs <= 1.0 and -1.0 <= isn <= 1.0
            assert hs * w > 0
            assert vs * w >= 0


def test_entity_counts_feed_entropy():
    kg = kg_with(1, total=2)
    kg.entities["a"] = EntityNode("a", "a", ["E0"], frozenset())
    kg.entities["b"] = EntityNode("b", "b", ["E1"], frozenset())
    kg.entities["c"] = EntityNode("c", "c", ["E1"], frozenset())
    ctx = build_context(kg, count_entities=True)
    expect = oracles.entropy_terms([1, 2]) - oracles.entropy_terms([2])
    assert informational_specificity(ctx, "E0", "p") == pytest.approx(expect, abs=1e-12)


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_entropy_bounded_by_log_size(n):
    for counts in itertools.product(range(1, 4), repeat=n):
        h = entropy_of_counts(counts)
        assert 0.0 <= h <= math.log(n) + 1e-12
