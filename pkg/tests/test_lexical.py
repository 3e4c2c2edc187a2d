import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from kae.errors import StructuralError
from kae.lexical import (
    EmbeddingStore,
    LexicalResources,
    TaxonomyStore,
    default_taxonomy,
    lcs_sim,
    lemmatize,
    lev_sim,
    ngram_sim,
    normalize_label,
    w2v_sim,
    wup_sim,
)

import oracles

words = st.text(alphabet="abcdefghij", max_size=9)
labels = st.text(alphabet="abcdeXYZ _-", max_size=14)


@pytest.mark.parametrize(
    "raw, tokens",
    [("hasAuthorName", ("author", "name")), ("Paper", ("paper",)), ("the", ()),
     ("conference_papers", ("conference", "paper")), ("Café-Topics", ("cafe", "topic"))],
)
def test_normalize(raw, tokens):
    assert normalize_label(raw).tokens == tokens


@pytest.mark.parametrize(
    "word, lemma",
    [("papers", "paper"), ("categories", "category"), ("classes", "class"), ("class", "class"),
     ("thesis", "thesis"), ("status", "status"), ("reviewing", "review"), ("submitted", "submitt"),
     ("bus", "bus"), ("as", "as")],
)
def test_lemmatize(word, lemma):
    assert lemmatize(word) == lemma


@given(labels)
def test_normalize_idempotent(raw):
    once = normalize_label(raw)
    assert normalize_label(once.text).tokens == once.tokens


def test_ngram_examples():
    assert ngram_sim("paper", "paper") == 1.0
    assert ngram_sim("night", "nacht") == 0.0
    assert ngram_sim("chair", "chairman") == pytest.approx(2 * 3 / (3 + 6))
    assert ngram_sim("the", "paper") == 0.0
    assert ngram_sim("the", "of") == 1.0


def test_lcs_examples():
    assert lcs_sim("abc", "abc") == 1.0
    assert lcs_sim("paper", "par") == pytest.approx(0.6)
    assert lcs_sim("a", "") == 0.0
    assert lcs_sim("", "") == 1.0


def test_lev_examples():
    assert lev_sim("chair", "chairman") == pytest.approx(0.625)
    assert lev_sim("abc", "xyz") == 0.0
    assert lev_sim("", "") == 1.0


@given(words, words)
def test_lev_matches_dynamic_programming(a, b):
    expect = 1.0 if not a and not b else 1 - oracles.levenshtein(a, b) / max(len(a), len(b))
    assert lev_sim(a, b) == pytest.approx(expect, abs=1e-12)


@given(words, words)
def test_lcs_matches_dynamic_programming(a, b):
    expect = 1.0 if not a and not b else oracles.lcs_length(a, b) / max(len(a), len(b))
    assert lcs_sim(a, b) == pytest.approx(expect, abs=1e-12)


@given(words, words)
def test_ngram_matches_oracle(a, b):
    na, nb = normalize_label(a), normalize_label(b)
    assert ngram_sim(na, nb) == pytest.approx(oracles.trigram_dice(na.text, nb.text), abs=1e-12)


@settings(max_examples=60)
@given(labels, labels)
def test_metrics_symmetric_and_bounded(a, b):
    res = LexicalResources.load()
    na, nb = res.normalize(a), res.normalize(b)
    pairs = [
        (ngram_sim(na, nb), ngram_sim(nb, na)),
        (lcs_sim(a, b), lcs_sim(b, a)),
        (lev_sim(a, b), lev_sim(b, a)),
        (w2v_sim(na, nb, res.embeddings), w2v_sim(nb, na, res.embeddings)),
        (wup_sim(na, nb, res.taxonomy), wup_sim(nb, na, res.taxonomy)),
    ]
    for x, y in pairs:
        assert x == pytest.approx(y, abs=1e-12)
        assert 0.0 <= x <= 1.0


def test_w2v_examples():
    store = EmbeddingStore({"paper": np.array([1.0, 0.0]), "topic": np.array([0.0, 1.0])})
    n = normalize_label
    assert w2v_sim(n("paper"), n("Papers"), store) == pytest.approx(1.0)
    assert w2v_sim(n("paper"), n("topic"), store) == pytest.approx(0.5)
    assert w2v_sim(n("zebra"), n("zebra"), EmbeddingStore()) == 1.0


def test_embedding_loader(tmp_path):
    path = tmp_path / "v.txt"
    path.write_text("2 3\nPaper 1 0 0\ntopic 0 1 0\n", encoding="utf-8")
    store = EmbeddingStore.load(path)
    assert len(store) == 2 and store.dim == 3 and "paper" in store
    with pytest.raises(StructuralError):
        EmbeddingStore({"a": np.zeros(2)})
    with pytest.raises(StructuralError):
        EmbeddingStore({"a": np.ones(2), "b": np.ones(3)})


def test_wup_examples():
    tax = TaxonomyStore({"parent": "root", "left": "parent", "right": "parent"})
    n = normalize_label
    assert tax.depth("root") == 1 and tax.depth("left") == 3
    assert wup_sim(n("left"), n("left"), tax) == 1.0
    assert wup_sim(n("left"), n("right"), tax) == pytest.approx(2 * 2 / (3 + 3))
    assert wup_sim(n("alpha"), n("alpine"), tax) == pytest.approx(lev_sim("alpha", "alpine"))


def test_bundled_taxonomy_size_and_relations():
    tax = default_taxonomy()
    assert len(tax.nodes) == 60
    n = normalize_label
    assert wup_sim(n("chair"), n("chairman"), tax) > wup_sim(n("chair"), n("poster"), tax)


def test_bundled_embeddings_group_structure():
    store = LexicalResources.load().embeddings
    n = normalize_label
    assert w2v_sim(n("paper"), n("contribution"), store) > 0.9
    assert w2v_sim(n("person"), n("topic"), store) < 0.3
    assert not math.isnan(w2v_sim(n("author"), n("writer"), store))
