"""Label normalization and string/language similarity metrics.

Every metric returns a value in [0, 1] and is symmetric in its arguments.
"""

from __future__ import annotations

import re
import unicodedata
from collections import Counter
from dataclasses import dataclass
from functools import lru_cache
from importlib import resources
from pathlib import Path

import numpy as np
from rapidfuzz.distance import LCSseq, Levenshtein

from kae.errors import ParseError, StructuralError

_CAMEL_RE = re.compile(r"(?<=[a-z0-9])(?=[A-Z])|(?<=[A-Z])(?=[A-Z][a-z])")
_SPLIT_RE = re.compile(r"[^A-Za-z0-9]+")

# (suffix, replacement); a None replacement keeps the token whole (class, thesis, status)
_SUFFIX_RULES = (
    ("ies", "y"), ("sses", "ss"), ("ss", None), ("is", None), ("us", None),
    ("es", ""), ("s", ""), ("ing", ""), ("ed", ""),
)
_MIN_STEM = 3


def _data_path(name: str) -> Path:
    return Path(str(resources.files("kae") / "data" / name))


def read_stopwords(path: str | Path) -> frozenset[str]:
    words = Path(path).read_text(encoding="utf-8").split()
    return frozenset(w.strip().lower() for w in words if w.strip())


@lru_cache(maxsize=1)
def default_stopwords() -> frozenset[str]:
    return read_stopwords(_data_path("stopwords.txt"))


@dataclass(frozen=True)
class NormalizedLabel:
    original: str
    tokens: tuple[str, ...]

    @property
    def text(self) -> str:
        return " ".join(self.tokens)


def _ascii_fold(s: str) -> str:
    return unicodedata.normalize("NFKD", s).encode("ascii", "ignore").decode("ascii")


def _lemma_step(token: str) -> str:
    for suffix, repl in _SUFFIX_RULES:
        if token.endswith(suffix):
            if repl is None:
                return token
            stem = token[: -len(suffix)]
            if len(stem) >= _MIN_STEM:
                return stem + repl
    return token


def lemmatize(token: str) -> str:
    """Suffix stripping iterated to a fixed point (keeps normalization idempotent)."""
    while True:
        nxt = _lemma_step(token)
        if nxt == token:
            return token
        token = nxt


def segment(raw: str) -> list[str]:
    words = []
    for chunk in _SPLIT_RE.split(_ascii_fold(raw)):
        words.extend(w for w in _CAMEL_RE.split(chunk) if w)
    return [w.lower() for w in words]


def normalize_label(raw: str, stopwords: frozenset[str] | None = None) -> NormalizedLabel:
    stop = default_stopwords() if stopwords is None else stopwords
    tokens = []
    for word in segment(raw):
        if word in stop:
            continue
        lemma = lemmatize(word)
        if lemma and lemma not in stop:
            tokens.append(lemma)
    return NormalizedLabel(raw, tuple(tokens))


def _as_label(x: str | NormalizedLabel, stopwords: frozenset[str] | None) -> NormalizedLabel:
    return x if isinstance(x, NormalizedLabel) else normalize_label(x, stopwords)


def _trigrams(s: str, n: int = 3) -> Counter:
    if len(s) < n:
        s = s.ljust(n, "#")
    return Counter(s[i : i + n] for i in range(len(s) - n + 1))


def ngram_sim(a: str | NormalizedLabel, b: str | NormalizedLabel, stopwords=None) -> float:
    """Dice coefficient over character-trigram multisets of the normalized labels."""
    sa, sb = _as_label(a, stopwords).text, _as_label(b, stopwords).text
    if not sa and not sb:
        return 1.0
    if not sa or not sb:
        return 0.0
    ga, gb = _trigrams(sa), _trigrams(sb)
    shared = sum((ga & gb).values())
    return 2.0 * shared / (sum(ga.values()) + sum(gb.values()))


def lcs_sim(a: str, b: str) -> float:
    if not a and not b:
        return 1.0
    return LCSseq.similarity(a, b) / max(len(a), len(b))


def lev_sim(a: str, b: str) -> float:
    if not a and not b:
        return 1.0
    return 1.0 - Levenshtein.distance(a, b) / max(len(a), len(b))


class EmbeddingStore:
    """Read-only token -> vector map (word2vec text format)."""

    def __init__(self, vectors: dict[str, np.ndarray] | None = None):
        vectors = vectors or {}
        dims = {len(v) for v in vectors.values()}
        if len(dims) > 1:
            raise StructuralError(f"embedding vectors have mixed dimensions {sorted(dims)}")
        self.dim = dims.pop() if dims else 0
        self._vectors = {}
        for tok, vec in vectors.items():
            arr = np.asarray(vec, dtype=np.float64)
            if not np.any(arr):
                raise StructuralError(f"embedding for {tok!r} is the zero vector")
            arr.setflags(write=False)
            self._vectors[tok] = arr

    def __contains__(self, token: str) -> bool:
        return token in self._vectors

    def __len__(self) -> int:
        return len(self._vectors)

    def get(self, token: str) -> np.ndarray | None:
        return self._vectors.get(token)

    @classmethod
    def load(cls, path: str | Path) -> EmbeddingStore:
        vectors: dict[str, np.ndarray] = {}
        with open(path, encoding="utf-8") as fh:
            for lineno, line in enumerate(fh, start=1):
                parts = line.split()
                if not parts:
                    continue
                if lineno == 1 and len(parts) == 2 and all(p.isdigit() for p in parts):
                    continue  # "<count> <dim>" header
                try:
                    vec = np.array([float(x) for x in parts[1:]])
                except ValueError:
                    raise ParseError(f"non-numeric embedding component in {path}", lineno) from None
                if vec.size == 0:
                    raise ParseError(f"embedding line without components in {path}", lineno)
                vectors.setdefault(parts[0].lower(), vec)
        return cls(vectors)


def _mean_vector(label: NormalizedLabel, store: EmbeddingStore) -> np.ndarray | None:
    vecs = [store.get(t) for t in label.tokens if t in store]
    if not vecs:
        return None
    mean = np.mean(vecs, axis=0)
    return mean if np.any(mean) else None


def w2v_sim(a: NormalizedLabel, b: NormalizedLabel, store: EmbeddingStore) -> float:
    """Cosine of mean token vectors rescaled to [0, 1]; trigram fallback when out of vocabulary."""
    va, vb = _mean_vector(a, store), _mean_vector(b, store)
    if va is None or vb is None:
        return ngram_sim(a.original, b.original)
    cos = float(np.dot(va, vb) / (np.linalg.norm(va) * np.linalg.norm(vb)))
    return min(1.0, max(0.0, (cos + 1.0) / 2.0))


class TaxonomyStore:
    """Word taxonomy forest (child -> parent) for Wu-Palmer similarity."""

    def __init__(self, parents: dict[str, str] | None = None):
        self.parents = dict(parents or {})
        self.nodes = set(self.parents) | set(self.parents.values())
        self._depth: dict[str, int] = {}
        for node in sorted(self.nodes):
            self._path(node)

    def _path(self, node: str) -> list[str]:
        """node, parent, ..., root."""
        path, seen = [node], {node}
        while path[-1] in self.parents:
            nxt = self.parents[path[-1]]
            if nxt in seen:
                raise StructuralError(f"taxonomy cycle through {nxt!r}")
            path.append(nxt)
            seen.add(nxt)
        return path

    def __contains__(self, token: str) -> bool:
        return token in self.nodes

    def depth(self, token: str) -> int:
        if token not in self._depth:
            self._depth[token] = len(self._path(token))
        return self._depth[token]

    def lca(self, t1: str, t2: str) -> str | None:
        ancestors = set(self._path(t1))
        for node in self._path(t2):
            if node in ancestors:
                return node
        return None

    def wup(self, t1: str, t2: str) -> float:
        common = self.lca(t1, t2)
        if common is None:
            return 0.0
        return 2.0 * self.depth(common) / (self.depth(t1) + self.depth(t2))

    @classmethod
    def load(cls, path: str | Path) -> TaxonomyStore:
        parents = {}
        with open(path, encoding="utf-8") as fh:
            for lineno, line in enumerate(fh, start=1):
                line = line.rstrip("\n")
                if not line.strip() or line.startswith("#"):
                    continue
                child, sep, parent = line.partition("\t")
                if not sep or not child.strip() or not parent.strip():
                    raise ParseError(f"expected 'child<TAB>parent' in {path}", lineno)
                parents[child.strip().lower()] = parent.strip().lower()
        return cls(parents)


def wup_sim(a: NormalizedLabel, b: NormalizedLabel, tax: TaxonomyStore) -> float:
    best = None
    for t1 in a.tokens:
        if t1 not in tax:
            continue
        for t2 in b.tokens:
            if t2 in tax:
                s = tax.wup(t1, t2)
                best = s if best is None else max(best, s)
    if best is None:
        return lev_sim(a.original, b.original)
    return best


@lru_cache(maxsize=1)
def default_taxonomy() -> TaxonomyStore:
    return TaxonomyStore.load(_data_path("taxonomy.tsv"))


@lru_cache(maxsize=1)
def default_embeddings() -> EmbeddingStore:
    return EmbeddingStore.load(_data_path("vectors.txt"))


@dataclass(frozen=True)
class LexicalResources:
    """Stores shared by the matchers; defaults are the bundled mini resources."""

    embeddings: EmbeddingStore
    taxonomy: TaxonomyStore
    stopwords: frozenset[str]

    @classmethod
    def load(cls, embeddings=None, taxonomy=None, stopwords=None) -> LexicalResources:
        return cls(
            EmbeddingStore.load(embeddings) if embeddings else default_embeddings(),
            TaxonomyStore.load(taxonomy) if taxonomy else default_taxonomy(),
            read_stopwords(stopwords) if stopwords else default_stopwords(),
        )

    def normalize(self, raw: str) -> NormalizedLabel:
        return normalize_label(raw, self.stopwords)


LEXICAL_FEATURES = ("ngram", "lcs", "lev", "wup", "w2v")


def label_features(a: str, b: str, res: LexicalResources) -> dict[str, float]:
    """The five lexical features of an etype-label pair (lcs/lev on normalized text)."""
    na, nb = res.normalize(a), res.normalize(b)
    return {
        "ngram": ngram_sim(na, nb),
        "lcs": lcs_sim(na.text, nb.text),
        "lev": lev_sim(na.text, nb.text),
        "wup": wup_sim(na, nb, res.taxonomy),
        "w2v": w2v_sim(na, nb, res.embeddings),
    }
