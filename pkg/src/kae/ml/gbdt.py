"""Gradient-boosted regression trees on logistic loss (second-order, exact greedy splits)."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np


def sigmoid(z):
    return 0.5 * (1.0 + np.tanh(0.5 * np.asarray(z, dtype=np.float64)))


@dataclass
class Tree:
    """Flat binary tree; a node is a leaf when ``feature[i] < 0``. Rows with x < threshold go left."""

    feature: np.ndarray
    threshold: np.ndarray
    left: np.ndarray
    right: np.ndarray
    value: np.ndarray

    def predict(self, X: np.ndarray) -> np.ndarray:
        node = np.zeros(len(X), dtype=np.int64)
        active = self.feature[node] >= 0
        while active.any():
            idx = np.nonzero(active)[0]
            n = node[idx]
            go_left = X[idx, self.feature[n]] < self.threshold[n]
            node[idx] = np.where(go_left, self.left[n], self.right[n])
            active = self.feature[node] >= 0
        return self.value[node]


class _Builder:
    def __init__(self, max_depth, reg_lambda, min_child_weight, learning_rate):
        self.max_depth = max_depth
        self.reg_lambda = reg_lambda
        self.min_child_weight = min_child_weight
        self.learning_rate = learning_rate
        self.nodes: list[list] = []

    def _new(self) -> int:
        self.nodes.append([-1, 0.0, -1, -1, 0.0])
        return len(self.nodes) - 1

    def _leaf_value(self, G, H):
        return -self.learning_rate * G / (H + self.reg_lambda)

    def _best_split(self, X, g, h):
        G, H = g.sum(), h.sum()
        parent = G * G / (H + self.reg_lambda)
        best_gain, best = 1e-12, None
        for f in range(X.shape[1]):
            order = np.argsort(X[:, f], kind="stable")
            xs = X[order, f]
            gl = np.cumsum(g[order])[:-1]
            hl = np.cumsum(h[order])[:-1]
            valid = (xs[:-1] < xs[1:]) & (hl >= self.min_child_weight) & (H - hl >= self.min_child_weight)
            if not valid.any():
                continue
            gr, hr = G - gl, H - hl
            gain = gl * gl / (hl + self.reg_lambda) + gr * gr / (hr + self.reg_lambda) - parent
            gain = np.where(valid, gain, -np.inf)
            i = int(np.argmax(gain))  # first maximum: lowest threshold wins ties
            if gain[i] > best_gain:
                lo, hi = xs[i], xs[i + 1]
                thr = lo + (hi - lo) / 2.0
                if not lo < thr <= hi:
                    thr = hi
                best_gain, best = gain[i], (f, thr)
        return best

    def build(self, X, g, h, depth=0) -> int:
        node = self._new()
        split = self._best_split(X, g, h) if depth < self.max_depth and len(g) > 1 else None
        if split is None:
            self.nodes[node][4] = self._leaf_value(g.sum(), h.sum())
            return node
        f, thr = split
        mask = X[:, f] < thr
        left = self.build(X[mask], g[mask], h[mask], depth + 1)
        right = self.build(X[~mask], g[~mask], h[~mask], depth + 1)
        self.nodes[node][:4] = [f, thr, left, right]
        return node

    def tree(self) -> Tree:
        cols = list(zip(*self.nodes))
        return Tree(
            np.array(cols[0], dtype=np.int32),
            np.array(cols[1], dtype=np.float64),
            np.array(cols[2], dtype=np.int32),
            np.array(cols[3], dtype=np.int32),
            np.array(cols[4], dtype=np.float64),
        )


class GradientBoostedTrees:
    def __init__(
        self,
        n_trees: int = 100,
        max_depth: int = 3,
        learning_rate: float = 0.1,
        reg_lambda: float = 1.0,
        min_child_weight: float = 1e-6,
        base_score: float = 0.0,
    ):
        self.n_trees = n_trees
        self.max_depth = max_depth
        self.learning_rate = learning_rate
        self.reg_lambda = reg_lambda
        self.min_child_weight = min_child_weight
        # initial logit; 0 means a zero-tree model predicts 0.5
        self.base_score = base_score
        self.trees: list[Tree] = []

    def fit(self, X: np.ndarray, y: np.ndarray) -> GradientBoostedTrees:
        X = np.asarray(X, dtype=np.float64)
        y = np.asarray(y, dtype=np.float64)
        margin = np.full(len(y), self.base_score)
        self.trees = []
        for _ in range(self.n_trees):
            p = sigmoid(margin)
            g, h = p - y, p * (1.0 - p)
            builder = _Builder(self.max_depth, self.reg_lambda, self.min_child_weight, self.learning_rate)
            builder.build(X, g, h)
            tree = builder.tree()
            self.trees.append(tree)
            margin = margin + tree.predict(X)
        return self

    def decision_function(self, X: np.ndarray) -> np.ndarray:
        X = np.asarray(X, dtype=np.float64)
        margin = np.full(len(X), self.base_score)
        for tree in self.trees:
            margin = margin + tree.predict(X)
        return margin

    def predict_proba(self, X: np.ndarray) -> np.ndarray:
        return sigmoid(self.decision_function(X))
