"""Single-hidden-layer sigmoid network trained by full-batch gradient descent on logistic loss."""

from __future__ import annotations

import numpy as np

from kae.ml.gbdt import sigmoid


class MLP:
    def __init__(self, hidden: int = 16, learning_rate: float = 0.05, epochs: int = 500, seed: int = 0):
        self.hidden = hidden
        self.learning_rate = learning_rate
        self.epochs = epochs
        self.seed = seed
        self.W1 = self.b1 = self.W2 = None
        self.b2 = 0.0

    def init_weights(self, n_features: int) -> None:
        rng = np.random.default_rng(self.seed)
        self.W1 = rng.uniform(-0.5, 0.5, size=(n_features, self.hidden))
        self.b1 = rng.uniform(-0.5, 0.5, size=self.hidden)
        self.W2 = rng.uniform(-0.5, 0.5, size=self.hidden)
        self.b2 = float(rng.uniform(-0.5, 0.5))

    def _forward(self, X):
        a1 = sigmoid(X @ self.W1 + self.b1)
        return a1, sigmoid(a1 @ self.W2 + self.b2)

    def fit(self, X: np.ndarray, y: np.ndarray) -> MLP:
        X = np.asarray(X, dtype=np.float64)
        y = np.asarray(y, dtype=np.float64)
        self.init_weights(X.shape[1])
        for _ in range(self.epochs):
            a1, out = self._forward(X)
            # summed (not averaged) logistic-loss gradient
            d2 = out - y
            d1 = np.outer(d2, self.W2) * a1 * (1.0 - a1)
            self.W2 -= self.learning_rate * (a1.T @ d2)
            self.b2 -= self.learning_rate * float(d2.sum())
            self.W1 -= self.learning_rate * (X.T @ d1)
            self.b1 -= self.learning_rate * d1.sum(axis=0)
        return self

    def predict_proba(self, X: np.ndarray) -> np.ndarray:
        return self._forward(np.asarray(X, dtype=np.float64))[1]
