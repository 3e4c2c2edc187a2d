"""Seeded synthetic classification sets shared by the ML tests."""

import numpy as np


def separable(n=200, seed=0, margin=0.05):
    """Uniform points in the unit square labelled by x0 + x1 > 1, with a gap around the line."""
    rng = np.random.default_rng(seed)
    rows = []
    while len(rows) < n:
        x = rng.uniform(0.0, 1.0, size=2)
        if abs(x.sum() - 1.0) >= margin:
            rows.append(x)
    X = np.array(rows)
    return X, (X.sum(axis=1) > 1.0).astype(float)


def noisy(n=200, seed=1, flip=0.10):
    """Separable set with a seeded 10% of the training labels flipped, plus a clean held-out set."""
    X, y = separable(n, seed)
    rng = np.random.default_rng(seed + 1000)
    flipped = rng.choice(n, size=int(round(flip * n)), replace=False)
    y_noisy = y.copy()
    y_noisy[flipped] = 1.0 - y_noisy[flipped]
    X_test, y_test = separable(n, seed + 1)
    return X, y_noisy, X_test, y_test


def f1(pred, truth):
    tp = float(np.sum((pred == 1) & (truth == 1)))
    fp = float(np.sum((pred == 1) & (truth == 0)))
    fn = float(np.sum((pred == 0) & (truth == 1)))
    return 2 * tp / (2 * tp + fp + fn) if tp else 0.0
