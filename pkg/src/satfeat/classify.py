"""Leave-one-out 1-nearest-neighbour accuracy, a sanity check on feature usefulness."""

from __future__ import annotations

import numpy as np


def standardize(X) -> np.ndarray:
    X = np.asarray(X, dtype=float)
    mu = X.mean(axis=0)
    sd = X.std(axis=0)
    sd[sd == 0] = 1.0
    return (X - mu) / sd


def loo_1nn_accuracy(X, y) -> float:
    """Fraction of rows whose nearest other row (Euclidean, z-scored) shares the label."""
    Z = standardize(X)
    y = np.asarray(y)
    if len(y) < 2:
        raise ValueError("need at least two samples")
    d = ((Z[:, None, :] - Z[None, :, :]) ** 2).sum(axis=-1)
    np.fill_diagonal(d, np.inf)
    return float((y[d.argmin(axis=1)] == y).mean())
