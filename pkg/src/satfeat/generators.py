"""Small CNF instance generators (random k-SAT, pigeonhole, graph colouring)."""

from __future__ import annotations

from itertools import combinations

import numpy as np

from .cnf import Cnf

FAMILIES = ("random-ksat", "pigeonhole", "graph-coloring")


def random_ksat(n: int, ratio: float = 4.2, k: int = 3, seed: int = 0) -> Cnf:
    """``floor(ratio * n)`` clauses of k distinct variables with random signs."""
    if k < 1 or n < k:
        raise ValueError(f"need 1 <= k <= n (k={k}, n={n})")
    if ratio <= 0:
        raise ValueError("ratio must be positive")
    rng = np.random.default_rng(seed)
    m = int(np.floor(ratio * n + 1e-9))
    clauses = []
    for _ in range(m):
        vs = rng.choice(n, size=k, replace=False) + 1
        signs = rng.integers(0, 2, size=k) * 2 - 1
        clauses.append(tuple(int(x) for x in vs * signs))
    return Cnf(n, tuple(clauses))


def pigeonhole(p: int) -> Cnf:
    """PHP(p+1, p): p+1 pigeons, p holes; unsatisfiable for every p >= 1."""
    if p < 1:
        raise ValueError("pigeonhole needs p >= 1")

    def var(i, j):  # pigeon i in hole j
        return i * p + j + 1

    clauses = [tuple(var(i, j) for j in range(p)) for i in range(p + 1)]
    for j in range(p):
        for a, b in combinations(range(p + 1), 2):
            clauses.append((-var(a, j), -var(b, j)))
    return Cnf((p + 1) * p, tuple(clauses))


def graph_coloring(n: int, p_edge: float = 0.3, k: int = 3, seed: int = 0) -> Cnf:
    """k-colouring of a G(n, p_edge) random graph."""
    if n < 1 or k < 1 or not 0.0 <= p_edge <= 1.0:
        raise ValueError("graph-coloring needs n >= 1, k >= 1, 0 <= p_edge <= 1")
    rng = np.random.default_rng(seed)

    def var(v, c):
        return v * k + c + 1

    clauses = []
    for v in range(n):
        clauses.append(tuple(var(v, c) for c in range(k)))
        for a, b in combinations(range(k), 2):
            clauses.append((-var(v, a), -var(v, b)))
    for u, v in combinations(range(n), 2):
        if rng.random() < p_edge:
            for c in range(k):
                clauses.append((-var(u, c), -var(v, c)))
    return Cnf(n * k, tuple(clauses))


def generate(family: str, seed: int = 0, **params) -> Cnf:
    if family == "random-ksat":
        return random_ksat(params.get("n", 100), params.get("ratio", 4.2), params.get("k", 3), seed)
    if family == "pigeonhole":
        return pigeonhole(params.get("p", 5))
    if family == "graph-coloring":
        return graph_coloring(params.get("n", 20), params.get("p_edge", 0.3), params.get("k", 3), seed)
    raise ValueError(f"unknown family {family!r}; expected one of {', '.join(FAMILIES)}")
