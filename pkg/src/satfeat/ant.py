"""Community/scale-free structure features: power-law exponent, modularity, fractal dimension."""

from __future__ import annotations

import math
from collections import deque
from dataclasses import dataclass

import numpy as np
from scipy import optimize, special

from .cnf import Cnf, occurrence_counts
from .graphs import WeightedGraph, build_cvig, build_vig

DEGENERATE_ALPHA = 1.0e6
MAX_XMIN_CANDIDATES = 50
FRACTAL_R_MAX = 16


@dataclass(frozen=True)
class PowerlawFit:
    alpha: float
    xmin: int
    n_tail: int
    ks: float = 0.0
    degenerate: bool = False


def _discrete_mle(tail: np.ndarray, xmin: int) -> float:
    """Exact discrete power-law MLE for data >= xmin (Hurwitz zeta normaliser)."""
    n = tail.size
    sum_log = float(np.log(tail).sum())
    # closed-form continuity approximation seeds the bracket
    approx = 1.0 + n / float(np.log(tail / (xmin - 0.5)).sum())

    def nll(a):
        return a * sum_log + n * math.log(special.zeta(a, xmin))

    hi = max(approx * 2.0, 6.0)
    res = optimize.minimize_scalar(nll, bounds=(1.0 + 1e-6, hi), method="bounded",
                                   options={"xatol": 1e-8})
    return float(res.x)


def _ks_distance(tail: np.ndarray, xmin: int, alpha: float) -> float:
    values, counts = np.unique(tail, return_counts=True)
    emp = np.cumsum(counts) / tail.size
    model = 1.0 - special.zeta(alpha, values + 1.0) / special.zeta(alpha, xmin)
    return float(np.abs(emp - model).max())


def powerlaw_alpha(counts) -> PowerlawFit:
    """Fit ``P(k) ~ k**-alpha`` to positive integer data.

    ``xmin`` is chosen among the smallest distinct values by minimum
    Kolmogorov-Smirnov distance.
    """
    x = np.asarray(counts, dtype=float)
    x = x[x >= 1]
    if x.size == 0 or x.min() == x.max():
        xmin = int(x[0]) if x.size else 0
        return PowerlawFit(DEGENERATE_ALPHA, xmin, int(x.size), degenerate=True)
    candidates = np.unique(x)[:-1][:MAX_XMIN_CANDIDATES]
    best = None
    for xmin in candidates:
        tail = x[x >= xmin]
        if np.unique(tail).size < 2:
            continue
        alpha = _discrete_mle(tail, int(xmin))
        ks = _ks_distance(tail, int(xmin), alpha)
        if best is None or ks < best.ks:
            best = PowerlawFit(alpha, int(xmin), int(tail.size), ks)
    return best


@dataclass(frozen=True)
class Partition:
    community: np.ndarray
    modularity: float
    degenerate: bool = False

    @property
    def num_communities(self) -> int:
        return int(self.community.max()) + 1 if self.community.size else 0


def modularity(g: WeightedGraph, community) -> float:
    """Weighted modularity ``sum_c (e_c / m - (a_c / 2m)**2)``."""
    community = np.asarray(community)
    u, v = g.endpoints
    w = g.weights()
    m = w.sum()
    if m == 0:
        return 0.0
    k = community.max() + 1
    internal = np.bincount(community[u][community[u] == community[v]],
                           w[community[u] == community[v]], k)
    strength = np.bincount(community, g.weighted_degrees(), k)
    return float((internal / m - (strength / (2 * m)) ** 2).sum())


def _louvain_level(adj, self_loops, strength, m2, order):
    """One local-moving phase. Returns community label per node (unnormalised)."""
    n = len(adj)
    comm = list(range(n))
    tot = list(strength)
    improved = False
    moved = True
    while moved:
        moved = False
        for i in order:
            ci = comm[i]
            ki = strength[i]
            links: dict[int, float] = {}
            for j, w in adj[i].items():
                cj = comm[j]
                links[cj] = links.get(cj, 0.0) + w
            tot[ci] -= ki
            best_c = ci
            best_gain = links.get(ci, 0.0) - tot[ci] * ki / m2
            for c, k_in in links.items():
                gain = k_in - tot[c] * ki / m2
                if gain > best_gain + 1e-12:
                    best_gain, best_c = gain, c
            tot[best_c] += ki
            if best_c != ci:
                comm[i] = best_c
                moved = improved = True
    return comm, improved


def louvain(g: WeightedGraph, seed: int = 0) -> Partition:
    """Two-phase Louvain modularity maximisation on an undirected weighted graph."""
    n = g.num_vertices
    if g.num_edges == 0 or g.total_weight() == 0:
        return Partition(np.arange(n), 0.0, degenerate=True)
    rng = np.random.default_rng(seed)
    adj: list[dict[int, float]] = [{} for _ in range(n)]
    for (u, v), w in g.edges.items():
        adj[u][v] = adj[u].get(v, 0.0) + w
        adj[v][u] = adj[v].get(u, 0.0) + w
    self_loops = [0.0] * n
    m2 = 2.0 * g.total_weight()
    membership = np.arange(n)
    while True:
        strength = [2 * self_loops[i] + sum(adj[i].values()) for i in range(len(adj))]
        order = rng.permutation(len(adj)).tolist()
        comm, improved = _louvain_level(adj, self_loops, strength, m2, order)
        if not improved:
            break
        labels = {c: k for k, c in enumerate(sorted(set(comm)))}
        comm = [labels[c] for c in comm]
        membership = np.asarray(comm)[membership]
        # aggregate communities into super-nodes
        nc = len(labels)
        new_adj: list[dict[int, float]] = [{} for _ in range(nc)]
        new_loops = [0.0] * nc
        for i, nbrs in enumerate(adj):
            ci = comm[i]
            new_loops[ci] += self_loops[i]
            for j, w in nbrs.items():
                cj = comm[j]
                if ci == cj:
                    new_loops[ci] += w / 2.0  # each internal edge is seen from both ends
                else:
                    new_adj[ci][cj] = new_adj[ci].get(cj, 0.0) + w
        adj, self_loops = new_adj, new_loops
        if nc == 1:
            break
    labels = {c: k for k, c in enumerate(dict.fromkeys(membership.tolist()))}
    membership = np.array([labels[c] for c in membership.tolist()], dtype=np.int64)
    return Partition(membership, modularity(g, membership))


def louvain_modularity(g: WeightedGraph, seed: int = 0) -> Partition:
    return louvain(g, seed)


def _ball(nbrs, centre, radius, dist):
    """Vertices within ``radius`` hops of ``centre`` with their distances; ``dist`` is scratch (-1)."""
    seen = [centre]
    dist[centre] = 0
    queue = deque([centre])
    while queue:
        x = queue.popleft()
        d = dist[x]
        if d == radius:
            continue
        for y in nbrs[x]:
            if dist[y] < 0:
                dist[y] = d + 1
                seen.append(y)
                queue.append(y)
    return seen


def _greedy_cover(nbrs, order, r) -> int:
    n = len(nbrs)
    covered = bytearray(n)
    blocked = bytearray(n)  # within r hops of a covered vertex
    dist = [-1] * n
    boxes = 0
    # non-overlapping boxes first, then mop up what is left
    for centre in order:
        if blocked[centre]:
            continue
        boxes += 1
        for x in _ball(nbrs, centre, 2 * r, dist):
            if dist[x] <= r:
                covered[x] = 1
            blocked[x] = 1
            dist[x] = -1
    for centre in order:
        if covered[centre]:
            continue
        boxes += 1
        for x in _ball(nbrs, centre, r, dist):
            covered[x] = 1
            dist[x] = -1
    return boxes


def box_counts(g: WeightedGraph, r_max: int = FRACTAL_R_MAX) -> list[tuple[int, int]]:
    """``(r, N(r))`` by degree-ordered burning with hop radius r.

    Centres are taken by decreasing degree (ties: lowest index), preferring
    ones whose box does not overlap earlier boxes. A radius r-1 cover is
    also a radius r cover, so N(r) is kept non-increasing. Stops after the
    first r whose box count equals the number of components.
    """
    n = g.num_vertices
    if n == 0:
        return []
    nbrs = g.neighbors()
    deg = np.array([len(x) for x in nbrs])
    order = np.lexsort((np.arange(n), -deg)).tolist()
    components = _count_components(nbrs)
    points = []
    prev = n
    for r in range(1, r_max + 1):
        boxes = min(prev, _greedy_cover(nbrs, order, r))
        points.append((r, boxes))
        prev = boxes
        if boxes == components:
            break
    return points


def _count_components(nbrs) -> int:
    n = len(nbrs)
    seen = bytearray(n)
    count = 0
    for s in range(n):
        if seen[s]:
            continue
        count += 1
        seen[s] = 1
        stack = [s]
        while stack:
            x = stack.pop()
            for y in nbrs[x]:
                if not seen[y]:
                    seen[y] = 1
                    stack.append(y)
    return count


def fractal_dimension(g: WeightedGraph, r_max: int = FRACTAL_R_MAX) -> tuple[float, bool]:
    """Box-covering dimension ``d`` from ``N(r) ~ r**-d``; returns ``(d, degenerate)``."""
    points = box_counts(g, r_max)
    if len(points) < 2:
        return 0.0, True
    r, nr = np.array(points, dtype=float).T
    slope = np.polyfit(np.log(r), np.log(nr), 1)[0]
    return float(-slope), False


def ant_feature_vector(cnf: Cnf, seed: int = 0) -> list[float]:
    """``[alpha, modularity, fractal_dim_vig, fractal_dim_cvig]``."""
    pos, neg = occurrence_counts(cnf)
    occ = pos + neg
    fit = powerlaw_alpha(occ[occ > 0])
    vig = build_vig(cnf)
    q = louvain(vig, seed).modularity
    d_vig, _ = fractal_dimension(vig)
    d_cvig, _ = fractal_dimension(build_cvig(cnf))
    return [fit.alpha, q, d_vig, d_cvig]
