import itertools
import random

import networkx as nx
import numpy as np
import pytest
from scipy import stats

from oracles import E1, random_cnf
from satfeat.ant import (
    DEGENERATE_ALPHA, ant_feature_vector, box_counts, fractal_dimension, louvain, modularity,
    powerlaw_alpha,
)
from satfeat.graphs import WeightedGraph, build_vig


def graph(n, edges, w=1.0):
    return WeightedGraph(n, {(min(u, v), max(u, v)): w for u, v in edges})


def to_nx(g):
    h = nx.Graph()
    h.add_nodes_from(range(g.num_vertices))
    for (u, v), w in g.edges.items():
        h.add_edge(u, v, weight=w)
    return h


TWO_TRIANGLES = graph(6, [(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5)])


def test_two_triangles():
    p = louvain(TWO_TRIANGLES, seed=0)
    assert p.modularity == pytest.approx(0.5, abs=1e-6)
    assert p.num_communities == 2


def test_modularity_matches_networkx():
    rng = random.Random(11)
    for _ in range(30):
        f = random_cnf(rng, max_vars=15, max_clauses=30)
        g = build_vig(f)
        if g.num_edges == 0:
            continue
        comm = [rng.randrange(3) for _ in range(g.num_vertices)]
        groups = [{i for i, c in enumerate(comm) if c == k} for k in set(comm)]
        want = nx.community.modularity(to_nx(g), groups, weight="weight")
        assert modularity(g, comm) == pytest.approx(want, abs=1e-12)


def _set_partitions(items):
    if not items:
        yield []
        return
    head, rest = items[0], items[1:]
    for part in _set_partitions(rest):
        for i in range(len(part)):
            yield part[:i] + [[head] + part[i]] + part[i + 1:]
        yield [[head]] + part


def test_louvain_bounded_by_exhaustive_optimum():
    rng = random.Random(2)
    for _ in range(10):
        n = 7
        edges = {(u, v): rng.choice([0.5, 1.0, 2.0]) for u, v in itertools.combinations(range(n), 2)
                 if rng.random() < 0.4}
        if not edges:
            continue
        g = WeightedGraph(n, edges)
        best = -1.0
        for part in _set_partitions(list(range(n))):
            comm = np.empty(n, dtype=int)
            for k, block in enumerate(part):
                comm[block] = k
            best = max(best, modularity(g, comm))
        q = louvain(g, seed=0).modularity
        assert q <= best + 1e-12
        assert q >= 0.8 * best


def test_louvain_competitive_with_networkx():
    h = nx.planted_partition_graph(5, 20, 0.5, 0.02, seed=4)
    g = graph(h.number_of_nodes(), h.edges())
    ours = louvain(g, seed=1).modularity
    ref = nx.community.modularity(h, nx.community.louvain_communities(h, seed=1))
    assert ours >= ref - 0.02


def test_louvain_deterministic_and_empty():
    rng = random.Random(8)
    f = random_cnf(rng, 20, 60)
    g = build_vig(f)
    assert louvain(g, 3).modularity == louvain(g, 3).modularity
    assert louvain(WeightedGraph(4), 0).modularity == 0.0


def test_powerlaw_recovers_alpha():
    x = stats.zipf.rvs(2.5, size=100_000, random_state=np.random.default_rng(0))
    fit = powerlaw_alpha(x)
    assert fit.alpha == pytest.approx(2.5, abs=0.1)


def test_powerlaw_degenerate():
    assert powerlaw_alpha([3, 3, 3]).alpha == DEGENERATE_ALPHA
    assert powerlaw_alpha([]).degenerate


def test_path_fractal_dimension():
    n = 1000
    d, degenerate = fractal_dimension(graph(n, [(i, i + 1) for i in range(n - 1)]))
    assert 0.8 <= d <= 1.2 and not degenerate


def test_box_counts_small():
    star = graph(6, [(0, i) for i in range(1, 6)])
    assert box_counts(star) == [(1, 1)]
    assert fractal_dimension(star) == (0.0, True)
    assert box_counts(TWO_TRIANGLES) == [(1, 2)]


def test_box_counts_nonincreasing():
    rng = random.Random(9)
    for _ in range(20):
        g = build_vig(random_cnf(rng, 20, 30))
        counts = [c for _, c in box_counts(g)]
        assert counts == sorted(counts, reverse=True)
        assert all(c >= 1 for c in counts)


def test_box_cover_upper_bound_on_cycle():
    # a cycle of length L needs ceil(L / (2r+1)) boxes of radius r
    L = 60
    g = graph(L, [(i, (i + 1) % L) for i in range(L)])
    for r, count in box_counts(g):
        assert count >= -(-L // (2 * r + 1))


def test_ant_vector_e1():
    vec = ant_feature_vector(E1, seed=0)
    assert len(vec) == 4
    assert vec[0] == DEGENERATE_ALPHA  # every variable occurs 3 times
    assert vec[1] == pytest.approx(0.0, abs=1e-12)  # a triangle has no useful split
