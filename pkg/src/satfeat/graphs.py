"""Formula graphs used by the SATzilla, ANT and ALF feature families.

Vertex numbering conventions:

* variable graphs: variable ``v`` is vertex ``v - 1``;
* clause graphs: clause ``i`` is vertex ``i``;
* bipartite graphs: variables ``0..n-1`` then clauses ``n..n+m-1``;
* literal graphs: literal ``l`` is vertex ``lit_index(l)``.
"""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass, field
from functools import cached_property
from itertools import combinations
from typing import Iterable, TextIO

import numpy as np

from .cnf import Cnf

VAR, CLAUSE, LIT = 0, 1, 2


def lit_index(lit: int) -> int:
    return 2 * (abs(lit) - 1) + (lit < 0)


def index_lit(i: int) -> int:
    v = i // 2 + 1
    return -v if i & 1 else v


@dataclass
class WeightedGraph:
    """Edge-keyed graph. Undirected edges are stored once as ``(min, max)``."""

    num_vertices: int
    edges: dict[tuple[int, int], float] = field(default_factory=dict)
    directed: bool = False
    weighted: bool = True
    kinds: np.ndarray | None = None

    @property
    def num_edges(self) -> int:
        return len(self.edges)

    @cached_property
    def endpoints(self) -> tuple[np.ndarray, np.ndarray]:
        if not self.edges:
            empty = np.zeros(0, dtype=np.int64)
            return empty, empty
        uv = np.fromiter((x for e in self.edges for x in e), dtype=np.int64, count=2 * len(self.edges))
        return uv[0::2], uv[1::2]

    @cached_property
    def adjacency(self) -> list[list[tuple[int, float]]]:
        adj: list[list[tuple[int, float]]] = [[] for _ in range(self.num_vertices)]
        for (u, v), w in self.edges.items():
            adj[u].append((v, w))
            if not self.directed:
                adj[v].append((u, w))
        return adj

    def neighbors(self) -> list[list[int]]:
        """Undirected neighbour lists (direction dropped)."""
        nb: list[list[int]] = [[] for _ in range(self.num_vertices)]
        for u, v in self.edges:
            nb[u].append(v)
            nb[v].append(u)
        return nb

    def degrees(self, kind: int | None = None) -> np.ndarray:
        """Unweighted degree per vertex (out + in for directed graphs)."""
        u, v = self.endpoints
        deg = np.bincount(u, minlength=self.num_vertices) + np.bincount(v, minlength=self.num_vertices)
        if kind is not None and self.kinds is not None:
            deg = deg[self.kinds == kind]
        return deg.astype(np.int64)

    def weighted_degrees(self) -> np.ndarray:
        u, v = self.endpoints
        w = self.weights()
        return np.bincount(u, w, self.num_vertices) + np.bincount(v, w, self.num_vertices)

    def weights(self) -> np.ndarray:
        return np.fromiter(self.edges.values(), dtype=float, count=len(self.edges))

    def total_weight(self) -> float:
        return float(sum(self.edges.values()))


def degree_sequence(g: WeightedGraph, kind: int | None = None) -> np.ndarray:
    return g.degrees(kind)


def weight_sequence(g: WeightedGraph) -> np.ndarray:
    return g.weights() if g.weighted else np.zeros(0)


def write_edge_list(g: WeightedGraph, fh: TextIO) -> None:
    """Debug dump, one ``u v w`` line per stored edge."""
    for (u, v), w in sorted(g.edges.items()):
        fh.write(f"{u} {v} {w!r}\n")


def _undirected_add(edges, u, v, w):
    key = (u, v) if u < v else (v, u)
    edges[key] = edges.get(key, 0.0) + w


def _bipartite_kinds(cnf: Cnf) -> np.ndarray:
    kinds = np.full(cnf.num_vars + cnf.num_clauses, CLAUSE, dtype=np.int8)
    kinds[: cnf.num_vars] = VAR
    return kinds


def _clause_vars(clause) -> list[int]:
    return sorted({abs(l) - 1 for l in clause})


# SATzilla graphs


def build_vcg(cnf: Cnf) -> WeightedGraph:
    n = cnf.num_vars
    edges = {}
    for ci, c in enumerate(cnf.clauses):
        for v in _clause_vars(c):
            edges[(v, n + ci)] = 1.0
    return WeightedGraph(n + cnf.num_clauses, edges, weighted=False, kinds=_bipartite_kinds(cnf))


def build_vg(cnf: Cnf) -> WeightedGraph:
    edges = {}
    for c in cnf.clauses:
        for e in combinations(_clause_vars(c), 2):
            edges[e] = 1.0
    return WeightedGraph(cnf.num_vars, edges, weighted=False)


# ANT graphs


def build_vig(cnf: Cnf) -> WeightedGraph:
    """Each clause over k >= 2 variables spreads unit weight evenly over its k*(k-1)/2 pairs."""
    edges: dict[tuple[int, int], float] = defaultdict(float)
    for c in cnf.clauses:
        vs = _clause_vars(c)
        k = len(vs)
        if k < 2:
            continue
        w = 2.0 / (k * (k - 1))
        for e in combinations(vs, 2):
            edges[e] += w
    return WeightedGraph(cnf.num_vars, dict(edges))


def build_cvig(cnf: Cnf) -> WeightedGraph:
    n = cnf.num_vars
    edges = {}
    for ci, c in enumerate(cnf.clauses):
        vs = _clause_vars(c)
        for v in vs:
            edges[(v, n + ci)] = 1.0 / len(vs)
    return WeightedGraph(n + cnf.num_clauses, edges, kinds=_bipartite_kinds(cnf))


# ALF graphs


def build_cv_signed(cnf: Cnf, polarity: int) -> WeightedGraph:
    """CV+ (``polarity > 0``) or CV- clause/variable graph."""
    n = cnf.num_vars
    edges = {}
    for ci, c in enumerate(cnf.clauses):
        for l in c:
            if (l > 0) == (polarity > 0):
                edges[(abs(l) - 1, n + ci)] = 1.0
    return WeightedGraph(n + cnf.num_clauses, edges, weighted=False, kinds=_bipartite_kinds(cnf))


def build_variable_graph(cnf: Cnf) -> WeightedGraph:
    """Variable co-occurrence graph; each shared clause c adds ``2**-|c|``."""
    edges: dict[tuple[int, int], float] = defaultdict(float)
    for c in cnf.clauses:
        w = 2.0 ** -len(c)
        for e in combinations(_clause_vars(c), 2):
            edges[e] += w
    return WeightedGraph(cnf.num_vars, dict(edges))


def build_clause_graph(cnf: Cnf) -> WeightedGraph:
    """Clauses sharing literals; weight is the number of shared literals."""
    edges: dict[tuple[int, int], float] = defaultdict(float)
    for occ in (*cnf.pos_occ, *cnf.neg_occ):
        for e in combinations(occ, 2):
            edges[e] += 1.0
    return WeightedGraph(cnf.num_clauses, dict(edges))


def build_resolution_graph(cnf: Cnf) -> WeightedGraph:
    """Clause pairs clashing on exactly one variable.

    Weight ``2**-(|Ci| + |Cj| - 2)``, i.e. two to the minus resolvent length.
    """
    clashes: dict[tuple[int, int], int] = defaultdict(int)
    for pos, neg in zip(cnf.pos_occ, cnf.neg_occ):
        for i in pos:
            for j in neg:
                if i != j:
                    clashes[(i, j) if i < j else (j, i)] += 1
    sizes = [len(c) for c in cnf.clauses]
    edges = {
        (i, j): 2.0 ** -(sizes[i] + sizes[j] - 2) for (i, j), k in clashes.items() if k == 1
    }
    return WeightedGraph(cnf.num_clauses, edges)


def build_big(cnf: Cnf) -> WeightedGraph:
    """Binary implication graph: clause (a, b) gives -a -> b and -b -> a."""
    edges = {}
    for c in cnf.clauses:
        if len(c) == 2 and c[0] != -c[1]:
            a, b = c
            edges[(lit_index(-a), lit_index(b))] = 1.0
            edges[(lit_index(-b), lit_index(a))] = 1.0
    return WeightedGraph(2 * cnf.num_vars, edges, directed=True, weighted=False)


# gates


@dataclass(frozen=True)
class Gate:
    kind: str  # "AND", "BAND" or "EXO"
    head: int | None
    body: tuple[int, ...]


def _is_tautology(c) -> bool:
    s = set(c)
    return any(-l in s for l in c)


def _binary_partners(cnf: Cnf) -> dict[int, set[int]]:
    """``partners[a]`` holds every b such that the clause (a, b) is present."""
    partners: dict[int, set[int]] = defaultdict(set)
    for c in cnf.clauses:
        if len(c) == 2 and c[0] != -c[1]:
            a, b = c
            partners[a].add(b)
            partners[b].add(a)
    return partners


def detect_and_gates(cnf: Cnf) -> list[Gate]:
    """``l0 <-> l1 & ... & lk`` (k >= 2) with all k binary clauses and the long clause present."""
    partners = _binary_partners(cnf)
    found: dict[tuple[int, frozenset], Gate] = {}
    for c in cnf.clauses:
        if len(c) < 3 or _is_tautology(c):
            continue
        for l0 in c:
            p = partners.get(-l0)
            if p is None or len(p) < len(c) - 1:
                continue
            body = tuple(sorted(-l for l in c if l != l0))
            if all(b in p for b in body):
                found.setdefault((l0, frozenset(body)), Gate("AND", l0, body))
    return list(found.values())


def detect_band_gates(cnf: Cnf) -> list[Gate]:
    """``l0 -> l1 & ... & lk`` where the completing long clause is absent but blocked on l0."""
    partners = _binary_partners(cnf)
    clause_set = {frozenset(c) for c in cnf.clauses}
    gates = []
    for l0 in sorted(partners, key=lambda l: (abs(l), l < 0)):
        head = -l0
        body = partners[l0]
        if len(body) < 2 or any(-b in body for b in body):
            continue
        if frozenset([head, *(-b for b in body)]) in clause_set:
            continue
        blocked = True
        for ci in cnf.lit_occ(-head):
            d = cnf.clauses[ci]
            if not any(l in body for l in d) and not _is_tautology(d):
                blocked = False
                break
        if blocked:
            gates.append(Gate("BAND", head, tuple(sorted(body))))
    return gates


def detect_exo_gates(cnf: Cnf) -> list[Gate]:
    """``EXO(l1..lk)``: the clause plus every pairwise exclusion ``(-li, -lj)``."""
    partners = _binary_partners(cnf)
    found: dict[frozenset, Gate] = {}
    for c in cnf.clauses:
        if len(c) < 2 or _is_tautology(c):
            continue
        key = frozenset(c)
        if key in found:
            continue
        if all(-b in partners.get(-a, ()) for a, b in combinations(c, 2)):
            found[key] = Gate("EXO", None, tuple(sorted(c)))
    return list(found.values())


def build_gate_graph(gates: Iterable[Gate], num_vars: int) -> WeightedGraph:
    """Literal graph of AND/BAND gates (head-body edges, weight ``2**-k``) or EXO cliques."""
    gates = list(gates)
    edges: dict[tuple[int, int], float] = {}
    weighted = True
    for g in gates:
        if g.kind == "EXO":
            weighted = False
            for a, b in combinations(g.body, 2):
                u, v = sorted((lit_index(a), lit_index(b)))
                edges[(u, v)] = 1.0
        else:
            w = 2.0 ** -len(g.body)
            h = lit_index(g.head)
            for b in g.body:
                _undirected_add(edges, h, lit_index(b), w)
    return WeightedGraph(2 * num_vars, edges, weighted=weighted)


def build_and_graph(cnf: Cnf) -> WeightedGraph:
    return build_gate_graph(detect_and_gates(cnf), cnf.num_vars)


def build_band_graph(cnf: Cnf) -> WeightedGraph:
    return build_gate_graph(detect_band_gates(cnf), cnf.num_vars)


def build_exo_graph(cnf: Cnf) -> WeightedGraph:
    g = build_gate_graph(detect_exo_gates(cnf), cnf.num_vars)
    g.weighted = False
    return g


BUILDERS = {
    "vcg": build_vcg,
    "vg": build_vg,
    "vig": build_vig,
    "cvig": build_cvig,
    "cv_pos": lambda cnf: build_cv_signed(cnf, +1),
    "cv_neg": lambda cnf: build_cv_signed(cnf, -1),
    "variables": build_variable_graph,
    "clauses": build_clause_graph,
    "resolution": build_resolution_graph,
    "big": build_big,
    "and": build_and_graph,
    "band": build_band_graph,
    "exo": build_exo_graph,
}
