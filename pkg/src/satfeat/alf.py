"""Graph statistics and recursive literal weights (ALF feature family)."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .cnf import Cnf
from .graphs import (
    CLAUSE, VAR, build_and_graph, build_band_graph, build_big, build_clause_graph,
    build_cv_signed, build_exo_graph, build_resolution_graph, build_variable_graph,
)
from .stats import STAT_NAMES, summarize

RWH_ITERATIONS = 3

BIPARTITE_GRAPHS = {
    "cv_pos": lambda cnf: build_cv_signed(cnf, +1),
    "cv_neg": lambda cnf: build_cv_signed(cnf, -1),
}
PLAIN_GRAPHS = {
    "variables": build_variable_graph,
    "clauses": build_clause_graph,
    "resolution": build_resolution_graph,
    "big": build_big,
    "and": build_and_graph,
    "band": build_band_graph,
    "exo": build_exo_graph,
}
WEIGHTED = ("variables", "clauses", "resolution", "and", "band")


def _names(prefix):
    return [f"{prefix}_{s}" for s in STAT_NAMES]


def _build_names() -> list[str]:
    names = []
    for g in BIPARTITE_GRAPHS:
        names += _names(f"alf_{g}_clause_deg") + _names(f"alf_{g}_var_deg")
    for g in PLAIN_GRAPHS:
        names += _names(f"alf_{g}_deg")
        if g in WEIGHTED:
            names += _names(f"alf_{g}_weight")
        names.append(f"alf_{g}_edges")
    for i in range(1, RWH_ITERATIONS + 1):
        names += _names(f"alf_rwh{i}")
    return names


ALF_NAMES: list[str] = _build_names()


@dataclass(frozen=True)
class LiteralWeights:
    """``weights[i, lit_index(l)]`` is the weight of literal l after i iterations."""

    weights: np.ndarray

    def iteration(self, i: int) -> np.ndarray:
        return self.weights[i]


def recursive_weights(cnf: Cnf, iterations: int = RWH_ITERATIONS) -> LiteralWeights:
    """Literal support scores.

    ``w0 = 1``; ``w_{i+1}(l) = sum over clauses c containing l of
    prod_{k in c, k != l} w_i(-k)``, rescaled to mean 1 over all 2n literals.
    Products are taken in log space so long clauses cannot overflow.
    """
    n2 = 2 * cnf.num_vars
    out = np.ones((iterations + 1, n2))
    lits, off = cnf.flat
    if n2 == 0 or lits.size == 0:
        return LiteralWeights(out)
    lidx = 2 * (np.abs(lits) - 1) + (lits < 0)
    comp = lidx ^ 1
    cid = np.repeat(np.arange(cnf.num_clauses), np.diff(off))
    m = cnf.num_clauses
    w = out[0]
    for i in range(1, iterations + 1):
        cw = w[comp]
        zero = cw == 0
        logs = np.zeros_like(cw)
        logs[~zero] = np.log(cw[~zero])
        zeros_in_clause = np.bincount(cid, zero, m)
        log_sum = np.bincount(cid, logs, m)
        other_zero = zeros_in_clause[cid] - zero
        lp = log_sum[cid] - logs
        live = other_zero == 0
        new = np.zeros(n2)
        if live.any():
            top = lp[live].max()
            contrib = np.zeros_like(lp)
            contrib[live] = np.exp(lp[live] - top)
            new = np.bincount(lidx, contrib, n2)
        total = new.sum()
        w = new * (n2 / total) if total > 0 else np.ones(n2)
        out[i] = w
    return LiteralWeights(out)


def alf_graph_features(cnf: Cnf) -> dict[str, list[float]]:
    """Per-graph degree (and weight) statistics, keyed by graph name."""
    out: dict[str, list[float]] = {}
    for name, build in BIPARTITE_GRAPHS.items():
        g = build(cnf)
        out[name] = summarize(g.degrees(CLAUSE)).values() + summarize(g.degrees(VAR)).values()
    for name, build in PLAIN_GRAPHS.items():
        g = build(cnf)
        vals = summarize(g.degrees()).values()
        if name in WEIGHTED:
            vals += summarize(g.weights()).values()
        vals.append(float(g.num_edges))
        out[name] = vals
    return out


def alf_feature_vector(cnf: Cnf) -> list[float]:
    graphs = alf_graph_features(cnf)
    vec = [x for name in (*BIPARTITE_GRAPHS, *PLAIN_GRAPHS) for x in graphs[name]]
    rw = recursive_weights(cnf)
    for i in range(1, RWH_ITERATIONS + 1):
        vec += summarize(rw.iteration(i)).values()
    assert len(vec) == len(ALF_NAMES)
    return vec
