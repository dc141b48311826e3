"""DPLL and SAPS local-search probes.

The inner loops are numba kernels over a CSR clause layout; everything that
touches wall-clock time or seeds stays in Python.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field

import numpy as np
from numba import njit

from .cnf import Cnf
from .stats import StatSummary, log2_mean_exp2, summarize

DEPTHS = (1, 4, 16, 64, 256)
LS_STATS = ("mean", "cv", "min", "max", "median", "entropy")

DEFAULT_PROBES = 100
DEFAULT_LS_RUNS = 30
DEFAULT_LS_CUTOFF = 10_000
SAPS_ALPHA = 1.3
SAPS_RHO = 0.8
SAPS_P_SMOOTH = 0.05
SAPS_P_WALK = 0.01
LS_ALGORITHMS = ("saps", "gsat")


@dataclass
class ProbeReport:
    seed: int
    unit_props_at_depth: dict[int, float] = field(default_factory=dict)
    dpll_nodes: int = 0
    dpll_status: str = "UNKNOWN"
    probe_depths: list[int] = field(default_factory=list)
    mean_depth_to_contradiction: float = 0.0
    est_log_nodes: float = 0.0
    ls_steps_to_best: StatSummary = field(default_factory=StatSummary)
    ls_improvement_per_step: StatSummary = field(default_factory=StatSummary)
    ls_first_min_fraction: StatSummary = field(default_factory=StatSummary)
    ls_unsat_at_minima_mean: float = 0.0
    ls_best_unsat: list[int] = field(default_factory=list)
    truncated: bool = False


def _lit_layout(cnf: Cnf):
    """CSR clauses plus per-literal occurrence lists (literal index 2*(v-1) + neg)."""
    lits, off = cnf.flat
    lidx = 2 * (np.abs(lits) - 1) + (lits < 0)
    cid = np.repeat(np.arange(cnf.num_clauses, dtype=np.int64), np.diff(off))
    order = np.argsort(lidx, kind="stable")
    occ = cid[order]
    occ_off = np.zeros(2 * cnf.num_vars + 1, dtype=np.int64)
    np.cumsum(np.bincount(lidx, minlength=2 * cnf.num_vars), out=occ_off[1:])
    return lits.astype(np.int64), off.astype(np.int64), occ.astype(np.int64), occ_off


@njit(cache=True)
def _li(lit):
    return 2 * (abs(lit) - 1) + (1 if lit < 0 else 0)


@njit(cache=True)
def _propagate(lit0, lits, off, occ, occ_off, assign, nsat_true, nfree, trail, queue, scal):
    """Assign lit0 and propagate. ``scal = [trail_len, n_sat_clauses]``.

    Returns ``(ok, implied)``; counters stay consistent on conflict so the
    trail can be undone.
    """
    qh = 0
    qt = 0
    queue[qt] = lit0
    qt += 1
    implied = 0
    ok = True
    while qh < qt and ok:
        lit = queue[qh]
        qh += 1
        v = abs(lit) - 1
        s = 1 if lit > 0 else -1
        if assign[v] == s:
            continue
        if assign[v] == -s:
            ok = False
            break
        assign[v] = s
        trail[scal[0]] = lit
        scal[0] += 1
        if qh > 1:
            implied += 1
        li = _li(lit)
        for k in range(occ_off[li], occ_off[li + 1]):
            c = occ[k]
            nsat_true[c] += 1
            if nsat_true[c] == 1:
                scal[1] += 1
        ln = li ^ 1
        for k in range(occ_off[ln], occ_off[ln + 1]):
            c = occ[k]
            nfree[c] -= 1
            if nsat_true[c] == 0:
                if nfree[c] == 0:
                    ok = False
                elif nfree[c] == 1:
                    for j in range(off[c], off[c + 1]):
                        if assign[abs(lits[j]) - 1] == 0:
                            queue[qt] = lits[j]
                            qt += 1
                            break
    return ok, implied


@njit(cache=True)
def _undo(to_len, occ, occ_off, assign, nsat_true, nfree, trail, scal):
    while scal[0] > to_len:
        scal[0] -= 1
        lit = trail[scal[0]]
        assign[abs(lit) - 1] = 0
        li = _li(lit)
        for k in range(occ_off[li], occ_off[li + 1]):
            c = occ[k]
            nsat_true[c] -= 1
            if nsat_true[c] == 0:
                scal[1] -= 1
        ln = li ^ 1
        for k in range(occ_off[ln], occ_off[ln + 1]):
            nfree[occ[k]] += 1


@njit(cache=True)
def _mom_var(lits, off, assign, nsat_true, nfree, counts):
    """Most occurrences in the shortest unsatisfied clauses; lowest index on ties."""
    m = off.shape[0] - 1
    shortest = 1 << 62
    for c in range(m):
        if nsat_true[c] == 0 and nfree[c] < shortest:
            shortest = nfree[c]
    counts[:] = 0
    for c in range(m):
        if nsat_true[c] == 0 and nfree[c] == shortest:
            for j in range(off[c], off[c + 1]):
                v = abs(lits[j]) - 1
                if assign[v] == 0:
                    counts[v] += 1
    return np.argmax(counts)


@njit(cache=True)
def _dpll_search(lits, off, occ, occ_off, n, thresholds):
    m = off.shape[0] - 1
    assign = np.zeros(n, np.int8)
    nsat_true = np.zeros(m, np.int64)
    nfree = np.diff(off)
    trail = np.zeros(n + 1, np.int64)
    queue = np.zeros(m + n + 2, np.int64)
    scal = np.zeros(2, np.int64)
    counts = np.zeros(n, np.int64)
    stack_var = np.zeros(n + 1, np.int64)
    stack_phase = np.zeros(n + 1, np.int64)
    stack_tl = np.zeros(n + 1, np.int64)
    nt = thresholds.shape[0]
    rec = np.zeros(nt, np.int64)
    max_nodes = thresholds[nt - 1]
    ti = 0
    sp = 0
    nodes = 0
    props = 0
    status = 0  # 0 unknown, 1 sat, -1 unsat
    descend = True
    while True:
        if descend:
            if scal[1] == m:
                status = 1
                break
            if nodes >= max_nodes:
                break
            v = _mom_var(lits, off, assign, nsat_true, nfree, counts)
            stack_var[sp] = v
            stack_phase[sp] = 0
            stack_tl[sp] = scal[0]
            sp += 1
            lit = v + 1
        else:
            if sp == 0:
                status = -1
                break
            top = sp - 1
            _undo(stack_tl[top], occ, occ_off, assign, nsat_true, nfree, trail, scal)
            if stack_phase[top] == 1:
                sp -= 1
                continue
            if nodes >= max_nodes:
                break
            stack_phase[top] = 1
            lit = -(stack_var[top] + 1)
        nodes += 1
        ok, implied = _propagate(lit, lits, off, occ, occ_off, assign, nsat_true, nfree,
                                 trail, queue, scal)
        props += implied
        while ti < nt and nodes >= thresholds[ti]:
            rec[ti] = props
            ti += 1
        descend = ok
    for k in range(ti, nt):
        rec[k] = props
    return rec, nodes, status


@njit(cache=True)
def _random_probe(lits, off, occ, occ_off, n, seed):
    """Random decisions with propagation until conflict or all clauses satisfied.

    Returns ``(depth, conflict)``.
    """
    np.random.seed(seed)
    m = off.shape[0] - 1
    assign = np.zeros(n, np.int8)
    nsat_true = np.zeros(m, np.int64)
    nfree = np.diff(off)
    trail = np.zeros(n + 1, np.int64)
    queue = np.zeros(m + n + 2, np.int64)
    scal = np.zeros(2, np.int64)
    perm = np.random.permutation(n)
    depth = 0
    for v in perm:
        if scal[1] == m:
            break
        if assign[v] != 0:
            continue
        lit = v + 1 if np.random.random() < 0.5 else -(v + 1)
        depth += 1
        ok, _ = _propagate(lit, lits, off, occ, occ_off, assign, nsat_true, nfree,
                           trail, queue, scal)
        if not ok:
            return depth, True
    return depth, False


@njit(cache=True)
def _saps_run(lits, off, occ, occ_off, n, seed, cutoff, alpha, rho, p_smooth, p_walk, gsat):
    """One SAPS run from a random assignment.

    With ``gsat`` set, clause weights stay at 1 and a local minimum takes the
    best non-improving flip instead of rescaling (GSAT with random walk).

    Returns ``(initial_unsat, best_unsat, steps_to_best, first_min_unsat,
    minima_unsat_sum, n_minima)``; ``first_min_unsat`` is -1 when no local
    minimum was met.
    """
    np.random.seed(seed)
    m = off.shape[0] - 1
    val = np.zeros(n, np.int8)
    for v in range(n):
        val[v] = 1 if np.random.random() < 0.5 else 0
    ntrue = np.zeros(m, np.int64)
    w = np.ones(m)
    total_w = float(m)
    unsat = np.zeros(m, np.int64)
    pos = np.full(m, -1, np.int64)
    nu = 0
    for c in range(m):
        for j in range(off[c], off[c + 1]):
            l = lits[j]
            if (l > 0) == (val[abs(l) - 1] == 1):
                ntrue[c] += 1
        if ntrue[c] == 0:
            pos[c] = nu
            unsat[nu] = c
            nu += 1
    stamp = np.zeros(n, np.int64)
    cand = np.zeros(n, np.int64)
    initial = nu
    best = nu
    best_step = 0
    first_min = -1
    minima_sum = 0
    n_minima = 0
    step = 0
    while nu > 0 and step < cutoff:
        step += 1
        # candidate variables: those in unsatisfied clauses
        nc = 0
        for k in range(nu):
            c = unsat[k]
            for j in range(off[c], off[c + 1]):
                v = abs(lits[j]) - 1
                if stamp[v] != step:
                    stamp[v] = step
                    cand[nc] = v
                    nc += 1
        best_delta = np.inf
        chosen = -1
        ties = 0
        for t in range(nc):
            v = cand[t]
            cur = (v + 1) if val[v] == 1 else -(v + 1)  # the currently true literal of v
            delta = 0.0
            li = _li(cur)
            for k in range(occ_off[li], occ_off[li + 1]):
                c = occ[k]
                if ntrue[c] == 1:
                    delta += w[c]
            ln = li ^ 1
            for k in range(occ_off[ln], occ_off[ln + 1]):
                c = occ[k]
                if ntrue[c] == 0:
                    delta -= w[c]
            if delta < best_delta - 1e-9:
                best_delta = delta
                chosen = v
                ties = 1
            elif abs(delta - best_delta) <= 1e-9:
                ties += 1
                if np.random.random() * ties < 1.0:
                    chosen = v
        flip = -1
        if best_delta < -1e-9:
            flip = chosen
        else:
            n_minima += 1
            minima_sum += nu
            if first_min < 0:
                first_min = nu
            if np.random.random() < p_walk:
                flip = np.random.randint(0, n)
            elif gsat:
                flip = chosen
            else:
                added = 0.0
                for k in range(nu):
                    c = unsat[k]
                    added += (alpha - 1.0) * w[c]
                    w[c] *= alpha
                total_w += added
                if np.random.random() < p_smooth:
                    mean_w = total_w / m
                    for c in range(m):
                        w[c] = rho * w[c] + (1.0 - rho) * mean_w
                if total_w > 1e6 * m:
                    scale = total_w / m
                    for c in range(m):
                        w[c] /= scale
                    total_w = float(m)
        if flip >= 0:
            v = flip
            old = (v + 1) if val[v] == 1 else -(v + 1)
            val[v] = 1 - val[v]
            li = _li(old)
            for k in range(occ_off[li], occ_off[li + 1]):
                c = occ[k]
                ntrue[c] -= 1
                if ntrue[c] == 0:
                    pos[c] = nu
                    unsat[nu] = c
                    nu += 1
            ln = li ^ 1
            for k in range(occ_off[ln], occ_off[ln + 1]):
                c = occ[k]
                ntrue[c] += 1
                if ntrue[c] == 1:
                    p = pos[c]
                    last = unsat[nu - 1]
                    unsat[p] = last
                    pos[last] = p
                    pos[c] = -1
                    nu -= 1
            if nu < best:
                best = nu
                best_step = step
    return initial, best, best_step, first_min, minima_sum, n_minima


def _deadline(budget_ms):
    return None if budget_ms is None else time.perf_counter() + budget_ms / 1000.0


def _child_seeds(seed: int, count: int) -> list[int]:
    return np.random.default_rng(seed).integers(0, 2**31 - 1, size=count).tolist()


def dpll_probe(cnf: Cnf, seed: int = 0, probes: int = DEFAULT_PROBES,
               budget_ms: float | None = None, report: ProbeReport | None = None) -> ProbeReport:
    """Depth-threshold propagation counts, mean probe depth and a tree-size estimate."""
    report = report or ProbeReport(seed)
    deadline = _deadline(budget_ms)
    lits, off, occ, occ_off = _lit_layout(cnf)
    n = cnf.num_vars
    rec, nodes, status = _dpll_search(lits, off, occ, occ_off, n, np.asarray(DEPTHS, np.int64))
    report.unit_props_at_depth = {d: float(x) for d, x in zip(DEPTHS, rec)}
    report.dpll_nodes = int(nodes)
    report.dpll_status = {1: "SAT", -1: "UNSAT"}.get(int(status), "UNKNOWN")
    depths = []
    for s in _child_seeds(seed, probes):
        if deadline is not None and time.perf_counter() > deadline:
            report.truncated = True
            break
        depth, _ = _random_probe(lits, off, occ, occ_off, n, s)
        depths.append(int(depth))
    report.probe_depths = depths
    report.mean_depth_to_contradiction = float(np.mean(depths)) if depths else 0.0
    if depths:
        # Knuth estimate with binary branching: a path of depth d stands for 2**(d+1) - 1 nodes
        lg = log2_mean_exp2([d + 1 for d in depths])
        report.est_log_nodes = float(lg + np.log2(1.0 - 2.0 ** -lg))
    return report


def local_search_probe(cnf: Cnf, seed: int = 0, runs: int = DEFAULT_LS_RUNS,
                       cutoff: int = DEFAULT_LS_CUTOFF, budget_ms: float | None = None,
                       report: ProbeReport | None = None, algorithm: str = "saps") -> ProbeReport:
    """SAPS (or GSAT) runs from random assignments, summarised per run."""
    if cutoff <= 0:
        raise ValueError("local search cutoff must be positive")
    if algorithm not in LS_ALGORITHMS:
        raise ValueError(f"unknown local search {algorithm!r}")
    report = report or ProbeReport(seed)
    deadline = _deadline(budget_ms)
    if cnf.num_clauses == 0 or cnf.num_vars == 0:
        zero = summarize([], LS_STATS)
        report.ls_steps_to_best = report.ls_improvement_per_step = zero
        report.ls_first_min_fraction = zero
        report.ls_unsat_at_minima_mean = 0.0
        return report
    lits, off, occ, occ_off = _lit_layout(cnf)
    steps, improvement, first_frac, bests = [], [], [], []
    minima_sum = minima_n = 0
    for s in _child_seeds(seed + 1, runs):
        if deadline is not None and time.perf_counter() > deadline:
            report.truncated = True
            break
        init, best, best_step, first_min, msum, mn = _saps_run(
            lits, off, occ, occ_off, cnf.num_vars, s, cutoff,
            SAPS_ALPHA, SAPS_RHO, SAPS_P_SMOOTH, SAPS_P_WALK, algorithm == "gsat")
        gained = init - best
        steps.append(best_step)
        improvement.append(gained / best_step if best_step else 0.0)
        if first_min < 0:
            first_min = best
        first_frac.append((init - first_min) / gained if gained else 1.0)
        bests.append(int(best))
        minima_sum += msum
        minima_n += mn
    report.ls_steps_to_best = summarize(steps, LS_STATS)
    report.ls_improvement_per_step = summarize(improvement, LS_STATS)
    report.ls_first_min_fraction = summarize(first_frac, LS_STATS)
    report.ls_unsat_at_minima_mean = minima_sum / minima_n if minima_n else 0.0
    report.ls_best_unsat = bests
    return report


def probe(cnf: Cnf, seed: int = 0, probes: int = DEFAULT_PROBES, ls_runs: int = DEFAULT_LS_RUNS,
          ls_cutoff: int = DEFAULT_LS_CUTOFF, budget_ms: float | None = None,
          ls_algorithm: str = "saps") -> ProbeReport:
    """Both probes; ``budget_ms`` is split evenly between them."""
    half = None if budget_ms is None else budget_ms / 2.0
    report = dpll_probe(cnf, seed, probes, half)
    return local_search_probe(cnf, seed, ls_runs, ls_cutoff, half, report, ls_algorithm)
