"""SATzilla base and probing features."""

from __future__ import annotations

import numpy as np

from .cnf import Cnf, occurrence_counts
from .graphs import CLAUSE, VAR, build_vcg, build_vg
from .probing import DEPTHS, LS_STATS, ProbeReport
from .stats import SATZILLA_STATS, StatSummary, safe_ratio, summarize


class DegenerateInstance(ValueError):
    pass


def _stat_names(prefix: str, schedule=SATZILLA_STATS) -> list[str]:
    return [f"{prefix}_{s}" for s in schedule]


BASE_NAMES: list[str] = [
    "n_clauses", "n_vars", "clause_var_ratio",
    "pre_vars_removed_fraction", "pre_clauses_removed_fraction",
    *_stat_names("vcg_var_deg"),
    *_stat_names("vcg_clause_deg"),
    *_stat_names("vg_deg"),
    *_stat_names("clause_bias"),
    *_stat_names("var_bias"),
    "binary_fraction", "ternary_fraction",
    "horn_fraction",
    *_stat_names("horn_var_occ"),
]

PROBING_NAMES: list[str] = [
    *(f"dpll_props_d{d}" for d in DEPTHS),
    *(f"dpll_props_per_var_d{d}" for d in DEPTHS),
    "dpll_mean_depth_contradiction",
    "dpll_log_nodes",
    *_stat_names("ls_steps_to_best", LS_STATS),
    *_stat_names("ls_improvement_per_step", LS_STATS),
    *_stat_names("ls_first_min_fraction", LS_STATS),
    "ls_unsat_at_minima_mean",
]


def size_features(cnf: Cnf) -> tuple[int, int, float]:
    if cnf.num_vars == 0:
        raise DegenerateInstance("formula has no variables")
    return cnf.num_clauses, cnf.num_vars, cnf.num_clauses / cnf.num_vars


def bias(pos, neg) -> np.ndarray:
    """``2 * |0.5 - pos / (pos + neg)|``, 0 where there are no occurrences."""
    pos = np.asarray(pos, dtype=float)
    tot = pos + np.asarray(neg, dtype=float)
    out = np.zeros_like(tot)
    nz = tot > 0
    out[nz] = 2.0 * np.abs(0.5 - pos[nz] / tot[nz])
    return out


def clause_biases(cnf: Cnf) -> np.ndarray:
    lits, off = cnf.flat
    cid = np.repeat(np.arange(cnf.num_clauses), np.diff(off))
    pos = np.bincount(cid[lits > 0], minlength=cnf.num_clauses)
    return bias(pos, cnf.clause_sizes - pos)


def variable_biases(cnf: Cnf) -> np.ndarray:
    return bias(*occurrence_counts(cnf))


def balance_features(cnf: Cnf) -> dict:
    sizes = cnf.clause_sizes
    m = cnf.num_clauses
    return {
        "clause_bias": summarize(clause_biases(cnf), SATZILLA_STATS),
        "var_bias": summarize(variable_biases(cnf), SATZILLA_STATS),
        "binary_fraction": safe_ratio(np.count_nonzero(sizes == 2), m),
        "ternary_fraction": safe_ratio(np.count_nonzero(sizes == 3), m),
    }


def horn_mask(cnf: Cnf) -> np.ndarray:
    """Clauses with at most one positive literal."""
    lits, off = cnf.flat
    cid = np.repeat(np.arange(cnf.num_clauses), np.diff(off))
    npos = np.bincount(cid[lits > 0], minlength=cnf.num_clauses)
    return npos <= 1


def horn_features(cnf: Cnf) -> tuple[float, np.ndarray]:
    """Fraction of Horn clauses and, per variable, its occurrences in Horn clauses."""
    lits, off = cnf.flat
    horn = horn_mask(cnf)
    in_horn = np.repeat(horn, np.diff(off))
    counts = np.bincount(np.abs(lits[in_horn]) - 1, minlength=cnf.num_vars)
    return safe_ratio(int(horn.sum()), cnf.num_clauses), counts


def vcg_features(cnf: Cnf) -> tuple[StatSummary, StatSummary]:
    g = build_vcg(cnf)
    return (summarize(g.degrees(VAR), SATZILLA_STATS),
            summarize(g.degrees(CLAUSE), SATZILLA_STATS))


def vg_features(cnf: Cnf) -> StatSummary:
    return summarize(build_vg(cnf).degrees(), SATZILLA_STATS)


def base_vector(cnf: Cnf, original: Cnf | None = None) -> list[float]:
    """The base features of ``cnf``; ``original`` is the formula before preprocessing."""
    original = original or cnf
    m, n, ratio = size_features(cnf)
    out = [float(m), float(n), ratio,
           safe_ratio(original.num_vars - n, original.num_vars),
           safe_ratio(original.num_clauses - m, original.num_clauses)]
    var_deg, clause_deg = vcg_features(cnf)
    out += var_deg.values(SATZILLA_STATS) + clause_deg.values(SATZILLA_STATS)
    out += vg_features(cnf).values(SATZILLA_STATS)
    bal = balance_features(cnf)
    out += bal["clause_bias"].values(SATZILLA_STATS) + bal["var_bias"].values(SATZILLA_STATS)
    out += [bal["binary_fraction"], bal["ternary_fraction"]]
    horn_frac, horn_counts = horn_features(cnf)
    out += [horn_frac] + summarize(horn_counts, SATZILLA_STATS).values(SATZILLA_STATS)
    return out


def probing_vector(report: ProbeReport, num_vars: int) -> list[float]:
    props = [report.unit_props_at_depth.get(d, 0.0) for d in DEPTHS]
    return [
        *props,
        *(safe_ratio(p, num_vars) for p in props),
        report.mean_depth_to_contradiction,
        report.est_log_nodes,
        *report.ls_steps_to_best.values(LS_STATS),
        *report.ls_improvement_per_step.values(LS_STATS),
        *report.ls_first_min_fraction.values(LS_STATS),
        report.ls_unsat_at_minima_mean,
    ]
