"""Tautology removal and unit propagation ahead of SATzilla extraction."""

from __future__ import annotations

import enum
from collections import deque
from dataclasses import dataclass, field

from .cnf import Cnf


class Status(enum.Enum):
    REDUCED = "REDUCED"
    SOLVED_SAT = "SOLVED_SAT"
    SOLVED_UNSAT = "SOLVED_UNSAT"


@dataclass(frozen=True)
class PreprocessResult:
    status: Status
    cnf: Cnf | None = None
    forced: tuple[int, ...] = ()
    removed_tautologies: int = 0
    # var_map[i] is the original variable renumbered to i + 1
    var_map: tuple[int, ...] = field(default=())

    @property
    def solved(self) -> bool:
        return self.status is not Status.REDUCED


def is_tautology(clause) -> bool:
    s = set(clause)
    return any(-l in s for l in clause)


def remove_tautologies(cnf: Cnf) -> Cnf:
    return Cnf(cnf.num_vars, tuple(c for c in cnf.clauses if not is_tautology(c)))


def _propagate(cnf: Cnf):
    """Returns ``(unsat, forced, value)``; ``value[v]`` is +1/-1/0."""
    value = [0] * (cnf.num_vars + 1)
    forced: list[int] = []
    queue = deque()
    for c in cnf.clauses:
        if not c:
            return True, forced, value
        if len(c) == 1:
            queue.append(c[0])
    clauses = cnf.clauses
    while queue:
        lit = queue.popleft()
        v = abs(lit)
        sign = 1 if lit > 0 else -1
        if value[v] == sign:
            continue
        if value[v] == -sign:
            return True, forced, value
        value[v] = sign
        forced.append(lit)
        for ci in cnf.lit_occ(-lit):
            free = None
            n_free = 0
            for l in clauses[ci]:
                val = value[abs(l)]
                if val == 0:
                    n_free += 1
                    free = l
                elif (val > 0) == (l > 0):
                    break
            else:
                if n_free == 0:
                    return True, forced, value
                if n_free == 1:
                    queue.append(free)
    return False, forced, value


def _renumber(clauses: list[tuple[int, ...]]) -> tuple[Cnf, tuple[int, ...]]:
    used = sorted({abs(l) for c in clauses for l in c})
    index = {v: i + 1 for i, v in enumerate(used)}
    renamed = tuple(tuple(index[abs(l)] if l > 0 else -index[abs(l)] for l in c) for c in clauses)
    return Cnf(len(used), renamed), tuple(used)


def unit_propagate(cnf: Cnf, renumber: bool = False) -> PreprocessResult:
    """Unit propagation to fixpoint; UNSAT is reported as a status."""
    unsat, forced, value = _propagate(cnf)
    if unsat:
        return PreprocessResult(Status.SOLVED_UNSAT, forced=tuple(forced))
    residual = []
    for c in cnf.clauses:
        kept = []
        for l in c:
            val = value[abs(l)]
            if val == 0:
                kept.append(l)
            elif (val > 0) == (l > 0):
                break
        else:
            residual.append(tuple(kept))
    if not residual:
        return PreprocessResult(Status.SOLVED_SAT, forced=tuple(forced))
    if renumber:
        reduced, var_map = _renumber(residual)
    else:
        reduced, var_map = Cnf(cnf.num_vars, tuple(residual)), tuple(range(1, cnf.num_vars + 1))
    return PreprocessResult(Status.REDUCED, reduced, tuple(forced), var_map=var_map)


def preprocess(cnf: Cnf) -> PreprocessResult:
    """Tautology removal, unit propagation, dense renumbering of surviving variables."""
    cleaned = remove_tautologies(cnf)
    result = unit_propagate(cleaned, renumber=True)
    removed = cnf.num_clauses - cleaned.num_clauses
    return PreprocessResult(result.status, result.cnf, result.forced, removed, result.var_map)
