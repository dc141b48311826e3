"""DIMACS CNF reading/writing and the immutable formula container."""

from __future__ import annotations

import io
import warnings
from dataclasses import dataclass
from functools import cached_property
from pathlib import Path
from typing import Iterable, Sequence

import numpy as np


class DimacsError(ValueError):
    """Malformed DIMACS input. ``line`` is 1-based (0 when not attributable)."""

    def __init__(self, message: str, line: int = 0):
        self.line = line
        super().__init__(f"line {line}: {message}" if line else message)


class DimacsWarning(UserWarning):
    pass


@dataclass(frozen=True)
class Cnf:
    """A CNF formula.

    Literals are signed DIMACS integers; per-variable arrays are indexed by
    ``var - 1``.
    """

    num_vars: int
    clauses: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        clauses = tuple(tuple(int(l) for l in c) for c in self.clauses)
        object.__setattr__(self, "clauses", clauses)
        for i, c in enumerate(clauses):
            for lit in c:
                if lit == 0 or abs(lit) > self.num_vars:
                    raise ValueError(f"clause {i}: literal {lit} out of range 1..{self.num_vars}")

    @classmethod
    def from_clauses(cls, clauses: Iterable[Sequence[int]], num_vars: int | None = None) -> "Cnf":
        clauses = [tuple(dict.fromkeys(c)) for c in clauses]
        if num_vars is None:
            num_vars = max((abs(l) for c in clauses for l in c), default=0)
        return cls(num_vars, tuple(clauses))

    @property
    def num_clauses(self) -> int:
        return len(self.clauses)

    @cached_property
    def pos_occ(self) -> tuple[list[int], ...]:
        """Clause indices containing +v, for each variable."""
        self._build_occ()
        return self.__dict__["pos_occ"]

    @cached_property
    def neg_occ(self) -> tuple[list[int], ...]:
        self._build_occ()
        return self.__dict__["neg_occ"]

    def _build_occ(self):
        pos = tuple([] for _ in range(self.num_vars))
        neg = tuple([] for _ in range(self.num_vars))
        for ci, c in enumerate(self.clauses):
            for lit in c:
                (pos if lit > 0 else neg)[abs(lit) - 1].append(ci)
        self.__dict__["pos_occ"] = pos
        self.__dict__["neg_occ"] = neg

    def lit_occ(self, lit: int) -> list[int]:
        return self.pos_occ[lit - 1] if lit > 0 else self.neg_occ[-lit - 1]

    @cached_property
    def flat(self) -> tuple[np.ndarray, np.ndarray]:
        """CSR view ``(literals, offsets)``: clause i is ``literals[offsets[i]:offsets[i+1]]``."""
        sizes = np.fromiter((len(c) for c in self.clauses), dtype=np.int64, count=len(self.clauses))
        offsets = np.zeros(len(self.clauses) + 1, dtype=np.int64)
        np.cumsum(sizes, out=offsets[1:])
        lits = np.fromiter((l for c in self.clauses for l in c), dtype=np.int64, count=int(offsets[-1]))
        return lits, offsets

    @cached_property
    def clause_sizes(self) -> np.ndarray:
        return np.diff(self.flat[1])


def occurrence_counts(cnf: Cnf) -> tuple[np.ndarray, np.ndarray]:
    """Per-variable ``(pos, neg)`` clause counts."""
    lits, _ = cnf.flat
    pos = np.bincount(lits[lits > 0] - 1, minlength=cnf.num_vars)
    neg = np.bincount(-lits[lits < 0] - 1, minlength=cnf.num_vars)
    return pos.astype(np.int64), neg.astype(np.int64)


def parse_dimacs(data: bytes | str) -> Cnf:
    """Parse DIMACS CNF text.

    Duplicate literals are dropped within a clause; a clause-count mismatch
    against the header only warns.
    """
    if isinstance(data, bytes):
        data = data.decode("utf-8")
    num_vars = declared = None
    clauses: list[tuple[int, ...]] = []
    current: list[int] = []
    current_line = 0
    lineno = 0
    for lineno, raw in enumerate(io.StringIO(data), start=1):
        line = raw.strip()
        if not line or line[0] == "c":
            continue
        if line[0] == "%":  # SATLIB trailer
            break
        if line[0] == "p":
            parts = line.split()
            if num_vars is not None:
                raise DimacsError("duplicate header", lineno)
            if len(parts) != 4 or parts[1] != "cnf":
                raise DimacsError(f"malformed header {line!r}", lineno)
            try:
                num_vars, declared = int(parts[2]), int(parts[3])
            except ValueError:
                raise DimacsError(f"malformed header {line!r}", lineno) from None
            if num_vars < 0 or declared < 0:
                raise DimacsError(f"negative count in header {line!r}", lineno)
            continue
        if num_vars is None:
            raise DimacsError("clause data before 'p cnf' header", lineno)
        if declared == 0:
            raise DimacsError("header declares 0 clauses but clause lines are present", lineno)
        for tok in line.split():
            try:
                lit = int(tok)
            except ValueError:
                raise DimacsError(f"bad token {tok!r}", lineno) from None
            if lit == 0:
                clauses.append(tuple(dict.fromkeys(current)))
                current = []
                continue
            if abs(lit) > num_vars:
                raise DimacsError(f"literal {lit} exceeds declared {num_vars} variables", lineno)
            if not current:
                current_line = lineno
            current.append(lit)
    if num_vars is None:
        raise DimacsError("missing 'p cnf' header", lineno)
    if current:
        raise DimacsError("clause not terminated by 0", current_line)
    if len(clauses) != declared:
        warnings.warn(
            f"header declares {declared} clauses, found {len(clauses)}", DimacsWarning, stacklevel=2
        )
    return Cnf(num_vars, tuple(clauses))


def write_dimacs(cnf: Cnf, comments: Sequence[str] = ()) -> bytes:
    out = [f"c {c}\n" for c in comments]
    out.append(f"p cnf {cnf.num_vars} {cnf.num_clauses}\n")
    out.extend(" ".join(map(str, c)) + " 0\n" if c else "0\n" for c in cnf.clauses)
    return "".join(out).encode("ascii")


def read_cnf(path: str | Path) -> Cnf:
    return parse_dimacs(Path(path).read_bytes())


def dimacs_comments(data: bytes | str) -> list[str]:
    """Comment lines (without the leading ``c``) appearing before the header."""
    if isinstance(data, bytes):
        data = data.decode("utf-8", errors="replace")
    out = []
    for line in data.splitlines():
        s = line.strip()
        if s.startswith("p"):
            break
        if s.startswith("c"):
            out.append(s[1:].strip())
    return out
