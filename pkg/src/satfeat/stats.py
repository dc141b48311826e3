"""Descriptive statistics shared by every feature family."""

from __future__ import annotations

import math
from dataclasses import asdict, dataclass
from typing import Iterable, Sequence

import numpy as np

STAT_NAMES = (
    "count", "min", "max", "mean", "std", "cv", "median",
    "q1", "q3", "mode", "mode_rate", "zeros", "entropy",
)
# statistics SATzilla reports per group
SATZILLA_STATS = ("mean", "cv", "min", "max", "entropy")
ENTROPY_BINS = 100
# significant digits kept before binning or taking the mode of real data
CANONICAL_DIGITS = 10


@dataclass(frozen=True)
class StatSummary:
    count: float | None = None
    min: float | None = None
    max: float | None = None
    mean: float | None = None
    std: float | None = None
    cv: float | None = None
    median: float | None = None
    q1: float | None = None
    q3: float | None = None
    mode: float | None = None
    mode_rate: float | None = None
    zeros: float | None = None
    entropy: float | None = None

    def values(self, schedule: Sequence[str] = STAT_NAMES) -> list[float]:
        return [getattr(self, s) for s in schedule]

    def as_dict(self) -> dict:
        return {k: v for k, v in asdict(self).items() if v is not None}


def _is_integral(x: np.ndarray) -> bool:
    return bool(np.all(np.floor(x) == x))


def _canonical(x: np.ndarray) -> np.ndarray:
    """Round real data to ``CANONICAL_DIGITS`` digits relative to its largest magnitude.

    Values that differ only by summation-order rounding then bin and tie
    identically.
    """
    if x.size == 0 or _is_integral(x):
        return x
    top = float(np.abs(x).max())
    decimals = CANONICAL_DIGITS - 1 - math.floor(math.log10(top))
    return np.round(x, decimals)


def entropy(values: Iterable[float]) -> float:
    """Shannon entropy (nats) of the empirical value distribution.

    Integer-valued data uses exact distinct values; anything else is first
    binned into ``ENTROPY_BINS`` equal-width bins over ``[min, max]``.
    """
    x = np.asarray(values, dtype=float)
    if x.size == 0:
        return 0.0
    if _is_integral(x):
        _, counts = np.unique(x, return_counts=True)
    else:
        x = _canonical(x)
        lo, hi = x.min(), x.max()
        if lo == hi:
            return 0.0
        counts, _ = np.histogram(x, bins=ENTROPY_BINS, range=(lo, hi))
        counts = counts[counts > 0]
    if counts.size == 1:
        return 0.0
    p = counts / x.size
    return float(-(p * np.log(p)).sum())


def summarize(values: Iterable[float], schedule: Sequence[str] = STAT_NAMES) -> StatSummary:
    """Compute the requested statistics; unrequested fields stay ``None``.

    An empty sequence gives 0 for every requested statistic.
    """
    want = set(schedule)
    unknown = want - set(STAT_NAMES)
    if unknown:
        raise ValueError(f"unknown statistics {sorted(unknown)}")
    x = np.asarray(values if isinstance(values, np.ndarray) else list(values), dtype=float)
    if x.size == 0:
        return StatSummary(**{s: 0.0 for s in want})
    out: dict[str, float] = {}
    n = x.size
    out["count"] = float(n)
    out["min"] = float(x.min())
    out["max"] = float(x.max())
    mean = float(x.mean())
    if out["min"] == out["max"]:
        mean = out["min"]  # exact for constant data
    out["mean"] = mean
    if want & {"std", "cv"}:
        std = 0.0 if out["min"] == out["max"] else float(x.std())
        out["std"] = std
        out["cv"] = std / mean if mean != 0 else 0.0
    if want & {"median", "q1", "q3"}:
        q1, q2, q3 = np.percentile(x, [25, 50, 75])
        out.update(q1=float(q1), median=float(q2), q3=float(q3))
    if want & {"mode", "mode_rate"}:
        uniq, counts = np.unique(_canonical(x), return_counts=True)
        i = int(np.argmax(counts))  # first max == smallest value
        out["mode"] = float(uniq[i])
        out["mode_rate"] = counts[i] / n
    if "zeros" in want:
        out["zeros"] = float(np.count_nonzero(x == 0))
    if "entropy" in want:
        out["entropy"] = entropy(x)
    return StatSummary(**{s: out[s] for s in want})


def safe_ratio(num: float, den: float) -> float:
    return num / den if den else 0.0


def log2_mean_exp2(exponents: Sequence[float]) -> float:
    """``log2(mean(2**e))`` without overflow."""
    e = np.asarray(exponents, dtype=float)
    if e.size == 0:
        return 0.0
    m = e.max()
    return float(m + math.log2(np.exp2(e - m).mean()))
