"""Extraction-time benchmark on ratio-4.2 random 3-SAT."""

from __future__ import annotations

import gc
import statistics
import time
from dataclasses import dataclass

from .generators import random_ksat
from .registry import ExtractConfig, canonical_set, extract

DEFAULT_SIZES = tuple(range(100, 1001, 100))
DEFAULT_SETS = ("satzilla_base", "satzilla_full", "ant", "alf")
CLOCKS = {"wall": time.perf_counter, "cpu": time.process_time}


@dataclass(frozen=True)
class BenchRow:
    size: int
    set_name: str
    repeats: int
    mean_s: float
    var_s: float


def run_bench(sizes=DEFAULT_SIZES, set_names=DEFAULT_SETS, repeats: int = 3, seed: int = 0,
              ratio: float = 4.2, inner: int = 1, clock: str = "wall",
              config: ExtractConfig | None = None) -> list[BenchRow]:
    """Time every set on ``repeats`` instances per size.

    Each instance is timed ``inner`` times and the fastest run kept; all
    (size, set, instance) cells are visited round-robin so slow periods on
    the host spread evenly.
    """
    tick = CLOCKS[clock]
    set_names = [canonical_set(s) for s in set_names]
    config = config or ExtractConfig(seed=seed)
    instances = {n: [random_ksat(n, ratio, 3, seed + 1000 * i + n) for i in range(repeats)]
                 for n in sizes}
    best: dict[tuple[int, str, int], float] = {}
    for _ in range(inner):
        for n in sizes:
            for i, cnf in enumerate(instances[n]):
                for s in set_names:
                    gc.collect()
                    t0 = tick()
                    extract(cnf, s, config)
                    dt = tick() - t0
                    key = (n, s, i)
                    best[key] = min(best.get(key, dt), dt)
    rows = []
    for n in sizes:
        for s in set_names:
            ts = [best[(n, s, i)] for i in range(repeats)]
            var = statistics.pvariance(ts) if len(ts) > 1 else 0.0
            rows.append(BenchRow(n, s, repeats, statistics.fmean(ts), var))
    return rows


def plot_data(rows: list[BenchRow]) -> dict:
    """Series per set, ready for an external plotting tool."""
    out: dict[str, dict[str, list]] = {}
    for r in rows:
        series = out.setdefault(r.set_name, {"size": [], "mean_s": [], "var_s": []})
        series["size"].append(r.size)
        series["mean_s"].append(r.mean_s)
        series["var_s"].append(r.var_s)
    return out
