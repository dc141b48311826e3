"""Feature manifest, set definitions and per-instance extraction."""

from __future__ import annotations

import enum
import json
import logging
import math
import time
from dataclasses import dataclass, field
from functools import lru_cache

from . import alf, ant, probing, satzilla
from .cnf import Cnf
from .preprocess import preprocess

log = logging.getLogger(__name__)

FAMILIES = ("satzilla_base", "satzilla_probing", "ant", "alf")
SET_FAMILIES = {
    "satzilla_base": ("satzilla_base",),
    "satzilla_full": ("satzilla_base", "satzilla_probing"),
    "ant": ("ant",),
    "alf": ("alf",),
    "all": FAMILIES,
}
SET_ALIASES = {"base": "satzilla_base", "full": "satzilla_full"}
EXPECTED_ARITY = {"satzilla_base": 38, "satzilla_full": 69, "ant": 4, "alf": 254, "all": 327}
ANT_NAMES = ["ant_powerlaw_alpha", "ant_vig_modularity", "ant_vig_fractal_dim", "ant_cvig_fractal_dim"]

# numeric stand-ins for undefined values; never NaN in exports
SENTINELS = {
    "ant_powerlaw_alpha": ant.DEGENERATE_ALPHA,
    "ant_vig_modularity": 0.0,
    "ant_vig_fractal_dim": 0.0,
    "ant_cvig_fractal_dim": 0.0,
}
CONVENTIONS = {
    "entropy": "natural log; integer data by distinct value, otherwise 100 equal-width bins",
    "std": "population",
    "cv": "std / mean, 0 when mean == 0",
    "quartiles": "linear interpolation (inclusive)",
    "mode": "ties broken by smallest value",
    "empty_sequence": "every statistic 0",
    "resolution_weight": "2 ** -(|Ci| + |Cj| - 2)",
    "variables_weight": "sum over shared clauses c of 2 ** -|c|",
    "big_weight": "constant, degree statistics only",
    "alf_arity_note": "254 = 2 bipartite graphs x 26 + 7 graphs x 13 degree stats + "
                      "5 x 13 weight stats + 7 edge counts + 3 x 13 literal-weight stats",
}


class Status(str, enum.Enum):
    OK = "OK"
    SOLVED_BY_PREPROCESSING = "SOLVED_BY_PREPROCESSING"
    TIMEOUT = "TIMEOUT"
    ERROR = "ERROR"


@dataclass(frozen=True)
class FeatureDescriptor:
    name: str
    family: str
    source: str
    stat: str | None = None


@dataclass(frozen=True)
class FeatureManifest:
    features: tuple[FeatureDescriptor, ...]

    def names(self, set_name: str = "all") -> list[str]:
        fams = SET_FAMILIES[canonical_set(set_name)]
        return [f.name for f in self.features if f.family in fams]

    def arity(self, set_name: str) -> int:
        return len(self.names(set_name))

    def to_json(self) -> str:
        doc = {
            "features": [
                {"index": i, "name": f.name, "family": f.family, "source": f.source, "stat": f.stat}
                for i, f in enumerate(self.features)
            ],
            "sets": {s: self.names(s) for s in SET_FAMILIES},
            "sentinels": SENTINELS,
            "conventions": CONVENTIONS,
        }
        return json.dumps(doc, indent=2)


def canonical_set(set_name: str) -> str:
    name = SET_ALIASES.get(set_name, set_name)
    if name not in SET_FAMILIES:
        raise KeyError(f"unknown feature set {set_name!r}; expected one of "
                       f"{', '.join([*SET_FAMILIES, *SET_ALIASES])}")
    return name


def _split(name: str, stats) -> tuple[str, str | None]:
    for s in sorted(stats, key=len, reverse=True):
        if name.endswith("_" + s):
            return name[: -len(s) - 1], s
    return name, None


@lru_cache(maxsize=None)
def manifest() -> FeatureManifest:
    from .stats import STAT_NAMES

    feats = []
    for fam, names in (("satzilla_base", satzilla.BASE_NAMES),
                       ("satzilla_probing", satzilla.PROBING_NAMES),
                       ("ant", ANT_NAMES),
                       ("alf", alf.ALF_NAMES)):
        for n in names:
            src, stat = _split(n, STAT_NAMES)
            feats.append(FeatureDescriptor(f"{fam.split('_')[0]}_{n}" if fam.startswith("satzilla")
                                           else n, fam, src, stat))
    return FeatureManifest(tuple(feats))


def validate_manifest(m: FeatureManifest | None = None) -> list[str]:
    """Arity and membership diagnostics; an empty list means the manifest is sound."""
    m = m or manifest()
    problems = []
    names = [f.name for f in m.features]
    if len(set(names)) != len(names):
        problems.append("duplicate feature names")
    for s, want in EXPECTED_ARITY.items():
        got = m.arity(s)
        if got != want:
            problems.append(f"set {s}: arity {got}, expected {want}")
    if not set(m.names("satzilla_base")) <= set(m.names("satzilla_full")):
        problems.append("base is not a subset of full")
    union = m.names("satzilla_full") + m.names("ant") + m.names("alf")
    if m.names("all") != union:
        problems.append("all != full + ant + alf")
    return problems


@dataclass
class ExtractConfig:
    seed: int = 0
    probes: int = probing.DEFAULT_PROBES
    ls_runs: int = probing.DEFAULT_LS_RUNS
    ls_cutoff: int = probing.DEFAULT_LS_CUTOFF
    probe_budget_ms: float | None = None
    preprocess: str = "basic"  # "none" or "basic"
    preprocess_all: bool = False
    ls_algorithm: str = "saps"  # "gsat" swaps the local-search engine, same feature names


@dataclass
class FeatureVector:
    instance: str
    set_name: str
    names: list[str]
    values: list[float | None]
    status: Status = Status.OK
    timings: dict[str, float] = field(default_factory=dict)
    message: str = ""
    truncated: bool = False

    def as_dict(self) -> dict:
        return {
            "instance": self.instance,
            "set": self.set_name,
            "status": self.status.value,
            "features": dict(zip(self.names, self.values)),
            "timings": self.timings,
            **({"message": self.message} if self.message else {}),
        }


def _finite(values):
    return [v if v is None or math.isfinite(v) else 0.0 for v in values]


def extract(cnf: Cnf, set_name: str = "all", config: ExtractConfig | None = None,
            instance: str = "") -> FeatureVector:
    """Extract one feature set from one formula.

    SATzilla families read the preprocessed formula (unless preprocessing is
    off); ANT and ALF read the raw formula unless ``preprocess_all`` is set.
    If preprocessing decides the formula the SATzilla slots are left empty.
    """
    config = config or ExtractConfig()
    set_name = canonical_set(set_name)
    fams = SET_FAMILIES[set_name]
    names = manifest().names(set_name)
    timings: dict[str, float] = {}
    values: dict[str, list[float] | None] = {}
    solved = False
    truncated = False
    try:
        reduced = cnf
        t0 = time.perf_counter()
        if config.preprocess not in ("none", "basic"):
            raise ValueError(f"unknown preprocess mode {config.preprocess!r}")
        needs_pre = config.preprocess_all or any(f.startswith("satzilla") for f in fams)
        if config.preprocess == "basic" and needs_pre:
            pre = preprocess(cnf)
            solved = pre.solved
            reduced = pre.cnf
        timings["preprocess"] = time.perf_counter() - t0
        structural = reduced if config.preprocess_all else cnf

        for fam in fams:
            t0 = time.perf_counter()
            if fam.startswith("satzilla") or (config.preprocess_all and fam in ("ant", "alf")):
                if solved:
                    values[fam] = None
                    continue
            if fam == "satzilla_base":
                values[fam] = satzilla.base_vector(reduced, cnf)
            elif fam == "satzilla_probing":
                rep = probing.probe(reduced, config.seed, config.probes, config.ls_runs,
                                    config.ls_cutoff, config.probe_budget_ms, config.ls_algorithm)
                truncated = rep.truncated
                values[fam] = satzilla.probing_vector(rep, reduced.num_vars)
            elif fam == "ant":
                values[fam] = ant.ant_feature_vector(structural, config.seed)
            elif fam == "alf":
                values[fam] = alf.alf_feature_vector(structural)
            timings[fam] = time.perf_counter() - t0
    except Exception as exc:  # a failing family poisons the whole vector
        log.debug("extraction failed for %s", instance, exc_info=True)
        return FeatureVector(instance, set_name, names, [], Status.ERROR, timings,
                             f"{type(exc).__name__}: {exc}")

    flat: list[float | None] = []
    m = manifest()
    for fam in fams:
        width = sum(1 for f in m.features if f.family == fam)
        vals = values[fam]
        flat += [None] * width if vals is None else _finite(vals)
    status = Status.SOLVED_BY_PREPROCESSING if solved else Status.OK
    if truncated and status is Status.OK:
        status = Status.TIMEOUT
    if status is Status.SOLVED_BY_PREPROCESSING and all(v is None for v in flat):
        flat = []
    return FeatureVector(instance, set_name, names, flat, status, timings, truncated=truncated)
