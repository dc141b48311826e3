"""``satfeat`` command line: extract, generate, bench, manifest."""

from __future__ import annotations

import argparse
import csv
import glob
import io
import json
import logging
import os
import sys
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path

from . import generators
from .bench import DEFAULT_SETS, DEFAULT_SIZES, plot_data, run_bench
from .cnf import read_cnf, write_dimacs
from .graphs import BUILDERS, write_edge_list
from .probing import LS_ALGORITHMS
from .registry import SET_ALIASES, SET_FAMILIES, ExtractConfig, FeatureVector, Status, extract, manifest

log = logging.getLogger("satfeat")

CNF_SUFFIXES = (".cnf", ".dimacs")
SET_CHOICES = [*SET_FAMILIES, *SET_ALIASES]


def default_seed() -> int:
    return int(os.environ.get("SATFEAT_SEED", "0"))


def collect_inputs(items: list[str]) -> list[str]:
    """Files, directories (searched recursively for .cnf/.dimacs) and globs; sorted, unique."""
    paths = set()
    for item in items:
        p = Path(item)
        if p.is_dir():
            paths.update(str(f) for f in p.rglob("*") if f.is_file() and f.name.endswith(CNF_SUFFIXES))
        elif p.exists():
            paths.add(str(p))
        else:
            matches = glob.glob(item, recursive=True)
            paths.update(matches or [item])  # missing files become ERROR rows
    return sorted(paths)


def read_labels(path: str | None) -> dict[str, str]:
    """Two-column CSV ``instance,label``; instances match by full path or file name."""
    if not path:
        return {}
    labels = {}
    with open(path, newline="") as fh:
        for row in csv.reader(fh):
            if len(row) < 2 or row[0] == "instance":
                continue
            labels[row[0].strip()] = row[1].strip()
    return labels


def _label_for(instance: str, labels: dict[str, str]) -> str:
    return labels.get(instance, labels.get(Path(instance).name, ""))


def _extract_file(args) -> FeatureVector:
    path, set_name, config, dump_dir = args
    try:
        cnf = read_cnf(path)
    except Exception as exc:
        return FeatureVector(path, set_name, manifest().names(set_name), [], Status.ERROR,
                             message=f"{type(exc).__name__}: {exc}")
    if dump_dir:
        out = Path(dump_dir)
        out.mkdir(parents=True, exist_ok=True)
        for name, build in BUILDERS.items():
            with open(out / f"{Path(path).name}.{name}.edges", "w") as fh:
                write_edge_list(build(cnf), fh)
    return extract(cnf, set_name, config, instance=path)


def _fmt(v) -> str:
    return "" if v is None else repr(float(v))


def write_csv(rows: list[FeatureVector], names: list[str], labels: dict[str, str] | None, fh) -> None:
    w = csv.writer(fh, lineterminator="\n")
    head = ["instance", "status"] + (["label"] if labels is not None else []) + names
    w.writerow(head)
    for fv in rows:
        vals = fv.values if fv.values else [None] * len(names)
        lab = [_label_for(fv.instance, labels)] if labels is not None else []
        w.writerow([fv.instance, fv.status.value, *lab, *map(_fmt, vals)])


def write_json(rows: list[FeatureVector], labels: dict[str, str] | None, fh) -> None:
    docs = []
    for fv in rows:
        d = fv.as_dict()
        if labels is not None:
            d["label"] = _label_for(fv.instance, labels)
        docs.append(d)
    json.dump(docs, fh, indent=2)
    fh.write("\n")


def cmd_extract(ns) -> int:
    set_name = SET_ALIASES.get(ns.set, ns.set)
    config = ExtractConfig(seed=ns.seed, probes=ns.probes, ls_runs=ns.ls_runs,
                           ls_cutoff=ns.ls_cutoff, probe_budget_ms=ns.probe_budget_ms,
                           preprocess=ns.preprocess, preprocess_all=ns.preprocess_all,
                           ls_algorithm=ns.ls_algorithm)
    paths = collect_inputs(ns.inputs)
    if not paths:
        log.error("no input files")
        return 2
    jobs = [(p, set_name, config, ns.dump_graphs) for p in paths]
    if ns.jobs > 1:
        with ProcessPoolExecutor(max_workers=ns.jobs) as pool:
            rows = list(pool.map(_extract_file, jobs))
    else:
        rows = [_extract_file(j) for j in jobs]
    rows.sort(key=lambda fv: fv.instance)
    for fv in rows:
        if fv.status is Status.ERROR:
            log.warning("%s: %s", fv.instance, fv.message)
    labels = read_labels(ns.labels) if ns.labels else None
    buf = io.StringIO()
    if ns.format == "csv":
        write_csv(rows, manifest().names(set_name), labels, buf)
    else:
        write_json(rows, labels, buf)
    _emit(buf.getvalue(), ns.output)
    ok = all(fv.status in (Status.OK, Status.SOLVED_BY_PREPROCESSING) for fv in rows)
    return 0 if ok else 1


def _emit(text: str, output: str | None) -> None:
    if output and output != "-":
        Path(output).write_text(text, newline="\n")
    else:
        sys.stdout.write(text)


def cmd_generate(ns) -> int:
    out = Path(ns.out)
    out.mkdir(parents=True, exist_ok=True)
    params = {"n": ns.n, "ratio": ns.ratio, "k": ns.k, "p": ns.p, "p_edge": ns.p_edge}
    params = {k: v for k, v in params.items() if v is not None}
    label_rows = []
    for i in range(ns.count):
        seed = ns.seed + i
        try:
            cnf = generators.generate(ns.family, seed=seed, **params)
        except ValueError as exc:
            log.error("%s", exc)
            return 2
        name = f"{ns.family}-{i:04d}.cnf"
        desc = " ".join(f"{k}={v}" for k, v in sorted(params.items()))
        comments = [f"satfeat family={ns.family}", f"satfeat seed={seed} {desc}".rstrip()]
        (out / name).write_bytes(write_dimacs(cnf, comments))
        label_rows.append((name, ns.family))
    labels_path = out / "labels.csv"
    existing = read_labels(str(labels_path)) if labels_path.exists() else {}
    existing.update(dict(label_rows))
    with open(labels_path, "w", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(["instance", "label"])
        w.writerows(sorted(existing.items()))
    return 0


def cmd_bench(ns) -> int:
    sets = [SET_ALIASES.get(s, s) for s in ns.sets.split(",")]
    sizes = [int(x) for x in ns.sizes.split(",")]
    config = ExtractConfig(seed=ns.seed, probes=ns.probes, ls_runs=ns.ls_runs, ls_cutoff=ns.ls_cutoff,
                           probe_budget_ms=ns.probe_budget_ms, ls_algorithm=ns.ls_algorithm)
    rows = run_bench(sizes, sets, ns.repeats, ns.seed, ns.ratio, ns.inner, ns.clock, config)
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["size", "set", "repeats", "mean_s", "var_s"])
    for r in rows:
        w.writerow([r.size, r.set_name, r.repeats, repr(r.mean_s), repr(r.var_s)])
    _emit(buf.getvalue(), ns.output)
    if ns.plot_data:
        Path(ns.plot_data).write_text(json.dumps(plot_data(rows), indent=2) + "\n")
    return 0


def cmd_manifest(ns) -> int:
    _emit(manifest().to_json() + "\n", ns.output)
    return 0


def _set_list(text: str) -> str:
    for s in text.split(","):
        if s not in SET_CHOICES:
            raise argparse.ArgumentTypeError(f"unknown set {s!r}")
    return text


def _int_list(text: str) -> str:
    try:
        [int(x) for x in text.split(",")]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from None
    return text


def _add_probe_args(p) -> None:
    p.add_argument("--seed", type=int, default=default_seed(), help="master seed (env SATFEAT_SEED)")
    p.add_argument("--probes", type=int, default=100, help="random DPLL probes")
    p.add_argument("--ls-runs", type=int, default=30)
    p.add_argument("--ls-cutoff", type=int, default=10_000, help="max SAPS steps per run")
    p.add_argument("--probe-budget-ms", type=float, default=None)
    p.add_argument("--ls-algorithm", choices=LS_ALGORITHMS, default="saps",
                   help="local-search engine for the probing features")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="satfeat", description="SAT instance feature extraction")
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("extract", help="extract features from DIMACS files")
    p.add_argument("inputs", nargs="+", help="files, directories or glob patterns")
    p.add_argument("--set", default="all", choices=SET_CHOICES)
    p.add_argument("--format", default="csv", choices=("csv", "json"))
    p.add_argument("-o", "--output", help="output file (default stdout)")
    p.add_argument("--labels", help="CSV of instance,label pairs")
    p.add_argument("-j", "--jobs", type=int, default=1)
    p.add_argument("--preprocess", default="basic", choices=("none", "basic"))
    p.add_argument("--preprocess-all", action="store_true",
                   help="feed the preprocessed formula to ANT and ALF as well")
    p.add_argument("--dump-graphs", metavar="DIR", help="write every formula graph as an edge list")
    _add_probe_args(p)
    p.set_defaults(func=cmd_extract)

    p = sub.add_parser("generate", help="write generated DIMACS instances")
    p.add_argument("family", choices=generators.FAMILIES)
    p.add_argument("--out", required=True)
    p.add_argument("--count", type=int, default=1)
    p.add_argument("--seed", type=int, default=default_seed())
    p.add_argument("--n", type=int, help="variables (random-ksat) or vertices (graph-coloring)")
    p.add_argument("--ratio", type=float, help="clause/variable ratio (random-ksat)")
    p.add_argument("--k", type=int, help="clause width (random-ksat) or colours (graph-coloring)")
    p.add_argument("--p", type=int, help="holes (pigeonhole)")
    p.add_argument("--p-edge", type=float, help="edge probability (graph-coloring)")
    p.set_defaults(func=cmd_generate)

    p = sub.add_parser("bench", help="time feature sets on random 3-SAT")
    p.add_argument("--sizes", type=_int_list, default=",".join(map(str, DEFAULT_SIZES)))
    p.add_argument("--sets", type=_set_list, default=",".join(DEFAULT_SETS))
    p.add_argument("--repeats", type=int, default=3)
    p.add_argument("--inner", type=int, default=1, help="timings per instance, fastest kept")
    p.add_argument("--ratio", type=float, default=4.2)
    p.add_argument("--clock", choices=("wall", "cpu"), default="wall")
    p.add_argument("-o", "--output")
    p.add_argument("--plot-data", help="also write per-set series as JSON")
    _add_probe_args(p)
    p.set_defaults(func=cmd_bench)

    p = sub.add_parser("manifest", help="dump the feature manifest as JSON")
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_manifest)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    ns = parser.parse_args(argv)
    if getattr(ns, "jobs", 1) < 1:
        parser.error("--jobs must be >= 1")
    if getattr(ns, "ls_cutoff", 1) < 1:
        parser.error("--ls-cutoff must be >= 1")
    logging.basicConfig(level=logging.DEBUG if ns.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    return ns.func(ns)


if __name__ == "__main__":
    sys.exit(main())
