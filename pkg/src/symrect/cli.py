"""Command line front end.

Subcommands: ``partition``, ``mincuts``, ``density-map`` and
``perf-profile``. Exit status is 2 for unreadable input or bad arguments,
3 for infeasible parameters.
"""

from __future__ import annotations

import argparse
import csv
import itertools
import json
import logging
import os
import sys
from concurrent.futures import ThreadPoolExecutor

from .ccp import InfeasibleError
from .metrics import MliConfig
from .pipeline import MLI_ALGOS, MNC_ALGOS, ordered, resolve_max_load, run_mincuts, run_partition
from .report import (
    DEFAULT_X_GRID,
    PartitionReport,
    ProfileError,
    density_csv,
    density_grid,
    density_table,
    performance_profile,
    profile_csv,
    reports_csv,
)
from .sparse import DimensionError, MatrixParseError, load_matrix, source_digest

log = logging.getLogger("symrect")

EXIT_PARSE = 2
EXIT_INFEASIBLE = 3


ORDERS = ("nat", "deg", "rcm")


def _csv_list(kind=str, choices=None):
    def parse(text):
        try:
            items = [kind(x) for x in text.split(",") if x]
        except ValueError:
            raise argparse.ArgumentTypeError("bad list %r" % text) from None
        bad = [x for x in items if choices and x not in choices]
        if bad or not items:
            raise argparse.ArgumentTypeError("bad value(s) in %r" % text)
        return items
    return parse


def _add_input(p):
    p.add_argument("--input", required=True, help="matrix file (.mtx or edge list, optionally gzipped)")
    p.add_argument("--format", choices=("mtx", "edges"), default=None,
                   help="input format (default: from the file extension)")
    p.add_argument("--symmetrize", action=argparse.BooleanOptionalAction, default=True,
                   help="add (v, u) for every stored (u, v) (default: on)")
    p.add_argument("--drop-self-loops", action="store_true")
    p.add_argument("--compact-ids", action="store_true",
                   help="renumber edge-list vertex ids to 0..k-1 (ids with gaps)")
    p.add_argument("--order", type=_csv_list(str.lower, ORDERS), default=["nat"],
                   help="comma list of nat, deg, rcm")
    p.add_argument("--tau", type=int, default=20)
    p.add_argument("--epsilon", type=float, default=1e-4)
    p.add_argument("--output", choices=("json", "csv"), default="json")
    p.add_argument("--out", help="write to this file instead of stdout")
    p.add_argument("--jobs", type=int, default=1, help="run combinations concurrently")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="symrect", description=__doc__.splitlines()[0])
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("partition", help="partition for a given number of intervals")
    _add_input(p)
    p.add_argument("--algo", type=_csv_list(str.lower), required=True,
                   help="comma list of " + ", ".join(MLI_ALGOS))
    p.add_argument("--parts", type=_csv_list(int), required=True, help="interval count(s)")
    p.add_argument("--col-parts", type=int, default=None, help="column intervals for nic")

    m = sub.add_parser("mincuts", help="fewest intervals under a tile load bound")
    _add_input(m)
    m.add_argument("--algo", type=_csv_list(str.lower), required=True,
                   help="comma list of " + ", ".join(MNC_ALGOS))
    g = m.add_mutually_exclusive_group(required=True)
    g.add_argument("--max-load", type=int, help="absolute bound Z on tile nonzeros")
    g.add_argument("--max-load-frac", type=float, help="bound as a fraction of nnz")

    d = sub.add_parser("density-map", help="tile nonzero percentages")
    d.add_argument("--report", help="JSON report to read the tile loads from")
    d.add_argument("--input")
    d.add_argument("--format", choices=("mtx", "edges"), default=None)
    d.add_argument("--symmetrize", action=argparse.BooleanOptionalAction, default=True)
    d.add_argument("--drop-self-loops", action="store_true")
    d.add_argument("--compact-ids", action="store_true")
    d.add_argument("--order", type=str.lower, choices=ORDERS, default="nat")
    d.add_argument("--algo", type=str.lower, choices=MLI_ALGOS, default="ptc")
    d.add_argument("--parts", type=int, default=8)
    d.add_argument("--tau", type=int, default=20)
    d.add_argument("--epsilon", type=float, default=1e-4)
    d.add_argument("--csv", dest="csv_out", help="write the CSV grid here")
    d.add_argument("--out", help="write output here instead of stdout")

    f = sub.add_parser("perf-profile", help="performance profile over reports")
    f.add_argument("reports", nargs="*", help="JSON report files (objects or arrays)")
    f.add_argument("--table", help="CSV with columns instance,algorithm,lambda")
    f.add_argument("--x-grid", type=_csv_list(float), default=list(DEFAULT_X_GRID))
    f.add_argument("--output", choices=("json", "csv"), default="csv")
    f.add_argument("--out")
    return parser


def _format_of(path, fmt):
    if fmt:
        return fmt
    name = path.lower()
    if name.endswith(".gz"):
        name = name[:-3]
    return "mtx" if name.endswith(".mtx") else "edges"


def _load(args):
    fmt = _format_of(args.input, args.format)
    A = load_matrix(args.input, fmt, symmetrize=args.symmetrize,
                    drop_self_loops=args.drop_self_loops, compact_ids=args.compact_ids)
    info = {
        "name": os.path.basename(args.input),
        "n": A.n,
        "nnz": A.nnz,
        "sha256": source_digest(args.input),
        "symmetrized": bool(args.symmetrize),
    }
    return A, info


def _write(args, text):
    if getattr(args, "out", None):
        with open(args.out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _emit_reports(args, reports):
    if args.output == "csv":
        _write(args, reports_csv(reports))
    elif len(reports) == 1:
        _write(args, reports[0].to_json())
    else:
        _write(args, json.dumps([r.to_dict() for r in reports], sort_keys=True, indent=2) + "\n")


def _run_combos(args, A, fn, combos):
    orders = sorted({c[0] for c in combos})
    permuted = {o: ordered(A, o) for o in orders}

    def one(combo):
        order, *rest = combo
        return fn(permuted[order], order, *rest)

    if args.jobs > 1 and len(combos) > 1:
        with ThreadPoolExecutor(max_workers=args.jobs) as pool:
            return list(pool.map(one, combos))
    return [one(c) for c in combos]


def cmd_partition(args):
    for a in args.algo:
        if a not in MLI_ALGOS:
            raise SystemExit(_usage_error("unknown algorithm %r" % a))
    A, info = _load(args)
    cfg = MliConfig(args.tau, args.epsilon)
    combos = list(itertools.product(args.order, args.algo, args.parts))

    def fn(M, order, algo, p):
        return run_partition(A, algo, p, order, cfg, q=args.col_parts, input_info=info, permuted=M)

    reports = _run_combos(args, A, fn, combos)
    _emit_reports(args, reports)
    return reports


def cmd_mincuts(args):
    for a in args.algo:
        if a not in MNC_ALGOS:
            raise SystemExit(_usage_error("unknown algorithm %r" % a))
    A, info = _load(args)
    cfg = MliConfig(args.tau, args.epsilon)
    Z = resolve_max_load(A.nnz, args.max_load, args.max_load_frac)
    if Z < 1:
        raise InfeasibleError("max load must be >= 1")
    combos = list(itertools.product(args.order, args.algo))

    def fn(M, order, algo):
        return run_mincuts(A, algo, Z, order, cfg, input_info=info, permuted=M)

    reports = _run_combos(args, A, fn, combos)
    _emit_reports(args, reports)
    return reports


def cmd_density_map(args):
    if args.report:
        with open(args.report) as fh:
            data = json.load(fh)
        if isinstance(data, list):
            data = data[0]
        report = PartitionReport.from_dict(data)
    elif args.input:
        A, info = _load(args)
        report = run_partition(A, args.algo, args.parts, args.order,
                               MliConfig(args.tau, args.epsilon), input_info=info)
    else:
        raise SystemExit(_usage_error("density-map needs --report or --input"))
    grid = density_grid(report.tile_loads)
    text_csv = density_csv(grid)
    table = density_table(grid)
    if args.csv_out:
        with open(args.csv_out, "w") as fh:
            fh.write(text_csv)
        _write(args, table)
    else:
        _write(args, text_csv + "\n" + table)
    return grid


def _read_results(args):
    rows = []
    for path in args.reports:
        with open(path) as fh:
            data = json.load(fh)
        for d in data if isinstance(data, list) else [data]:
            r = PartitionReport.from_dict(d)
            rows.append((r.instance_key, r.algorithm, r.lam))
    if args.table:
        with open(args.table, newline="") as fh:
            for rec in csv.DictReader(fh):
                rows.append((rec["instance"], rec["algorithm"], float(rec["lambda"])))
    return rows


def cmd_perf_profile(args):
    rows = _read_results(args)
    profile = performance_profile(rows, args.x_grid)
    if args.output == "json":
        _write(args, json.dumps(profile, sort_keys=True, indent=2) + "\n")
    else:
        _write(args, profile_csv(profile))
    return profile


def _usage_error(msg):
    print(f"symrect: error: {msg}", file=sys.stderr)
    return EXIT_PARSE


COMMANDS = {
    "partition": cmd_partition,
    "mincuts": cmd_mincuts,
    "density-map": cmd_density_map,
    "perf-profile": cmd_perf_profile,
}


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(message)s", stream=sys.stderr)
    try:
        COMMANDS[args.command](args)
    except (MatrixParseError, DimensionError, ProfileError, OSError) as exc:
        print(f"symrect: error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except InfeasibleError as exc:
        print(f"symrect: infeasible: {exc}", file=sys.stderr)
        return EXIT_INFEASIBLE
    except SystemExit as exc:
        return int(exc.code or 0)
    return 0


if __name__ == "__main__":
    sys.exit(main())
