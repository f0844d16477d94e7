"""Command-line interface.

Exit codes: 0 success, 1 verification mismatch, 2 invalid input.
"""

from __future__ import annotations

import argparse
import os
import sys

from . import oracles
from .arithmetic import factor_squarefree
from .cut_experiments import robustness_trials, trials_to_csv
from .errors import ComaximalError
from .explicit_graph import DEFAULT_GRAPH_CAP, build_graph, zero_set
from .reports import (
    DEFAULT_FLOW_CAP,
    SWEEP_COLUMNS,
    analyze,
    export_explicit,
    export_quotient,
    sweep_rows,
    verify,
    write_csv,
)
from .support_model import distance_case, layer_distance

CAP_ENV = "COMAXIMAL_CAP"


def resolve_caps(flag: int | None) -> tuple[int, int]:
    """(graph cap, flow cap).  ``--cap`` beats ``COMAXIMAL_CAP`` beats the defaults."""
    if flag is not None:
        return flag, flag
    env = os.environ.get(CAP_ENV)
    if env:
        try:
            value = int(env)
        except ValueError:
            raise ComaximalError(f"{CAP_ENV} must be an integer, got {env!r}") from None
        return value, value
    return DEFAULT_GRAPH_CAP, DEFAULT_FLOW_CAP


def _emit(text: str, path: str | None) -> None:
    if path:
        with open(path, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def cmd_analyze(args) -> int:
    report = analyze(args.n)
    _emit(report.to_json() if args.json else report.render(), args.output)
    return 0


def cmd_verify(args) -> int:
    graph_cap, flow_cap = resolve_caps(args.cap)
    report = verify(args.n, graph_cap, flow_cap, deep=args.deep, trials=args.trials, seed=args.seed)
    sys.stdout.write(report.render())
    return 0 if report.passed else 1


def cmd_sweep(args) -> int:
    if args.max < 6:
        raise ComaximalError("--max must be at least 6")
    _, flow_cap = resolve_caps(args.cap)
    rows = list(sweep_rows(args.max, flow_cap))
    _emit(write_csv(rows, SWEEP_COLUMNS), args.output)
    return 0 if all(r["match"] for r in rows) else 1


def cmd_export(args) -> int:
    mod = factor_squarefree(args.n)
    if args.level == "quotient":
        text = export_quotient(mod, args.format)
    else:
        graph_cap, _ = resolve_caps(args.cap)
        text = export_explicit(build_graph(mod, cap=graph_cap), args.format)
    _emit(text, args.output)
    return 0


def cmd_distance(args) -> int:
    mod = factor_squarefree(args.n)
    if args.x == args.y:
        zx = zero_set(mod, args.x)
        print(f"x = y = {args.x} (Z = {zx}): distance 0")
        return 0
    zx, zy = zero_set(mod, args.x), zero_set(mod, args.y)
    d = layer_distance(zx, zy)
    print(f"Z({args.x}) = {zx}, Z({args.y}) = {zy}: {distance_case(zx, zy)} -> distance {d}")
    graph_cap, _ = resolve_caps(args.cap)
    if mod.n > graph_cap:
        print(f"BFS skipped: n > cap {graph_cap}")
        return 0
    observed = oracles.bfs_distances(build_graph(mod, cap=graph_cap), args.x)[args.y]
    match = observed == d
    print(f"BFS distance {observed} ({'match' if match else 'MISMATCH'})")
    return 0 if match else 1


def cmd_robustness(args) -> int:
    mod = factor_squarefree(args.n)
    graph_cap, _ = resolve_caps(args.cap)
    trials = robustness_trials(mod, args.trials, args.seed, graph=build_graph(mod, cap=graph_cap))
    _emit(trials_to_csv(trials), args.output)
    sub = [t for t in trials if not t.control]
    ok = all(t.connected_after and 0 <= t.max_pair_distance_after <= 4 and t.anchor_found
             and 0 <= t.anchor_reach <= 2 for t in sub)
    ok = ok and all(not t.connected_after for t in trials if t.control)
    return 0 if ok else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="comaximal",
        description="Structural invariants of the comaximal-graph core G2 of Z_n for squarefree n.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def cap_flag(p):
        p.add_argument("--cap", type=int, default=None,
                       help=f"largest n for graph construction and flow oracles (env {CAP_ENV})")

    p = sub.add_parser("analyze", help="closed-form invariants and the per-layer table")
    p.add_argument("n", type=int)
    p.add_argument("--json", action="store_true", help="emit JSON instead of a text table")
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("verify", help="check every closed form against brute-force oracles")
    p.add_argument("n", type=int)
    cap_flag(p)
    p.add_argument("--deep", action="store_true", help="also run seeded deletion-robustness trials")
    p.add_argument("--trials", type=int, default=200)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("sweep", help="CSV of formula and oracle values for all squarefree composites")
    p.add_argument("--max", type=int, required=True)
    cap_flag(p)
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("export", help="quotient or explicit graph as DOT, CSV or JSON")
    p.add_argument("n", type=int)
    p.add_argument("--format", choices=("dot", "csv", "json"), default="dot")
    p.add_argument("--level", choices=("quotient", "explicit"), default="quotient")
    cap_flag(p)
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_export)

    p = sub.add_parser("distance", help="distance between two vertices, formula and BFS")
    p.add_argument("n", type=int)
    p.add_argument("x", type=int)
    p.add_argument("y", type=int)
    cap_flag(p)
    p.set_defaults(func=cmd_distance)

    p = sub.add_parser("robustness", help="seeded sub-threshold deletion trials as CSV")
    p.add_argument("n", type=int)
    p.add_argument("--trials", type=int, default=200)
    p.add_argument("--seed", type=int, default=0)
    cap_flag(p)
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_robustness)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except ComaximalError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
