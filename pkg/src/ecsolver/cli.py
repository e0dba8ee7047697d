"""Command-line front door: solve, sweep, reproduce tables, sweep conjectures, serve.

Exit codes: 0 success, 1 table mismatch, 2 bad spec/usage, 3 state-budget
abort, 4 service bind failure.
"""

from __future__ import annotations

import argparse
import json
import os
import struct
import sys

from .conjectures import ALL_SWEEPS, MAX_SWEEP_N
from .graphs import GraphSpecError, parse_graph_spec, with_computed_symmetry
from .rules import variant_from_name
from .solver import (
    BudgetExceeded,
    DEFAULT_BUDGET,
    chi_sweep,
    solve,
)
from .statespace import CanonicalizationPolicy, encode, key_bit_width
from .tables import results_to_json, run_tables

EXIT_MISMATCH = 1
EXIT_PARSE = 2
EXIT_BUDGET = 3
EXIT_BIND = 4


def _add_common(p: argparse.ArgumentParser, graph: bool = True):
    if graph:
        p.add_argument("--graph", required=True, help="graph spec, e.g. path:4 or file:edges.txt")
        p.add_argument("--variant", default="a", help="game variant name (default: a)")
    p.add_argument("--threads", type=int, default=1, help="worker processes for batch commands")
    p.add_argument("--budget", type=int, default=None,
                   help=f"state budget (default {DEFAULT_BUDGET}; env ECS_BUDGET)")
    p.add_argument("--no-orbit", action="store_true", help="disable vertex-orbit reduction")
    p.add_argument("--no-color-canon", action="store_true", help="disable color relabeling")
    p.add_argument("--format", choices=("text", "json"), default="text")


def _budget(args) -> int:
    if args.budget is not None:
        return args.budget
    env = os.environ.get("ECS_BUDGET")
    if env:
        try:
            return int(env)
        except ValueError:
            print(f"ignoring malformed ECS_BUDGET={env!r}", file=sys.stderr)
    return DEFAULT_BUDGET


def _policy(args) -> CanonicalizationPolicy:
    return CanonicalizationPolicy(
        color_relabel=not args.no_color_canon,
        orbit_reduce=not args.no_orbit,
    )


def _load_instance(args):
    g = parse_graph_spec(args.graph)
    if not g.swap_classes and not g.rigid_autos and g.n <= 8:
        g = with_computed_symmetry(g)
    cfg = variant_from_name(args.variant, g.n)
    return g, cfg


def cmd_chi(args) -> int:
    try:
        g, cfg = _load_instance(args)
    except (GraphSpecError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    report = chi_sweep(
        g, cfg, k_min=args.k_min, k_max=args.k_max,
        policy=_policy(args), budget=_budget(args),
        stop_at_first_win=not args.full_sweep,
    )
    if args.format == "json":
        print(json.dumps(report.to_json_dict(), sort_keys=True))
    else:
        print(f"graph {g.label}   variant {cfg.display_name()}")
        for r in report.rows:
            line = f"  k={r.k}: {r.winner}"
            if r.winner != "aborted":
                line += (f"   states={r.states} attractor={r.attractor}"
                         f" iters={r.iterations} ms={r.ms:.0f}")
            print(line)
        print(f"  chi = {report.chi if report.chi is not None else 'none in range'}")
        for w in report.warnings:
            print(f"  warning: {w}")
    if any(r.winner == "aborted" for r in report.rows):
        return EXIT_BUDGET
    return 0


def cmd_solve(args) -> int:
    try:
        g, cfg = _load_instance(args)
    except (GraphSpecError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    try:
        arena, table = solve(g, args.k, cfg, _policy(args), _budget(args))
    except BudgetExceeded as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    winner = "bob" if table.in_attr[0] else "alice"
    payload = {
        "schema": 1,
        "graph": g.label,
        "variant": cfg.display_name(),
        "k": args.k,
        "winner": winner,
        "states": arena.n_states,
        "edges": arena.n_edges,
        "attractor": table.attractor_size,
        "iters": table.iterations,
        "initial_rank": table.rank[0] if table.in_attr[0] else None,
    }
    if args.dump_strategy:
        _dump_strategy(args.dump_strategy, arena, table)
        payload["strategy_file"] = args.dump_strategy
    if args.format == "json":
        print(json.dumps(payload, sort_keys=True))
    else:
        print(f"graph {g.label}   variant {cfg.display_name()}   k={args.k}")
        print(f"  winner: {winner}")
        print(f"  states={arena.n_states} edges={arena.n_edges}"
              f" attractor={table.attractor_size} iters={table.iterations}")
        if table.in_attr[0]:
            print(f"  the engine forces the win within {table.rank[0]} moves")
        if args.dump_strategy:
            print(f"  strategy table written to {args.dump_strategy}")
    return 0


def _dump_strategy(path: str, arena, table) -> None:
    """Binary status-table dump; layout documented in the README."""
    g = arena.graph
    key_bytes = (key_bit_width(g.n, arena.k) + 6 * g.n + 7) // 8
    with open(path, "wb") as out:
        out.write(b"ECSTBL01")
        variant = arena.cfg.display_name().encode()
        label = g.label.encode()
        out.write(struct.pack("<BBHQ", g.n, arena.k, key_bytes, arena.n_states))
        out.write(struct.pack("<H", len(variant)) + variant)
        out.write(struct.pack("<H", len(label)) + label)
        for i, s in enumerate(arena.states):
            out.write(encode(s, arena.cfg).to_bytes(key_bytes, "little"))
            e = table.best_edge[i]
            if e >= 0:
                packed = arena.succ_move[e]
                mv, mc = packed >> 8, packed & 0xFF
            else:
                mv = mc = 0xFF
            rank = table.rank[i] if table.in_attr[i] else 0xFFFFFFFF
            out.write(struct.pack("<BIBB", table.in_attr[i], rank, mv, mc))


def cmd_tables(args) -> int:
    def progress(res):
        if args.format == "text":
            expect = f"{res.row.check}{res.row.expected}" if res.row.expected is not None else "report"
            print(f"  [{res.status:4s}] {res.row.row_id:46s} {expect:10s}"
                  f" computed={res.computed} ({res.ms:.0f} ms)")
            if res.detail:
                print(f"         note: {res.detail}")

    results, all_pass = run_tables(
        suite=args.suite, threads=args.threads,
        policy=_policy(args), budget=_budget(args),
        progress=progress if args.format == "text" else None,
    )
    if args.format == "json":
        print(json.dumps(results_to_json(args.suite, results), sort_keys=True))
    else:
        failures = [r for r in results if r.passed is False]
        print(f"{len(results)} rows, {len(failures)} failing")
        for r in failures:
            print(f"  FAIL {r.row.row_id}: expected {r.row.check}{r.row.expected},"
                  f" computed {r.computed}")
    return 0 if all_pass else EXIT_MISMATCH


def cmd_conjectures(args) -> int:
    if args.max_n > MAX_SWEEP_N:
        print(f"error: --max-n capped at {MAX_SWEEP_N}", file=sys.stderr)
        return EXIT_PARSE
    names = args.which or list(ALL_SWEEPS)
    unknown = [n for n in names if n not in ALL_SWEEPS]
    if unknown:
        print(f"error: unknown sweep(s) {unknown}; choose from {sorted(ALL_SWEEPS)}",
              file=sys.stderr)
        return EXIT_PARSE
    reports = [ALL_SWEEPS[name](args.max_n, _budget(args)) for name in names]
    if args.format == "json":
        print(json.dumps(
            {"schema": 1, "sweeps": [r.to_json_dict() for r in reports]},
            sort_keys=True,
        ))
    else:
        for rep in reports:
            print(rep.summary())
            for line in rep.lines:
                print(f"    {line}")
            for ce in rep.counterexamples:
                print(f"    counterexample: {ce}")
            for u in rep.unresolved:
                print(f"    unresolved (budget): {u}")
    return 0


def cmd_serve(args) -> int:
    host, _, port_text = args.bind.rpartition(":")
    try:
        port = int(port_text)
    except ValueError:
        print(f"error: bad --bind {args.bind!r}", file=sys.stderr)
        return EXIT_PARSE
    host = host or "127.0.0.1"
    import socket

    probe = socket.socket(socket.AF_INET, socket.SOCK_STREAM)
    try:
        probe.setsockopt(socket.SOL_SOCKET, socket.SO_REUSEADDR, 1)
        probe.bind((host, port))
    except OSError as exc:
        print(f"error: cannot bind {host}:{port}: {exc}", file=sys.stderr)
        return EXIT_BIND
    finally:
        probe.close()

    import uvicorn

    from .service import create_app

    app = create_app(budget=_budget(args), ui_dir=args.ui_dir)
    uvicorn.run(app, host=host, port=port, log_level="warning")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="ecs",
        description="Exact solving and interactive play for eternal vertex coloring games",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("chi", help="sweep color counts and report the game value")
    _add_common(p)
    p.add_argument("--k-min", type=int, default=1)
    p.add_argument("--k-max", type=int, default=None,
                   help="default: max degree + 2, which always suffices")
    p.add_argument("--full-sweep", action="store_true",
                   help="keep solving past the first winning k")
    p.set_defaults(func=cmd_chi)

    p = sub.add_parser("solve", help="solve one (graph, k, variant) instance")
    _add_common(p)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--dump-strategy", metavar="PATH",
                   help="write the solved status table in binary form")
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("tables", help="recompute the built-in value suite")
    _add_common(p, graph=False)
    p.add_argument("--suite", choices=("paper", "paper-fast"), default="paper")
    p.set_defaults(func=cmd_tables)

    p = sub.add_parser("conjectures", help="sweep small graphs for counterexamples")
    _add_common(p, graph=False)
    p.add_argument("--max-n", type=int, default=5)
    p.add_argument("--which", nargs="*", metavar="SWEEP",
                   help=f"subset of {sorted(ALL_SWEEPS)}")
    p.set_defaults(func=cmd_conjectures)

    p = sub.add_parser("serve", help="start the interactive play service")
    _add_common(p, graph=False)
    p.add_argument("--bind", default="127.0.0.1:8080")
    p.add_argument("--ui-dir", default=None, help="static web UI bundle to serve at /")
    p.set_defaults(func=cmd_serve)
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
