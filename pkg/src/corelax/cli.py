"""Command-line driver.

Subcommands: solve (complete / complete-nomuc / greedy), oracle (exhaustive
enumeration), check (evaluate one instantiation), gen (random instance),
serve (HTTP service). Exit codes: 0 a solution was emitted, 10 infeasible,
20 unknown or a limit was hit, 2 usage or parse errors.
"""

from __future__ import annotations

import argparse
import sys
from dataclasses import dataclass
from pathlib import Path

from .model import ModelError, WCN, evaluate_cost
from .muc import STRATEGIES
from .search import Outcome, Status, TooLarge, brute_force_optimum, solve_mode
from .wcsp import WcspError, emit_result, parse_wcsp, random_instance, serialize_wcsp

EXIT_SOLUTION = 0
EXIT_INFEASIBLE = 10
EXIT_UNKNOWN = 20
EXIT_USAGE = 2

MODES = ("complete", "complete-nomuc", "greedy")


@dataclass
class RunConfig:
    mode: str
    muc_strategy: str = "deletion"
    time_limit: float | None = None
    node_budget: int | None = None
    verbosity: int = 0


def _fail(message: str) -> int:
    print(f"error: {message}", file=sys.stderr)
    return EXIT_USAGE


def _load(path: str) -> WCN:
    text = Path(path).read_text()
    return parse_wcsp(text)


def _warn_small_k(wcn: WCN) -> None:
    # Informational only: a k at or below the largest finite layer sum can
    # truncate achievable costs, which usually means the file meant k as +inf.
    reachable = 0
    for c in wcn.constraints:
        finite = [L.cost for L in c.layers if L.cost < wcn.k]
        reachable += max(finite) if finite else 0
    if wcn.constraints and wcn.k <= reachable:
        print(
            f"warning: k={wcn.k} is not above the largest finite cost sum ({reachable}); "
            "sums will saturate",
            file=sys.stderr,
        )


def _exit_code(outcome: Outcome) -> int:
    if outcome.status in (Status.OPTIMUM, Status.UPPER_BOUND):
        return EXIT_SOLUTION
    if outcome.status is Status.INFEASIBLE:
        return EXIT_INFEASIBLE
    return EXIT_UNKNOWN


def _cmd_solve(args: argparse.Namespace) -> int:
    config = RunConfig(args.mode, args.muc, args.timeout, args.node_budget, args.verbose)
    try:
        wcn = _load(args.file)
    except (OSError, WcspError, ModelError) as exc:
        return _fail(str(exc))
    _warn_small_k(wcn)
    outcome = solve_mode(
        wcn,
        config.mode,
        muc_strategy=config.muc_strategy,
        time_limit=config.time_limit,
        node_budget=config.node_budget,
    )
    sys.stdout.write(emit_result(outcome))
    if config.verbosity:
        print(f"wall time: {outcome.stats.wall_time:.3f}s", file=sys.stderr)
        if outcome.stats.muc_sizes:
            print(f"muc sizes: {outcome.stats.muc_sizes}", file=sys.stderr)
    return _exit_code(outcome)


def _cmd_oracle(args: argparse.Namespace) -> int:
    try:
        wcn = _load(args.file)
    except (OSError, WcspError, ModelError) as exc:
        return _fail(str(exc))
    try:
        outcome = brute_force_optimum(wcn)
    except TooLarge as exc:
        sys.stdout.write(f"s UNKNOWN\nc reason={exc}\n")
        return EXIT_UNKNOWN
    sys.stdout.write(emit_result(outcome))
    return _exit_code(outcome)


def _cmd_check(args: argparse.Namespace) -> int:
    try:
        wcn = _load(args.file)
    except (OSError, WcspError, ModelError) as exc:
        return _fail(str(exc))
    try:
        values = [int(tok) for tok in args.values.split()]
    except ValueError:
        return _fail(f"values must be integers, got {args.values!r}")
    if len(values) != wcn.n:
        return _fail(f"expected {wcn.n} values, got {len(values)}")
    for x, val in enumerate(values):
        if not 0 <= val < wcn.variables[x].domain_size:
            return _fail(f"value {val} outside domain of variable {x}")
    print(evaluate_cost(wcn, values))
    return EXIT_SOLUTION


def _parse_menu(text: str, k: int) -> list[int]:
    menu = []
    for tok in text.split(","):
        tok = tok.strip()
        menu.append(k if tok == "k" else int(tok))
    return menu


def _cmd_gen(args: argparse.Namespace) -> int:
    try:
        costs = _parse_menu(args.costs, args.k)
        defaults = _parse_menu(args.defaults, args.k)
    except ValueError:
        return _fail("cost menus must be comma-separated integers (or the letter k)")
    try:
        wcn = random_instance(
            args.vars,
            args.domain,
            args.constraints,
            args.arity,
            costs,
            defaults,
            args.k,
            args.seed,
            name=args.name,
        )
    except (WcspError, ModelError) as exc:
        return _fail(str(exc))
    sys.stdout.write(serialize_wcsp(wcn))
    return EXIT_SOLUTION


def _cmd_serve(args: argparse.Namespace) -> int:
    import uvicorn

    from .service import app

    uvicorn.run(app, host=args.host, port=args.port)
    return EXIT_SOLUTION


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="corelax", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    solve = sub.add_parser("solve", help="solve a wcsp file")
    solve.add_argument("file")
    solve.add_argument("--mode", choices=MODES, default="complete")
    solve.add_argument("--muc", choices=STRATEGIES, default="deletion")
    solve.add_argument("--timeout", type=float, default=None, help="wall-clock limit in seconds")
    solve.add_argument("--node-budget", type=int, default=None, help="total solver node limit")
    solve.add_argument("-v", "--verbose", action="count", default=0)
    solve.set_defaults(handler=_cmd_solve)

    oracle = sub.add_parser("oracle", help="exhaustive optimum of a small wcsp file")
    oracle.add_argument("file")
    oracle.set_defaults(handler=_cmd_oracle)

    check = sub.add_parser("check", help="evaluate one complete instantiation")
    check.add_argument("file")
    check.add_argument("--values", required=True, help="space-separated value indexes")
    check.set_defaults(handler=_cmd_check)

    gen = sub.add_parser("gen", help="emit a random wcsp instance")
    gen.add_argument("--vars", type=int, required=True)
    gen.add_argument("--domain", type=int, required=True)
    gen.add_argument("--constraints", type=int, required=True)
    gen.add_argument("--arity", type=int, required=True)
    gen.add_argument("--k", type=int, required=True)
    gen.add_argument("--seed", type=int, required=True)
    gen.add_argument("--costs", default="0,1,2,5,10")
    gen.add_argument("--defaults", default="0,10,k")
    gen.add_argument("--name", default=None)
    gen.set_defaults(handler=_cmd_gen)

    serve = sub.add_parser("serve", help="run the HTTP service")
    serve.add_argument("--host", default="127.0.0.1")
    serve.add_argument("--port", type=int, default=8000)
    serve.set_defaults(handler=_cmd_serve)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    return args.handler(args)


if __name__ == "__main__":
    sys.exit(main())
