"""Command-line front end: ``ecrho walk|solve|bench|oracle``.

Exit codes: 0 on success, 1 when no solution was found, 2 on invalid input.
"""

import argparse
import csv
import json
import random
import sys
from pathlib import Path
from typing import List, Optional, Sequence

from .bench import METHODS, run_bench
from .curve import GroupContext
from .instances import InstanceSpec, example1, example2, load_records, random_instance
from .oracle import NotInSubgroup, brute_force_log
from .parallel import CONCURRENT, SEQUENTIAL, solve_parallel
from .solver import (
    ALL_CHECKS,
    DEFAULT_RESTARTS,
    DIRECT,
    REVERSE,
    SPECIAL,
    Exhausted,
    draw_start,
    solve_baseline,
    walker_rng,
)
from .walk import DomainError, walk_table

EXAMPLES = {"1": example1, "2": example2}
METHOD_CHECKS = {
    "improved": ALL_CHECKS,
    "improved-special": {SPECIAL},
    "improved-collide": {DIRECT, REVERSE},
}


class UsageError(Exception):
    pass


def _add_instance_args(p: argparse.ArgumentParser) -> None:
    g = p.add_mutually_exclusive_group(required=True)
    g.add_argument("--instance", type=Path, help="JSON file with keys p, a, b, px, py, qx, qy[, n]")
    g.add_argument("--example", choices=sorted(EXAMPLES), help="built-in worked example")


def _load_instance(args) -> GroupContext:
    if args.example:
        return EXAMPLES[args.example]()
    records = load_records(args.instance)
    if len(records) != 1:
        raise UsageError(f"{args.instance}: expected exactly one instance record")
    return InstanceSpec.from_dict(records[0]).context()


def _start(args, ctx: GroupContext, rng: random.Random):
    if (args.a0 is None) != (args.b0 is None):
        raise UsageError("--a0 and --b0 go together")
    if args.a0 is None:
        return draw_start(rng, ctx.n)
    return args.a0, args.b0


def _emit(rows: List[dict], fmt: str, out) -> None:
    if fmt == "json":
        json.dump(rows if len(rows) != 1 else rows[0], out, indent=2)
        out.write("\n")
    elif fmt == "csv":
        writer = csv.DictWriter(out, fieldnames=list(rows[0]), lineterminator="\n")
        writer.writeheader()
        writer.writerows(rows)
    else:
        for r in rows:
            out.write("  ".join(f"{k}={v}" for k, v in r.items()) + "\n")


def _fmt_point(x, y) -> str:
    return "O" if x == "inf" else f"({x}, {y})"


def cmd_walk(args, out) -> int:
    ctx = _load_instance(args)
    if args.steps < 0:
        raise UsageError("--steps must be nonnegative")
    a0, b0 = _start(args, ctx, walker_rng(args.seed))
    table = walk_table(ctx, a0, b0, args.steps)
    if args.format == "table":
        out.write(f"{'i':>4}  {'R_i':<14}{'a_i':>6}{'b_i':>6}\n")
        for i, x, y, a, b in table:
            out.write(f"{i:>4}  {_fmt_point(x, y):<14}{a:>6}{b:>6}\n")
    else:
        _emit([dict(zip(("i", "x", "y", "a", "b"), row)) for row in table], args.format, out)
    return 0


def cmd_solve(args, out) -> int:
    ctx = _load_instance(args)
    a0, b0 = _start(args, ctx, walker_rng(args.seed, 0))
    common = dict(max_steps=args.max_steps, max_restarts=args.max_restarts)
    try:
        if args.method.startswith("baseline"):
            if args.walkers != 1:
                raise UsageError("baseline methods run a single walker")
            detector = args.method.split("-", 1)[1]
            res = solve_baseline(ctx, a0, b0, detector, seed=args.seed, **common)
        else:
            res = solve_parallel(
                ctx, args.walkers, args.seed, args.schedule, starts=[(a0, b0)],
                checks=METHOD_CHECKS[args.method],
                skip_special_before=args.skip_special_before, **common,
            )
    except Exhausted as exc:
        _emit([{"status": "exhausted", "steps_taken": exc.steps_taken,
                "restarts": exc.restarts, "group_ops": exc.group_ops}], args.format, out)
        return 1
    record = {"status": "solved", "method": args.method, **res.as_record()}
    _emit([record], args.format, out)
    return 0


def _bench_instances(args):
    contexts, starts = [], []
    if args.instances:
        for rec in load_records(args.instances):
            contexts.append(InstanceSpec.from_dict({k: v for k, v in rec.items() if k not in ("a0", "b0")}).context())
            starts.append((rec["a0"], rec["b0"]) if "a0" in rec and "b0" in rec else None)
    else:
        rng = random.Random(f"ecrho-instances/{args.seed}")
        for _ in range(args.random):
            contexts.append(random_instance(rng)[0])
            starts.append(None)
    if args.a0 is not None or args.b0 is not None:
        if args.a0 is None or args.b0 is None:
            raise UsageError("--a0 and --b0 go together")
        starts = [(args.a0, args.b0)] * len(contexts)
    return contexts, starts


def cmd_bench(args, out) -> int:
    methods = [m.strip() for m in args.methods.split(",") if m.strip()]
    unknown = [m for m in methods if m not in METHODS]
    if unknown or not methods:
        raise UsageError(f"unknown method(s) {unknown}; choose from {', '.join(METHODS)}")
    contexts, starts = _bench_instances(args)
    report = run_bench(
        contexts, methods, args.trials, args.seed, starts,
        max_steps=args.max_steps, max_restarts=args.max_restarts,
        skip_special_before=args.skip_special_before,
    )
    text = report.to_csv() if args.format == "csv" else report.to_json() + "\n"
    if args.out:
        Path(args.out).write_text(text)
    else:
        out.write(text)
    return 0


def cmd_oracle(args, out) -> int:
    ctx = _load_instance(args)
    try:
        k = brute_force_log(ctx)
    except NotInSubgroup as exc:
        out.write(f"{exc}\n")
        return 1
    out.write(f"{k}\n")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="ecrho", description="Pollard rho with extra collision types on small elliptic curves")
    sub = parser.add_subparsers(dest="command", required=True)

    def start_args(p):
        p.add_argument("--a0", type=int)
        p.add_argument("--b0", type=int)
        p.add_argument("--seed", type=int, default=0, help="sole source of randomness")

    def budget_args(p):
        p.add_argument("--max-steps", type=int, help="per-walk step budget (default 4*ceil(sqrt(n)) + 64)")
        p.add_argument("--max-restarts", type=int, default=DEFAULT_RESTARTS)
        p.add_argument("--skip-special-before", type=int, default=0, metavar="STEP",
                       help="ignore special-point hits before this walk index")

    p = sub.add_parser("walk", help="print the walk table (i, R_i, a_i, b_i)")
    _add_instance_args(p)
    start_args(p)
    p.add_argument("--steps", type=int, default=20)
    p.add_argument("--format", choices=("table", "csv", "json"), default="table")
    p.set_defaults(func=cmd_walk)

    p = sub.add_parser("solve", help="recover k with Q = [k]P")
    _add_instance_args(p)
    start_args(p)
    budget_args(p)
    p.add_argument("--method", choices=sorted(METHODS), default="improved")
    p.add_argument("--walkers", type=int, default=1)
    p.add_argument("--schedule", choices=(SEQUENTIAL, CONCURRENT), default=SEQUENTIAL)
    p.add_argument("--format", choices=("table", "csv", "json"), default="table")
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("bench", help="compare methods over many starts")
    g = p.add_mutually_exclusive_group(required=True)
    g.add_argument("--instances", type=Path, help="JSON record or array of records (optional a0, b0 per record)")
    g.add_argument("--random", type=int, metavar="COUNT", help="generate COUNT random instances")
    start_args(p)
    budget_args(p)
    p.add_argument("--trials", type=int, default=1)
    p.add_argument("--methods", default="baseline-store,improved")
    p.add_argument("--format", choices=("csv", "json"), default="csv")
    p.add_argument("--out", type=Path)
    p.set_defaults(func=cmd_bench)

    p = sub.add_parser("oracle", help="brute-force discrete log")
    _add_instance_args(p)
    p.set_defaults(func=cmd_oracle)
    return parser


def main(argv: Optional[Sequence[str]] = None, out=None) -> int:
    out = out or sys.stdout
    args = build_parser().parse_args(argv)
    try:
        return args.func(args, out)
    except (UsageError, DomainError, ValueError, KeyError, OSError) as exc:
        print(f"ecrho: error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
