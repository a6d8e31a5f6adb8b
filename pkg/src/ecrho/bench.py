"""Benchmark campaigns comparing the baseline and improved collision searches.

Every method in a trial starts from the same ``(a0, b0)``, so per-trial rows
are directly comparable. Two step conventions are reported: the walk index
at which the solving collision was detected (``detection_step``, a hit on the
start point is 0) and the number of walk states examined up to it
(``rows_examined``, one more). ``steps_taken`` counts every application of
the iteration function, across restarts, and is what the aggregates use.
"""

import csv
import io
import json
import random
import statistics
from collections import Counter
from dataclasses import asdict, dataclass, field
from typing import Callable, Dict, List, Optional, Sequence, Tuple

from .curve import GroupContext
from .solver import (
    DIRECT,
    REVERSE,
    SPECIAL,
    Exhausted,
    SolveResult,
    draw_start,
    solve_baseline,
    solve_improved,
    verify,
)

Solver = Callable[..., SolveResult]


def _baseline(detector: str) -> Solver:
    def run(ctx, a0, b0, skip_special_before=0, **kw):
        return solve_baseline(ctx, a0, b0, detector, **kw)
    return run


def _improved(checks) -> Solver:
    def run(ctx, a0, b0, **kw):
        return solve_improved(ctx, a0, b0, checks=checks, **kw)
    return run


METHODS: Dict[str, Solver] = {
    "baseline-store": _baseline("store"),
    "baseline-floyd": _baseline("floyd"),
    "improved": _improved({SPECIAL, DIRECT, REVERSE}),
    "improved-special": _improved({SPECIAL}),
    "improved-collide": _improved({DIRECT, REVERSE}),
}


def run_method(method: str, ctx: GroupContext, a0: int, b0: int, **kw) -> SolveResult:
    try:
        solver = METHODS[method]
    except KeyError:
        raise ValueError(f"unknown method {method!r}; choose from {', '.join(METHODS)}") from None
    return solver(ctx, a0, b0, **kw)


ROW_FIELDS = (
    "instance", "trial", "method", "a0", "b0", "kind", "collision", "k", "verified",
    "detection_step", "rows_examined", "steps_taken", "group_ops", "restarts",
)


@dataclass
class TrialRow:
    instance: int
    trial: int
    method: str
    a0: int
    b0: int
    kind: str
    collision: str
    k: Optional[int]
    verified: bool
    detection_step: int
    rows_examined: int
    steps_taken: int
    group_ops: int
    restarts: int


@dataclass
class BenchReport:
    rows: List[TrialRow] = field(default_factory=list)

    def aggregates(self) -> dict:
        by_method: Dict[str, List[TrialRow]] = {}
        for r in self.rows:
            by_method.setdefault(r.method, []).append(r)
        out = {}
        for method, rows in by_method.items():
            solved = [r for r in rows if r.verified]
            steps = [r.steps_taken for r in solved]
            kinds = Counter(r.kind for r in rows)
            out[method] = {
                "trials": len(rows),
                "solved": len(solved),
                "exhausted": kinds.pop("Exhausted", 0),
                "mean_steps": statistics.fmean(steps) if steps else None,
                "median_steps": statistics.median(steps) if steps else None,
                "mean_group_ops": statistics.fmean(r.group_ops for r in solved) if solved else None,
                "kind_frequency": {k: v / len(rows) for k, v in sorted(kinds.items())},
            }
        return out

    def dominance(self, improved: str = "improved", baseline: str = "baseline-store") -> dict:
        """Count trials where ``improved`` needed more steps than ``baseline``."""
        paired: Dict[Tuple[int, int], Dict[str, TrialRow]] = {}
        for r in self.rows:
            paired.setdefault((r.instance, r.trial), {})[r.method] = r
        compared = violations = 0
        for group in paired.values():
            if improved in group and baseline in group:
                i, b = group[improved], group[baseline]
                if b.verified:
                    compared += 1
                    violations += (not i.verified) or i.steps_taken > b.steps_taken
        return {"improved": improved, "baseline": baseline, "compared": compared, "violations": violations}

    def to_csv(self) -> str:
        buf = io.StringIO()
        writer = csv.DictWriter(buf, fieldnames=ROW_FIELDS, lineterminator="\n")
        writer.writeheader()
        for r in self.rows:
            d = asdict(r)
            d["k"] = "" if r.k is None else r.k
            writer.writerow(d)
        return buf.getvalue()

    def to_json(self) -> str:
        doc = {"rows": [asdict(r) for r in self.rows], "aggregates": self.aggregates()}
        methods = {r.method for r in self.rows}
        if {"improved", "baseline-store"} <= methods:
            doc["dominance"] = self.dominance()
        return json.dumps(doc, indent=2)

    @staticmethod
    def rows_from_csv(text: str) -> List[TrialRow]:
        rows = []
        for d in csv.DictReader(io.StringIO(text)):
            rows.append(TrialRow(
                instance=int(d["instance"]), trial=int(d["trial"]), method=d["method"],
                a0=int(d["a0"]), b0=int(d["b0"]), kind=d["kind"], collision=d["collision"],
                k=int(d["k"]) if d["k"] else None, verified=d["verified"] == "True",
                detection_step=int(d["detection_step"]), rows_examined=int(d["rows_examined"]),
                steps_taken=int(d["steps_taken"]), group_ops=int(d["group_ops"]),
                restarts=int(d["restarts"]),
            ))
        return rows


def _row(idx: int, trial: int, method: str, ctx: GroupContext, a0: int, b0: int, **kw) -> TrialRow:
    try:
        res = run_method(method, ctx, a0, b0, **kw)
    except Exhausted as exc:
        return TrialRow(idx, trial, method, a0, b0, "Exhausted", "", None, False,
                        exc.steps_taken, exc.steps_taken + 1, exc.steps_taken,
                        exc.group_ops, exc.restarts)
    step = res.collision.step
    return TrialRow(idx, trial, method, a0, b0, res.kind.value, str(res.collision), res.k,
                    verify(res.k, ctx), step, step + 1,
                    res.steps_taken, res.group_ops, res.restarts)


def run_bench(
    instances: Sequence[GroupContext],
    methods: Sequence[str],
    trials: int,
    seed: int = 0,
    starts: Sequence[Optional[Tuple[int, int]]] = (),
    **solver_kw,
) -> BenchReport:
    """Run every method on every instance for ``trials`` trials.

    ``starts[i]``, when given, fixes the first trial's start on instance ``i``;
    the remaining starts come from a generator seeded with ``seed``.
    """
    if trials < 1:
        raise ValueError("trials must be at least 1")
    for m in methods:
        if m not in METHODS:
            raise ValueError(f"unknown method {m!r}; choose from {', '.join(METHODS)}")
    rng = random.Random(f"ecrho-bench/{seed}")
    report = BenchReport()
    for idx, ctx in enumerate(instances):
        fixed = starts[idx] if idx < len(starts) else None
        for trial in range(trials):
            a0, b0 = fixed if (trial == 0 and fixed is not None) else draw_start(rng, ctx.n)
            for method in methods:
                report.rows.append(_row(idx, trial, method, ctx, a0, b0, seed=seed + trial, **solver_kw))
    return report
