"""The three-set rho walk and its exponent bookkeeping.

Points are split by x-coordinate into thirds of ``[0, p)``: S1 when
``3x < p``, S2 when ``3x < 2p``, S3 otherwise, with the point at infinity
in S1. The iteration function adds P on S1, doubles on S2 and adds Q on
S3, and the exponents ``(a, b)`` follow so that ``R = [a]P + [b]Q`` at every
step.
"""

from dataclasses import dataclass
from typing import Iterator, List, Tuple, Union

from .curve import GroupContext, Point, add, scalar_mul


class DomainError(ValueError):
    pass


@dataclass(frozen=True)
class PartitionRule:
    p: int

    def __call__(self, pt: Point) -> int:
        return partition_index(pt, self)


@dataclass(frozen=True)
class WalkState:
    R: Point
    a: int
    b: int
    step: int = 0


def partition_index(pt: Point, rule: PartitionRule) -> int:
    if pt is None:
        return 1
    x3 = 3 * pt[0]
    if x3 < rule.p:
        return 1
    if x3 < 2 * rule.p:
        return 2
    return 3


def start_state(a0: int, b0: int, ctx: GroupContext) -> WalkState:
    n = ctx.n
    if not (1 <= a0 <= n - 1 and 1 <= b0 <= n - 1):
        raise DomainError(f"start exponents must lie in [1, {n - 1}], got ({a0}, {b0})")
    c = ctx.curve
    R = add(scalar_mul(a0, ctx.P, c), scalar_mul(b0, ctx.Q, c), c)
    return WalkState(R, a0, b0, 0)


def step(s: WalkState, ctx: GroupContext, rule: PartitionRule) -> WalkState:
    n = ctx.n
    c = ctx.curve
    idx = partition_index(s.R, rule)
    if idx == 1:
        return WalkState(add(s.R, ctx.P, c), (s.a + 1) % n, s.b, s.step + 1)
    if idx == 2:
        return WalkState(add(s.R, s.R, c), 2 * s.a % n, 2 * s.b % n, s.step + 1)
    return WalkState(add(s.R, ctx.Q, c), s.a, (s.b + 1) % n, s.step + 1)


def holds_invariant(s: WalkState, ctx: GroupContext) -> bool:
    """Recompute ``[a]P + [b]Q`` from scratch and compare it with ``R``."""
    c = ctx.curve
    return add(scalar_mul(s.a, ctx.P, c), scalar_mul(s.b, ctx.Q, c), c) == s.R


def iterate(
    state: WalkState, ctx: GroupContext, rule: PartitionRule = None
) -> Iterator[WalkState]:
    """Yield ``state`` and then its successors forever."""
    rule = rule or PartitionRule(ctx.curve.p)
    while True:
        yield state
        state = step(state, ctx, rule)


TraceRow = Tuple[int, Union[int, str], Union[int, str], int, int]


def trace_row(s: WalkState) -> TraceRow:
    """Serialize a state as ``(i, x, y, a, b)`` with ``"inf"`` for infinity."""
    if s.R is None:
        return (s.step, "inf", "inf", s.a, s.b)
    return (s.step, s.R[0], s.R[1], s.a, s.b)


def walk_table(ctx: GroupContext, a0: int, b0: int, steps: int) -> List[TraceRow]:
    rows = []
    for s in iterate(start_state(a0, b0, ctx), ctx):
        rows.append(trace_row(s))
        if s.step >= steps:
            break
    return rows
