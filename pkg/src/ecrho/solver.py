"""Collision detection and log extraction for the rho walk.

Two families of solvers live here:

* the baseline, which only recognises an exact revisit ``R_i = R_j``
  (either by storing every state or with Floyd's tortoise and hare), and
* the improved walk, which on every state also compares ``R`` against the
  five fixed points O, P, Q, -P, -Q and probes the visit store for both
  ``R`` and ``-R``.

Both run the identical deterministic walk from the same start, keep every
visited state across restarts, and restart from a fresh seeded start exactly
when the walk lands on a stored point without a usable collision. Since the
improved walk tests a superset of predicates on the same states, its
detection step can never exceed the baseline one.
"""

import random
from collections import defaultdict
from dataclasses import dataclass
from enum import Enum
from math import isqrt
from typing import Callable, Dict, FrozenSet, Iterable, List, Optional, Sequence, Tuple

from .curve import GroupContext, Point, negate, scalar_mul, scalar_mul_cost
from .modular import NotInvertible, mod_div
from .walk import PartitionRule, WalkState, start_state, step

DEFAULT_RESTARTS = 16

Trace = Optional[Callable[[WalkState], None]]


class Exhausted(RuntimeError):
    """No usable collision was found within the step and restart budgets."""

    def __init__(self, message: str, steps_taken: int = 0, restarts: int = 0, group_ops: int = 0):
        super().__init__(message)
        self.steps_taken = steps_taken
        self.restarts = restarts
        self.group_ops = group_ops


class CollisionKind(str, Enum):
    SPECIAL_O = "SpecialO"
    SPECIAL_P = "SpecialP"
    SPECIAL_Q = "SpecialQ"
    SPECIAL_NEG_P = "SpecialNegP"
    SPECIAL_NEG_Q = "SpecialNegQ"
    DIRECT = "Direct"
    REVERSE = "Reverse"

    @property
    def is_special(self) -> bool:
        return self not in (CollisionKind.DIRECT, CollisionKind.REVERSE)


SPECIAL = "special"
DIRECT = "direct"
REVERSE = "reverse"
ALL_CHECKS: FrozenSet[str] = frozenset({SPECIAL, DIRECT, REVERSE})


@dataclass(frozen=True)
class Collision:
    """Where a solution came from.

    ``step`` is the walk index at which the collision was detected. For
    direct and reverse matches ``other_step`` is the index of the stored
    state it matched; the walker ids only matter for multi-walker runs.
    """

    kind: CollisionKind
    step: int
    other_step: Optional[int] = None
    walker: int = 0
    other_walker: Optional[int] = None

    def __str__(self) -> str:
        if self.kind.is_special:
            return self.kind.value
        if self.other_walker is None or self.other_walker == self.walker:
            return f"{self.kind.value}({self.other_step}, {self.step})"
        return (
            f"{self.kind.value}(w{self.other_walker}:{self.other_step}, "
            f"w{self.walker}:{self.step})"
        )


@dataclass(frozen=True)
class SolveResult:
    k: int
    collision: Collision
    steps_taken: int
    restarts: int
    group_ops: int
    a0: int
    b0: int

    @property
    def kind(self) -> CollisionKind:
        return self.collision.kind

    def as_record(self) -> dict:
        return {
            "k": self.k,
            "kind": self.kind.value,
            "collision": str(self.collision),
            "detection_step": self.collision.step,
            "steps_taken": self.steps_taken,
            "group_ops": self.group_ops,
            "restarts": self.restarts,
            "a0": self.a0,
            "b0": self.b0,
        }


@dataclass(frozen=True)
class Visit:
    y: Optional[int]
    a: int
    b: int
    step: int
    walker: int = 0
    attempt: int = 0


class VisitStore:
    """Visited states bucketed by x-coordinate.

    One bucket holds both ``R`` and ``-R``, so a single probe reports exact
    and negated matches together. Entries are append-only.
    """

    def __init__(self, p: int):
        self.p = p
        self._buckets: Dict[Optional[int], List[Visit]] = defaultdict(list)
        self._size = 0

    def __len__(self) -> int:
        return self._size

    def insert(self, R: Point, a: int, b: int, step: int, walker: int = 0, attempt: int = 0) -> None:
        x, y = (None, None) if R is None else R
        self._buckets[x].append(Visit(y, a, b, step, walker, attempt))
        self._size += 1

    def probe(self, R: Point) -> List[Tuple[Visit, bool, bool]]:
        """Return ``(visit, is_equal, is_negation)`` for every entry at R's x.

        Points equal to their own negation (infinity, y = 0) report both.
        """
        if R is None:
            return [(v, True, True) for v in self._buckets.get(None, ())]
        x, y = R
        neg_y = -y % self.p
        hits = []
        for v in self._buckets.get(x, ()):
            exact, negated = v.y == y, v.y == neg_y
            if exact or negated:
                hits.append((v, exact, negated))
        return hits


def verify(k: int, ctx: GroupContext) -> bool:
    return scalar_mul(k, ctx.P, ctx.curve) == ctx.Q


def extract_direct(ai: int, bi: int, aj: int, bj: int, n: int) -> int:
    """Log from ``R_i = R_j``: ``(ai - aj) / (bj - bi) mod n``."""
    return mod_div(ai - aj, bj - bi, n)


def extract_reverse(ai: int, bi: int, aj: int, bj: int, n: int) -> int:
    """Log from ``R_i = -R_j``: ``(ai + aj) / (-bi - bj) mod n``."""
    return mod_div(ai + aj, -bi - bj, n)


def _special_targets(ctx: GroupContext):
    c = ctx.curve
    # (kind, point, numerator, denominator) as functions of (a, b)
    return (
        (CollisionKind.SPECIAL_O, None, lambda a, b: ctx.n - a, lambda a, b: b),
        (CollisionKind.SPECIAL_P, ctx.P, lambda a, b: 1 - a, lambda a, b: b),
        (CollisionKind.SPECIAL_Q, ctx.Q, lambda a, b: a, lambda a, b: 1 - b),
        (CollisionKind.SPECIAL_NEG_P, negate(ctx.P, c), lambda a, b: -1 - a, lambda a, b: b),
        (CollisionKind.SPECIAL_NEG_Q, negate(ctx.Q, c), lambda a, b: a, lambda a, b: -1 - b),
    )


def try_special_collision(s: WalkState, ctx: GroupContext) -> Optional[Tuple[CollisionKind, int]]:
    """Compare ``s.R`` with O, P, Q, -P, -Q (in that order).

    Returns ``(kind, k)`` for the first matching target whose denominator is
    invertible mod n, or None when R is none of the five points.

    Raises:
        NotInvertible: R matched, but no matching condition had a unit
            denominator.
    """
    failure = None
    for kind, target, num, den in _special_targets(ctx):
        if s.R != target:
            continue
        try:
            return kind, mod_div(num(s.a, s.b), den(s.a, s.b), ctx.n)
        except NotInvertible as exc:
            failure = exc
    if failure is not None:
        raise failure
    return None


def default_max_steps(n: int) -> int:
    return 4 * (isqrt(n - 1) + 1) + 64


def walker_rng(seed: int, walker_id: int = 0) -> random.Random:
    """Independent generator per walker; adding walkers never perturbs earlier ones."""
    return random.Random(f"ecrho/{seed}/{walker_id}")


def draw_start(rng: random.Random, n: int) -> Tuple[int, int]:
    return rng.randint(1, n - 1), rng.randint(1, n - 1)


def _start_cost(a0: int, b0: int) -> int:
    return scalar_mul_cost(a0) + scalar_mul_cost(b0) + 1


def solve_baseline(
    ctx: GroupContext,
    a0: int,
    b0: int,
    detector: str = "store",
    max_steps: Optional[int] = None,
    max_restarts: int = DEFAULT_RESTARTS,
    seed: int = 0,
    trace: Trace = None,
) -> SolveResult:
    """Plain Pollard rho: stop at the first exact revisit ``R_i = R_j``.

    ``detector`` is ``"store"`` (remember every state) or ``"floyd"``
    (tortoise/hare, constant memory). A revisit whose denominator is not
    invertible mod n triggers a restart from a fresh start drawn from
    ``walker_rng(seed)``. The store keeps earlier attempts' states, so a
    restarted walk can also collide with an abandoned trail; ``other_step``
    then refers to the step index within that earlier attempt.
    """
    if detector not in ("store", "floyd"):
        raise ValueError(f"unknown detector {detector!r}")
    n = ctx.n
    max_steps = default_max_steps(n) if max_steps is None else max_steps
    rule = PartitionRule(ctx.curve.p)
    rng = walker_rng(seed)
    store: Dict[Point, WalkState] = {}
    total_steps = group_ops = 0
    for attempt in range(max_restarts + 1):
        if attempt:
            a0, b0 = draw_start(rng, n)
        group_ops += _start_cost(a0, b0)
        if detector == "store":
            found, steps, ops = _baseline_store_attempt(ctx, rule, store, a0, b0, max_steps, trace)
        else:
            found, steps, ops = _baseline_floyd_attempt(ctx, rule, a0, b0, max_steps, trace)
        total_steps += steps
        group_ops += ops
        if found is not None:
            k, collision = found
            return SolveResult(k, collision, total_steps, attempt, group_ops, a0, b0)
    raise Exhausted(
        f"baseline ({detector}) found no usable collision",
        total_steps, max_restarts, group_ops,
    )


def _baseline_store_attempt(ctx, rule, store, a0, b0, max_steps, trace):
    s = start_state(a0, b0, ctx)
    while True:
        if trace:
            trace(s)
        earlier = store.get(s.R)
        if earlier is not None:
            try:
                k = extract_direct(earlier.a, earlier.b, s.a, s.b, ctx.n)
            except NotInvertible:
                return None, s.step, s.step
            if verify(k, ctx):
                return (k, Collision(CollisionKind.DIRECT, s.step, earlier.step)), s.step, s.step
            return None, s.step, s.step
        if s.step >= max_steps:
            return None, s.step, s.step
        store[s.R] = s
        s = step(s, ctx, rule)


def _baseline_floyd_attempt(ctx, rule, a0, b0, max_steps, trace):
    tortoise = hare = start_state(a0, b0, ctx)
    if trace:
        trace(tortoise)
    i = 0
    while i < max_steps:
        i += 1
        tortoise = step(tortoise, ctx, rule)
        hare = step(step(hare, ctx, rule), ctx, rule)
        if trace:
            trace(tortoise)
        if tortoise.R == hare.R:
            try:
                k = extract_direct(tortoise.a, tortoise.b, hare.a, hare.b, ctx.n)
            except NotInvertible:
                return None, i, 3 * i
            if verify(k, ctx):
                return (k, Collision(CollisionKind.DIRECT, hare.step, tortoise.step)), i, 3 * i
            return None, i, 3 * i
    return None, i, 3 * i


class _Walker:
    def __init__(self, walker_id: int, rng: random.Random, a0: int, b0: int):
        self.id = walker_id
        self.rng = rng
        self.a0, self.b0 = a0, b0
        self.attempt = 0
        self.state: Optional[WalkState] = None
        self.retired = False


class ImprovedWalk:
    """Improved collision search for one or more walkers over a shared store.

    Each visited state is checked, in order, against the five special
    points, then against the store for equal and negated entries; only if
    nothing usable turns up is it inserted and the walk advanced. A walker
    restarts when it lands exactly on a point it stored itself (in this or
    an earlier attempt) without a usable collision, since from there it
    only retraces a trail whose exponent differences stay non-invertible,
    or when it reaches ``max_steps``. Exact hits on another walker's trail
    that fail are skipped and the walker continues.

    ``skip_special_before`` suppresses special-point hits at walk indices
    below the given value.
    """

    def __init__(
        self,
        ctx: GroupContext,
        checks: Iterable[str] = ALL_CHECKS,
        max_steps: Optional[int] = None,
        max_restarts: int = DEFAULT_RESTARTS,
        skip_special_before: int = 0,
        trace: Trace = None,
    ):
        checks = frozenset(checks)
        if not checks or not checks <= ALL_CHECKS:
            raise ValueError(f"checks must be a nonempty subset of {sorted(ALL_CHECKS)}")
        self.ctx = ctx
        self.checks = checks
        self.max_steps = default_max_steps(ctx.n) if max_steps is None else max_steps
        self.max_restarts = max_restarts
        self.skip_special_before = skip_special_before
        self.trace = trace
        self.rule = PartitionRule(ctx.curve.p)
        self.store = VisitStore(ctx.curve.p) if checks & {DIRECT, REVERSE} else None
        self.steps_taken = 0
        self.group_ops = 0
        self.restarts = 0

    def begin(self, walker: _Walker) -> None:
        walker.state = start_state(walker.a0, walker.b0, self.ctx)
        self.group_ops += _start_cost(walker.a0, walker.b0)

    def examine(self, walker: _Walker) -> Tuple[Optional[Tuple[int, Collision]], bool]:
        """Check the walker's current state.

        Returns ``(solution, dead_end)``; ``dead_end`` means the state
        exactly matches one this walker stored earlier.
        """
        s, ctx = walker.state, self.ctx
        if self.trace:
            self.trace(s)
        if SPECIAL in self.checks and s.step >= self.skip_special_before:
            try:
                hit = try_special_collision(s, ctx)
            except NotInvertible:
                hit = None
            if hit is not None and verify(hit[1], ctx):
                return (hit[1], Collision(hit[0], s.step, walker=walker.id)), False
        dead_end = False
        if self.store is not None:
            for v, exact, negated in self.store.probe(s.R):
                if exact and v.walker == walker.id:
                    dead_end = True
                found = self._try_stored(v, exact, negated, walker)
                if found is not None:
                    return found, dead_end
        return None, dead_end

    def _try_stored(self, v: Visit, exact: bool, negated: bool, walker: _Walker):
        s, n = walker.state, self.ctx.n
        attempts = []
        if exact and DIRECT in self.checks:
            attempts.append((CollisionKind.DIRECT, extract_direct))
        if negated and REVERSE in self.checks:
            attempts.append((CollisionKind.REVERSE, extract_reverse))
        for kind, extract in attempts:
            try:
                k = extract(v.a, v.b, s.a, s.b, n)
            except NotInvertible:
                continue
            if verify(k, self.ctx):
                return k, Collision(kind, s.step, v.step, walker.id, v.walker)
        return None

    def advance(self, walker: _Walker, dead_end: bool) -> None:
        """Insert the current state and step, or restart the walker."""
        s = walker.state
        if dead_end or s.step >= self.max_steps:
            if walker.attempt >= self.max_restarts:
                walker.retired = True
                return
            walker.attempt += 1
            self.restarts += 1
            walker.a0, walker.b0 = draw_start(walker.rng, self.ctx.n)
            self.begin(walker)
            return
        if self.store is not None:
            self.store.insert(s.R, s.a, s.b, s.step, walker.id, walker.attempt)
        walker.state = step(s, self.ctx, self.rule)
        self.steps_taken += 1
        self.group_ops += 1

    def result(self, walker: _Walker, k: int, collision: Collision) -> SolveResult:
        return SolveResult(
            k, collision, self.steps_taken, self.restarts, self.group_ops, walker.a0, walker.b0
        )

    def run_sequential(self, walkers: Sequence[_Walker], max_total_steps: Optional[int] = None) -> SolveResult:
        """Round-robin the walkers one state at a time until one solves."""
        for w in walkers:
            self.begin(w)
        while True:
            active = [w for w in walkers if not w.retired]
            if not active:
                break
            for w in active:
                found, dead_end = self.examine(w)
                if found is not None:
                    return self.result(w, *found)
                if max_total_steps is not None and self.steps_taken >= max_total_steps:
                    raise self.exhausted("total step budget exhausted")
                self.advance(w, dead_end)
        raise self.exhausted("every walker used up its restart budget")

    def exhausted(self, why: str) -> Exhausted:
        return Exhausted(f"improved walk: {why}", self.steps_taken, self.restarts, self.group_ops)


def solve_improved(
    ctx: GroupContext,
    a0: int,
    b0: int,
    checks: Iterable[str] = ALL_CHECKS,
    max_steps: Optional[int] = None,
    max_restarts: int = DEFAULT_RESTARTS,
    seed: int = 0,
    skip_special_before: int = 0,
    trace: Trace = None,
) -> SolveResult:
    """Rho walk that also accepts special-point and reverse collisions.

    >>> from ecrho.instances import example1
    >>> str(solve_improved(example1(), 2, 87).collision)
    'SpecialP'
    """
    engine = ImprovedWalk(ctx, checks, max_steps, max_restarts, skip_special_before, trace)
    return engine.run_sequential([_Walker(0, walker_rng(seed, 0), a0, b0)])
