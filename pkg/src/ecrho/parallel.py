"""Multi-walker collision search sharing one visit store.

Walkers start from distinct ``(a0, b0)`` pairs derived from a master seed and
run the improved collision checks. Any walker may collide with any other's
trail; since every walker uses the same P, Q and n, the direct and reverse
formulas apply across walkers unchanged.
"""

import threading
from typing import Iterable, List, Optional, Sequence, Tuple

from .curve import GroupContext
from .solver import (
    ALL_CHECKS,
    DEFAULT_RESTARTS,
    ImprovedWalk,
    SolveResult,
    Trace,
    _Walker,
    draw_start,
    walker_rng,
)
from .walk import start_state

SEQUENTIAL = "seq"
CONCURRENT = "conc"

Start = Optional[Tuple[int, int]]


def make_walkers(ctx: GroupContext, walkers: int, master_seed: int, starts: Sequence[Start] = ()) -> List[_Walker]:
    """Walker ``w`` draws from its own stream; an explicit start overrides its first draw."""
    if walkers < 1:
        raise ValueError("need at least one walker")
    if len(starts) > walkers:
        raise ValueError("more explicit starts than walkers")
    out = []
    for w in range(walkers):
        rng = walker_rng(master_seed, w)
        given = starts[w] if w < len(starts) else None
        a0, b0 = given if given is not None else draw_start(rng, ctx.n)
        start_state(a0, b0, ctx)
        out.append(_Walker(w, rng, a0, b0))
    return out


def solve_parallel(
    ctx: GroupContext,
    walkers: int,
    master_seed: int = 0,
    schedule: str = SEQUENTIAL,
    max_total_steps: Optional[int] = None,
    starts: Sequence[Start] = (),
    checks: Iterable[str] = ALL_CHECKS,
    max_steps: Optional[int] = None,
    max_restarts: int = DEFAULT_RESTARTS,
    skip_special_before: int = 0,
    trace: Trace = None,
) -> SolveResult:
    """Solve with several walkers over a shared store.

    ``"seq"`` interleaves walkers one state at a time and is fully
    deterministic. ``"conc"`` runs each walker on its own thread; the store
    probe and insert happen under one lock, and the first verified solution
    stops the others.
    """
    engine = ImprovedWalk(ctx, checks, max_steps, max_restarts, skip_special_before, trace)
    team = make_walkers(ctx, walkers, master_seed, starts)
    if max_total_steps is None:
        max_total_steps = walkers * engine.max_steps * (max_restarts + 1)
    if schedule == SEQUENTIAL:
        return engine.run_sequential(team, max_total_steps)
    if schedule == CONCURRENT:
        return _run_concurrent(engine, team, max_total_steps)
    raise ValueError(f"unknown schedule {schedule!r}")


def _run_concurrent(engine: ImprovedWalk, team: List[_Walker], max_total_steps: int) -> SolveResult:
    lock = threading.Lock()
    stop = threading.Event()
    outcome: List[SolveResult] = []
    errors: List[BaseException] = []

    def work(w: _Walker) -> None:
        try:
            with lock:
                engine.begin(w)
            while not stop.is_set() and not w.retired:
                with lock:
                    if stop.is_set():
                        return
                    found, own_cycle = engine.examine(w)
                    if found is not None:
                        outcome.append(engine.result(w, *found))
                        stop.set()
                        return
                    if engine.steps_taken >= max_total_steps:
                        stop.set()
                        return
                    engine.advance(w, own_cycle)
        except BaseException as exc:  # surfaced in the caller's thread
            errors.append(exc)
            stop.set()

    threads = [threading.Thread(target=work, args=(w,), name=f"walker-{w.id}") for w in team]
    for t in threads:
        t.start()
    for t in threads:
        t.join()
    if errors:
        raise errors[0]
    if outcome:
        return outcome[0]
    raise engine.exhausted("no walker found a usable collision")
