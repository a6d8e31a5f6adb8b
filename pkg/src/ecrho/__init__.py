"""Pollard rho for small prime-field elliptic curves, with collisions against
O, P, Q, -P, -Q and negated revisits in addition to plain revisits."""

from .curve import INFINITY, CurveParams, GroupContext, add, negate, scalar_mul
from .instances import InstanceSpec, example1, example2
from .modular import NotInvertible
from .oracle import NotInSubgroup, brute_force_log
from .parallel import solve_parallel
from .solver import (
    Collision,
    CollisionKind,
    Exhausted,
    SolveResult,
    solve_baseline,
    solve_improved,
    verify,
)

__all__ = [
    "INFINITY", "CurveParams", "GroupContext", "add", "negate", "scalar_mul",
    "InstanceSpec", "example1", "example2", "NotInvertible", "NotInSubgroup",
    "brute_force_log", "solve_parallel", "Collision", "CollisionKind", "Exhausted",
    "SolveResult", "solve_baseline", "solve_improved", "verify",
]
