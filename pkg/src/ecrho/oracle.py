"""Exhaustive discrete-log reference for desk-scale groups."""

from .curve import GroupContext, add

ORACLE_BOUND = 10**6


class NotInSubgroup(ValueError):
    pass


def brute_force_log(ctx: GroupContext) -> int:
    """Smallest ``k`` in ``[1, n]`` with ``[k]P = Q``, by walking P, 2P, 3P, ..."""
    if ctx.n > ORACLE_BOUND:
        raise ValueError(f"n = {ctx.n} exceeds the brute-force bound {ORACLE_BOUND}")
    T = ctx.P
    for k in range(1, ctx.n + 1):
        if T == ctx.Q:
            return k
        T = add(T, ctx.P, ctx.curve)
    raise NotInSubgroup(f"{ctx.Q} is not a multiple of {ctx.P}")
