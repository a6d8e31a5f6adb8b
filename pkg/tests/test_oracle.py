import random

import pytest

from ecrho.curve import GroupContext, enumerate_points, scalar_mul
from ecrho.instances import random_instance
from ecrho.oracle import NotInSubgroup, brute_force_log


def test_examples(ex1, ex2):
    assert brute_force_log(ex1) == 158
    assert brute_force_log(ex2) == 766


def test_q_equals_p(ex1):
    assert brute_force_log(GroupContext(ex1.curve, ex1.P, ex1.P, ex1.n)) == 1


def test_not_in_subgroup(ex1):
    # the curve has 699 = 3 * 233 points; a point of order 3 is outside <P>
    c = ex1.curve
    T = next(t for t in (scalar_mul(233, pt, c) for pt in enumerate_points(c)) if t is not None)
    assert scalar_mul(3, T, c) is None
    with pytest.raises(NotInSubgroup):
        brute_force_log(GroupContext(c, ex1.P, T, ex1.n))


def test_random_instances_roundtrip():
    rng = random.Random(3)
    for _ in range(20):
        ctx, k = random_instance(rng)
        found = brute_force_log(ctx)
        assert scalar_mul(found, ctx.P, ctx.curve) == ctx.Q
        assert found == k
