import pytest

from ecrho.parallel import make_walkers, solve_parallel
from ecrho.solver import Exhausted, solve_improved, verify


def test_single_walker_matches_improved(ex1, ex2):
    for ctx, a0, b0 in ((ex1, 2, 87), (ex2, 46, 229), (ex1, 17, 5), (ex2, 400, 3)):
        for seed in (0, 9):
            assert solve_parallel(ctx, 1, seed, starts=[(a0, b0)]) == solve_improved(ctx, a0, b0, seed=seed)


def test_example2_two_walkers(ex2):
    r = solve_parallel(ex2, 2, master_seed=1, starts=[(46, 229)])
    assert r.k == 766 and verify(r.k, ex2)


@pytest.mark.parametrize("walkers", [2, 4, 8])
def test_sequential_is_deterministic(ex1, ex2, walkers):
    for ctx in (ex1, ex2):
        first = solve_parallel(ctx, walkers, master_seed=42)
        assert verify(first.k, ctx)
        assert solve_parallel(ctx, walkers, master_seed=42) == first


def test_walker_streams_are_prefix_stable(ex2):
    few = make_walkers(ex2, 3, 5)
    many = make_walkers(ex2, 6, 5)
    assert [(w.a0, w.b0) for w in few] == [(w.a0, w.b0) for w in many[:3]]
    assert len({(w.a0, w.b0) for w in many}) == 6


def test_four_walkers_step_bound(ex1):
    single = solve_improved(ex1, 17, 5)
    r = solve_parallel(ex1, 4, master_seed=3, starts=[(17, 5)])
    assert r.k == 158
    assert r.steps_taken <= 4 * max(single.steps_taken, 1)


def test_cross_walker_collision(ex2):
    found = []
    for seed in range(40):
        r = solve_parallel(ex2, 3, master_seed=seed, checks={"direct", "reverse"})
        assert verify(r.k, ex2)
        if r.collision.other_walker not in (None, r.collision.walker):
            found.append(r)
    assert found, "expected at least one cross-walker collision over 40 seeds"


@pytest.mark.parametrize("walkers", [1, 3, 8])
def test_concurrent_schedule(ex1, ex2, walkers):
    for ctx in (ex1, ex2):
        r = solve_parallel(ctx, walkers, master_seed=11, schedule="conc")
        assert verify(r.k, ctx)


def test_concurrent_unique_solution_value(ex2):
    r = solve_parallel(ex2, 4, master_seed=0, schedule="conc", starts=[(46, 229)])
    assert r.k == 766


def test_budget_and_validation(ex2):
    with pytest.raises(Exhausted):
        solve_parallel(ex2, 2, checks={"direct"}, max_total_steps=3)
    with pytest.raises(ValueError):
        solve_parallel(ex2, 0)
    with pytest.raises(ValueError):
        solve_parallel(ex2, 2, schedule="async")
