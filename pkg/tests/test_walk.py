import pytest

from support import load_fixture, sample_curves
from ecrho.curve import add, enumerate_points, negate
from ecrho.instances import InstanceSpec
from ecrho.walk import (
    DomainError,
    PartitionRule,
    WalkState,
    holds_invariant,
    iterate,
    partition_index,
    start_state,
    step,
    trace_row,
    walk_table,
)


def expected_rows(name):
    """Rows as printed, with documented errata applied."""
    fx = load_fixture(name)
    rows = [list(r) for r in fx["rows_as_printed"]]
    col = {c: i for i, c in enumerate(fx["columns"])}
    for e in fx["errata"]:
        assert rows[e["row"]][col[e["field"]]] == e["printed"]
        rows[e["row"]][col[e["field"]]] = e["corrected"]
    return fx, [tuple(r) for r in rows]


def test_partition_index():
    assert partition_index((312, 90), PartitionRule(719)) == 2
    assert partition_index(None, PartitionRule(5)) == 1
    assert partition_index((890, 335), PartitionRule(1009)) == 3
    assert partition_index((238, 302), PartitionRule(719)) == 1
    assert partition_index((241, 293), PartitionRule(719)) == 2
    assert partition_index((481, 169), PartitionRule(719)) == 3
    # 3x = p and 3x = 2p sit on the upper side of each boundary
    assert partition_index((3, 0), PartitionRule(9)) == 2
    assert partition_index((6, 0), PartitionRule(9)) == 3


def test_example2_listing_boundary():
    # x = 688 is listed with S2 in the worked example, the x-thirds rule puts it in S3
    assert partition_index((688, 407), PartitionRule(1009)) == 3
    fx, rows = expected_rows("table2.json")
    assert not any(673 <= r[1] <= 688 for r in rows)


def test_start_state(ex1, ex2):
    assert start_state(2, 87, ex1).R == (312, 90)
    assert start_state(46, 229, ex2).R == (981, 997)
    s = start_state(1, ex1.n - 1, ex1)
    assert s.step == 0
    assert s.R == add(ex1.P, negate(ex1.Q, ex1.curve), ex1.curve)
    for bad in ((0, 5), (5, 0), (233, 5), (5, 233)):
        with pytest.raises(DomainError):
            start_state(*bad, ex1)


def test_step_examples(ex1, ex2):
    rule1, rule2 = PartitionRule(719), PartitionRule(1009)
    s = step(WalkState((312, 90), 2, 87), ex1, rule1)
    assert (s.R, s.a, s.b, s.step) == ((567, 38), 4, 174, 1)
    s = step(WalkState((567, 38), 4, 174, 1), ex1, rule1)
    assert (s.R, s.a, s.b) == ((56, 560), 4, 175)
    s = step(WalkState((113, 377), 92, 462, 3), ex2, rule2)
    assert (s.R, s.a, s.b) == ((387, 58), 93, 462)


def test_step_from_infinity(ex1):
    s = step(WalkState(None, 5, 7), ex1, PartitionRule(719))
    assert (s.R, s.a, s.b) == (ex1.P, 6, 7)


@pytest.mark.parametrize("name", ["table1.json", "table2.json"])
def test_table_reproduction(name):
    fx, rows = expected_rows(name)
    ctx = InstanceSpec.from_dict(fx["instance"]).context()
    table = walk_table(ctx, fx["a0"], fx["b0"], len(rows) - 1)
    assert table == rows


def test_table2_erratum_is_real(ex2):
    fx = load_fixture("table2.json")
    printed = fx["rows_as_printed"]
    _, x, y, a, b = printed[47]
    assert b == 725
    assert not holds_invariant(WalkState((x, y), a, b), ex2)
    assert holds_invariant(WalkState((x, y), a, 735), ex2)
    assert printed[46][4] * 2 % 1007 == 735 and printed[48][4] == 736


def test_walk_table_zero_steps(ex1):
    assert walk_table(ex1, 2, 87, 0) == [(0, 312, 90, 2, 87)]


def test_trace_row_infinity():
    assert trace_row(WalkState(None, 1, 2, 3)) == (3, "inf", "inf", 1, 2)


def test_invariant_along_walk(ex2):
    it = iterate(start_state(46, 229, ex2), ex2)
    for _ in range(300):
        assert holds_invariant(next(it), ex2)


def test_step_is_deterministic(ex1):
    s = WalkState((665, 336), 10, 117, 4)
    assert step(s, ex1, PartitionRule(719)) == step(s, ex1, PartitionRule(719))


def test_eventual_periodicity(ex1, ex2):
    for ctx in (ex1, ex2):
        seen = set()
        for s in iterate(start_state(3, 5, ctx), ctx):
            if s.R in seen:
                break
            seen.add(s.R)
        assert s.step <= ctx.n + 1


def test_partition_totality_and_balance():
    for c in sample_curves():
        rule = PartitionRule(c.p)
        sizes = {1: 0, 2: 0, 3: 0}
        pts = enumerate_points(c)
        for pt in pts:
            sizes[partition_index(pt, rule)] += 1
        assert sum(sizes.values()) == len(pts)
        # within 25% of the total of each other on these curves
        assert max(sizes.values()) - min(sizes.values()) <= 0.25 * len(pts)
