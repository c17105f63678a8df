from math import lcm

import pytest

from projdyn.constructor import period_bound
from projdyn.errors import PlanInfeasible
from projdyn.planner import ExtraPeriod, PeriodPlan, best_plan, period_menu, realize_plan


def brute_force_best(N, extra=()):
    """Every multiset of blocks (dim, period >= 2) with total dimension <= N."""
    options = [(m, p) for m in range(1, N + 1) for p in period_menu(m, extra) if p > 1]

    def walk(start, left, value):
        best = value
        for idx in range(start, len(options)):
            m, p = options[idx]
            if m <= left:
                best = max(best, walk(idx, left - m, lcm(value, p)))
        return best

    return walk(0, N, 1)


@pytest.mark.parametrize("N", range(1, 13))
def test_matches_brute_force(N):
    assert best_plan(N).achieved == brute_force_best(N)


def test_matches_brute_force_with_extras():
    extra = [ExtraPeriod(2, 8), ExtraPeriod(2, 9)]
    for N in range(1, 6):
        assert best_plan(N, extra).achieved == brute_force_best(N, extra)


def test_known_plans():
    assert best_plan(1).to_json() == {"blocks": [{"dim": 1, "period": 3}], "achieved": 3}
    assert best_plan(2).to_json() == {"blocks": [{"dim": 2, "period": 7}], "achieved": 7}
    assert best_plan(3).blocks == ((1, 3), (2, 7))
    assert best_plan(3).achieved == 21
    assert best_plan(4).achieved == 42
    assert best_plan(4, [ExtraPeriod(2, 8)]).achieved == 56
    assert best_plan(4, [ExtraPeriod(2, 8), ExtraPeriod(2, 9)]).achieved == 72


def test_tie_break_prefers_fewer_blocks():
    # 42 is reachable with (2,6)+(2,7) and with (1,2)+(1,3)+(2,7)
    assert best_plan(4).blocks == ((2, 6), (2, 7))


def test_bound_and_monotonicity():
    prev = 0
    for N in range(1, 25):
        plan = best_plan(N)
        assert plan.achieved >= period_bound(N)
        assert plan.achieved >= prev
        assert sum(m for m, _ in plan.blocks) == N
        assert all(n <= period_bound(m) for m, n in plan.blocks)
        prev = plan.achieved
    for N in range(3, 13):
        assert best_plan(N).achieved > period_bound(N)


def test_extra_period_parse():
    assert ExtraPeriod.parse("2:8") == ExtraPeriod(2, 8, None)
    assert ExtraPeriod.parse("2:9:fixture:ex1_p2_period9").source == "fixture:ex1_p2_period9"
    with pytest.raises(ValueError):
        ExtraPeriod.parse("2")


@pytest.mark.parametrize("blocks,period", [
    (((1, 3), (2, 7)), 21),
    (((2, 7), (2, 7)), 7),
    (((1, 3), (2, 8)), 24),
])
def test_realize(blocks, period):
    dim = sum(m for m, _ in blocks)
    plan = PeriodPlan(dim, blocks, period, (ExtraPeriod(2, 8),))
    phi, point, cert = realize_plan(plan)
    assert phi.dimension == dim
    assert cert["period"] == period
    assert cert["morphism"]["decision"] == "morphism"


def test_realize_pads_with_fixed_block():
    plan = best_plan(14)
    assert plan.blocks[-1][1] == 1


def test_missing_witness_is_infeasible():
    plan = PeriodPlan(2, ((2, 10),), 10, (ExtraPeriod(2, 10),))
    with pytest.raises(PlanInfeasible):
        realize_plan(plan)


def test_wrong_witness_is_infeasible():
    plan = PeriodPlan(2, ((2, 9),), 9, (ExtraPeriod(2, 9, "fixture:ex2_p2_period8"),))
    with pytest.raises(PlanInfeasible):
        realize_plan(plan)
