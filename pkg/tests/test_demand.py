import itertools
import random

import pytest

from lrsched import (
    InfeasibleAssignmentError,
    counterexample,
    demand,
    demand_rd,
    demand_set,
    edd_schedule,
    edd_schedule_preemptive,
    is_feasible,
    max_demand_point,
    truncated_ptime,
    truncated_ptime_rd,
)
from helpers import zero_cost_instance


@pytest.fixture
def cx4():
    return counterexample(4)


def test_demand_initial_state(cx4):
    assert demand(cx4, 1, (0, 0, 0, 0)) == 16


def test_demand_mid_run_state(cx4):
    # state after three growing levels: jobs 2..4 hold due dates (3, 10, 10)
    assert demand(cx4, 11, (3, 0, 10, 10)) == 6


def test_demand_clamps_at_zero(cx4):
    assert demand(cx4, 5, (16, 16, 16, 16)) == 0


def test_demand_rejects_bad_slot(cx4):
    with pytest.raises(ValueError):
        demand(cx4, 0, (0, 0, 0, 0))
    with pytest.raises(ValueError):
        demand(cx4, 17, (0, 0, 0, 0))


def test_demand_set_values(cx4):
    assert demand_set(cx4, 1, {3}) == 12
    assert demand_set(cx4, 11, set()) == 6
    assert demand_set(cx4, 16, set()) == 1


def test_demand_matches_demand_set(cx4):
    rng = random.Random(11)
    for _ in range(100):
        sigma = [rng.randint(0, 16) for _ in range(4)]
        for t in range(1, 17):
            covering = {j for j in range(1, 5) if sigma[j - 1] >= t}
            assert demand(cx4, t, sigma) == demand_set(cx4, t, covering)


def test_truncated_ptime(cx4):
    assert truncated_ptime(cx4, 1, 11, set()) == 4
    assert truncated_ptime(cx4, 1, 15, set()) == 2   # demand there is only 2
    assert truncated_ptime(cx4, 1, 5, (16, 16, 16, 16)) == 0


def test_demand_rd_examples():
    inst = zero_cost_instance([2, 3], rdates=[0, 2])
    assert demand_rd(inst, 0, 3, (0, 2)) == 3
    assert demand_rd(inst, 2, 3, (0, 2)) == 3
    assert demand_rd(inst, 0, 3, (7, 7)) == 0


def test_demand_rd_rejects_bad_arguments():
    inst = zero_cost_instance([2, 3], rdates=[0, 2])
    with pytest.raises(ValueError):
        demand_rd(inst, 1, 3, (0, 2))   # 1 is not a release date
    with pytest.raises(ValueError):
        demand_rd(inst, 2, 2, (0, 2))   # needs t > r


def test_truncated_ptime_rd():
    inst = zero_cost_instance([2, 3], rdates=[0, 2])
    assert truncated_ptime_rd(inst, 1, 0, 3, (0, 2)) == 2   # min(2, 3)
    assert truncated_ptime_rd(inst, 2, 0, 3, (0, 2)) == 3
    assert truncated_ptime_rd(inst, 2, 0, 3, (7, 7)) == 0


def test_max_demand_point_initial(cx4):
    point = max_demand_point(cx4, (0, 0, 0, 0))
    assert (point.t, point.value) == (1, 16)


def test_max_demand_point_mid_run(cx4):
    point = max_demand_point(cx4, (3, 0, 10, 10))
    assert (point.t, point.value) == (11, 6)


def test_max_demand_point_feasible_vector(cx4):
    assert max_demand_point(cx4, (11, 11, 16, 16)).value == 0


def test_max_demand_point_prefers_largest_t():
    # two jobs of length 1: demand is 2 at t=1 only, so push sigma to make a tie
    inst = zero_cost_instance([1, 1])
    point = max_demand_point(inst, (0, 0))
    assert point.t == 1 and point.value == 2
    # all-covered: value 0 everywhere, largest slot reported
    assert max_demand_point(inst, (2, 2)).value == 0


def test_max_demand_point_rd_tie_breaks():
    inst = zero_cost_instance([2, 2], rdates=[0, 2])
    point = max_demand_point(inst, (0, 2))
    assert point.r is not None
    assert demand_rd(inst, point.r, point.t, (0, 2)) == point.value


def test_is_feasible_gap_instance(cx4):
    assert is_feasible(cx4, (11, 11, 16, 16))
    # job 4 stuck at 10 leaves slot 12 uncovered: only job 3 covers it
    assert not is_feasible(cx4, (11, 11, 16, 10))
    assert demand_set(cx4, 12, {3}) == 1
    assert is_feasible(cx4, (16, 16, 16, 16))


def test_demand_monotone_in_sigma(cx4):
    rng = random.Random(23)
    for _ in range(60):
        sigma = [rng.randint(0, 16) for _ in range(4)]
        bigger = [min(16, s + rng.randint(0, 4)) for s in sigma]
        for t in range(1, 17):
            assert demand(cx4, t, sigma) >= demand(cx4, t, bigger)


def test_demand_rd_monotone_in_sigma():
    inst = zero_cost_instance([2, 1, 2], rdates=[0, 2, 2])
    rng = random.Random(29)
    T = inst.horizon
    for _ in range(60):
        sigma = [rng.randint(inst.rdate(j), T) for j in inst.job_ids()]
        bigger = [min(T, s + rng.randint(0, 3)) for s in sigma]
        for r in inst.release_dates:
            for t in range(r + 1, T + 1):
                assert demand_rd(inst, r, t, sigma) >= demand_rd(inst, r, t, bigger)


def test_initial_demand_equals_horizon(cx4):
    assert demand(cx4, 1, (0, 0, 0, 0)) == cx4.horizon


def test_edd_schedule_gap_instance(cx4):
    schedule = edd_schedule(cx4, (11, 11, 16, 16))
    assert schedule.completion == (4, 8, 12, 16)
    assert not schedule.preemptive
    assert all(slot is not None for slot in schedule.slots)


def test_edd_schedule_single_job():
    inst = zero_cost_instance([3])
    assert edd_schedule(inst, (3,)).completion == (3,)


def test_edd_schedule_orders_by_due_date():
    inst = zero_cost_instance([2, 2])
    schedule = edd_schedule(inst, (4, 2))
    assert schedule.completion == (4, 2)
    assert schedule.slots == (2, 2, 1, 1)


def test_edd_schedule_reports_violation(cx4):
    with pytest.raises(InfeasibleAssignmentError) as err:
        edd_schedule(cx4, (11, 11, 16, 10))
    assert err.value.completion > err.value.due


def test_edd_schedule_rejects_release_dates():
    inst = zero_cost_instance([1, 1], rdates=[0, 1])
    with pytest.raises(ValueError):
        edd_schedule(inst, (1, 2))


def test_edd_preemptive_interleaves():
    inst = zero_cost_instance([2, 1], rdates=[0, 1])
    schedule = edd_schedule_preemptive(inst, (3, 2))
    assert schedule.slots == (1, 2, 1, None)
    assert schedule.completion == (3, 2)
    assert schedule.preemptive


def test_edd_preemptive_single_job():
    inst = zero_cost_instance([2], rdates=[5])
    schedule = edd_schedule_preemptive(inst, (7,))
    assert schedule.completion == (7,)
    assert schedule.slots[:5] == (None,) * 5


def test_edd_preemptive_matches_shifted_sequence():
    # one common release date: preemptive EDD is the non-preemptive order moved right
    inst = zero_cost_instance([2, 1, 3], rdates=[2, 2, 2])
    sigma = (4, 8, 8)
    schedule = edd_schedule_preemptive(inst, sigma)
    order = sorted(inst.job_ids(), key=lambda j: (sigma[j - 1], j))
    t = 2
    for j in order:
        t += inst.ptime(j)
        assert schedule.completion_of(j) == t


def test_edd_preemptive_reports_interval():
    inst = zero_cost_instance([2, 1], rdates=[0, 1])
    with pytest.raises(InfeasibleAssignmentError) as err:
        edd_schedule_preemptive(inst, (3, 1))
    assert err.value.job == 2


def test_feasibility_biconditional_small():
    inst = zero_cost_instance([2, 2])
    for sigma in itertools.product(range(5), repeat=2):
        from helpers import edd_meets
        assert is_feasible(inst, sigma) == edd_meets(inst, sigma)
