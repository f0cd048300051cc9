"""Small builders shared across the test modules."""

from lrsched import (
    CostFunction,
    InfeasibleAssignmentError,
    Instance,
    Job,
    edd_schedule,
    edd_schedule_preemptive,
)


def zero_cost_instance(ptimes, rdates=None):
    """Instance with all-zero cost tables (feasibility only depends on p, r)."""
    rdates = rdates or [0] * len(ptimes)
    jobs = [Job(i + 1, p, r) for i, (p, r) in enumerate(zip(ptimes, rdates))]
    T = max(rdates) + sum(ptimes)
    costs = [CostFunction.from_values([0] * (T + 1)) for _ in ptimes]
    return Instance.build(jobs, costs)


def table_instance(ptimes, tables, rdates=None):
    rdates = rdates or [0] * len(ptimes)
    jobs = [Job(i + 1, p, r) for i, (p, r) in enumerate(zip(ptimes, rdates))]
    costs = [CostFunction.from_values(t) for t in tables]
    return Instance.build(jobs, costs)


def edd_meets(inst, sigma):
    try:
        edd_schedule(inst, sigma)
        return True
    except InfeasibleAssignmentError:
        return False


def edd_meets_preemptive(inst, sigma):
    try:
        edd_schedule_preemptive(inst, sigma)
        return True
    except InfeasibleAssignmentError:
        return False
