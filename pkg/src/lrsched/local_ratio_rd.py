"""Release-date variant of the due-date growing solver.

Identical skeleton to :mod:`lrsched.local_ratio`, with interval demands
D(r, t, sigma) in place of slot demands, model costs gated by the release
date window r* <= r_i < t*, the initial assignment (r_1, ..., r_n), and a
preemptive EDD schedule.  The per-level bound weakens to 4 * kappa where
kappa is the number of distinct release dates.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence

from .demand import demand_rd, edd_schedule_preemptive
from .local_ratio import (
    DecompositionStep,
    InvariantReport,
    LevelBoundReport,
    ModelCosts,
    SolveResult,
    _grow_and_undo,
    _subtract,
    check_level_bound,
    compute_alpha,
    select_tight_pair,
    verify_solve_invariants,
)
from .model import Instance, InvalidInstanceError, total_cost, validate_instance


def build_model_costs_rd(inst: Instance, sigma: Sequence[int], r_star: int,
                         t_star: int) -> ModelCosts:
    """Model cost step functions for the interval [r_star, t_star).

    Only jobs released inside the window (r* <= r_i < t*) whose due date is
    still before t_star are charged; the step height is the truncated
    processing time min(p_i, D(r*, t*, sigma)).
    """
    d = demand_rd(inst, r_star, t_star, sigma)
    heights = {job.id: min(job.ptime, d)
               for job, s in zip(inst.jobs, sigma)
               if r_star <= job.rdate < t_star and s < t_star}
    return ModelCosts(start=t_star, heights=heights)


def local_ratio_solve_rd(inst: Instance) -> SolveResult:
    """Release-date due-date growing solver.

    Starts from sigma = (r_1, ..., r_n), picks the (release date, slot) pair
    of maximum interval demand each level, and otherwise mirrors
    :func:`local_ratio_solve`.  Returns the feasible assignment with its
    preemptive EDD schedule, exact cost, and lower bound.
    """
    report = validate_instance(inst)
    if not report.ok:
        raise InvalidInstanceError(report)
    residuals = [list(cf.values) for cf in inst.costs]
    sigma = [job.rdate for job in inst.jobs]

    def decompose(point, sigma_snapshot, level):
        r_star = point.r if point.r is not None else 0
        model = build_model_costs_rd(inst, sigma_snapshot, r_star, point.t)
        alpha, tight = compute_alpha(residuals, model)
        job_id, s = select_tight_pair(tight)
        _subtract(residuals, model, alpha)
        return DecompositionStep(
            level=level, t_star=point.t, demand=point.value, alpha=alpha,
            chosen_job=job_id, chosen_time=s,
            prior_due=sigma_snapshot[job_id - 1], model=model,
            sigma_before=sigma_snapshot, r_star=r_star)

    trace = _grow_and_undo(inst, sigma, decompose)
    lower_bound = sum((step.alpha * step.demand for step in trace), Fraction(0))
    return SolveResult(
        final_sigma=tuple(sigma),
        schedule=edd_schedule_preemptive(inst, sigma),
        primal_cost=total_cost(inst, sigma),
        lower_bound=lower_bound,
        trace=tuple(trace))


def check_level_bound_rd(result: SolveResult, kappa: int) -> LevelBoundReport:
    """Per-level bound with the release-date factor 4 * kappa."""
    return check_level_bound(result, factor=4 * kappa)


def verify_solve_invariants_rd(inst: Instance, result: SolveResult) -> InvariantReport:
    initial = [job.rdate for job in inst.jobs]
    return verify_solve_invariants(inst, result, initial_sigma=initial,
                                   factor=4 * inst.kappa)
