"""Due-date growing solver: local-ratio cost decomposition with reverse undo.

Starting from the all-zero assignment, the solver repeatedly finds the slot
with maximum residual demand, splits the current cost vector g into
g = g~ + alpha * g^ (g^ charges each not-yet-covering job its truncated
processing time from that slot on, and alpha is the largest scale keeping
g~ >= 0), and raises the due date of a job whose residual just hit zero.
Once feasible, the raises are tried in reverse (LIFO) and undone whenever
feasibility survives.  The sum of alpha * demand over all levels is a valid
lower bound on the optimal cost; the final assignment costs at most four
times the optimum.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import List, Optional, Sequence, Tuple

from .demand import demand, edd_schedule, is_feasible, max_demand_point
from .model import (
    INFINITY,
    Cost,
    Instance,
    InvalidInstanceError,
    Schedule,
    UnboundedAlphaError,
    is_infinite,
    total_cost,
    validate_instance,
)


@dataclass(frozen=True)
class ModelCosts:
    """Step cost vector: job i is charged ``heights[i]`` at every slot >= start."""

    start: int
    heights: dict

    def value(self, job_id: int, t: int) -> int:
        return self.heights.get(job_id, 0) if t >= self.start else 0

    @property
    def support(self) -> frozenset:
        return frozenset(self.heights)


@dataclass
class DecompositionStep:
    """One growing level plus its undo outcome."""

    level: int
    t_star: int
    demand: int
    alpha: Fraction
    chosen_job: int
    chosen_time: int
    prior_due: int
    model: ModelCosts
    sigma_before: tuple
    r_star: Optional[int] = None
    reverted: Optional[bool] = None
    rho_after: Optional[tuple] = None


@dataclass(frozen=True)
class SolveResult:
    final_sigma: tuple
    schedule: Schedule
    primal_cost: Cost
    lower_bound: Fraction
    trace: tuple

    @property
    def levels(self) -> int:
        return len(self.trace)


@dataclass
class LevelBoundReport:
    """Per-level check that the kept raises stay within factor * demand."""

    factor: int
    ok: bool
    max_ratio: Optional[Fraction]
    failures: list


@dataclass
class InvariantReport:
    violations: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations

    def add(self, message: str) -> None:
        self.violations.append(message)


def build_model_costs(inst: Instance, sigma: Sequence[int], t_star: int) -> ModelCosts:
    """Model cost step functions for slot t_star (no release dates).

    Every job with a due date before t_star is charged its truncated
    processing time min(p_i, D(t_star, sigma)) at each slot >= t_star.
    """
    d = demand(inst, t_star, sigma)
    heights = {job.id: min(job.ptime, d)
               for job, s in zip(inst.jobs, sigma) if s < t_star}
    return ModelCosts(start=t_star, heights=heights)


def compute_alpha(residuals: Sequence[list], model: ModelCosts
                  ) -> Tuple[Fraction, list]:
    """Largest alpha with residuals - alpha * model >= 0, plus the argmin pairs.

    alpha is the minimum of g_i(t) / g^_i(t) over the model support; infinite
    residual entries never bound alpha.  Raises UnboundedAlphaError when no
    finite entry exists on the support at all.
    """
    if not model.heights:
        raise ValueError("model cost vector has empty support")
    best: Optional[Fraction] = None
    for job_id, height in model.heights.items():
        row = residuals[job_id - 1]
        for t in range(model.start, len(row)):
            value = row[t]
            if is_infinite(value):
                continue
            ratio = Fraction(value, height)
            if best is None or ratio < best:
                best = ratio
    if best is None:
        raise UnboundedAlphaError(
            "every candidate job has infinite residual cost at every slot "
            "covering the demand")
    tight = []
    for job_id, height in model.heights.items():
        row = residuals[job_id - 1]
        target = best * height
        for t in range(model.start, len(row)):
            if not is_infinite(row[t]) and row[t] == target:
                tight.append((job_id, t))
    return best, tight


def select_tight_pair(tight_pairs: Sequence[tuple]) -> tuple:
    """Deterministic choice among tight (job, time) pairs: largest time, then
    smallest job id."""
    if not tight_pairs:
        raise ValueError("no tight pairs to select from")
    return max(tight_pairs, key=lambda pair: (pair[1], -pair[0]))


def _subtract(residuals: Sequence[list], model: ModelCosts, alpha: Fraction) -> None:
    if alpha == 0:
        return
    for job_id, height in model.heights.items():
        row = residuals[job_id - 1]
        delta = alpha * height
        for t in range(model.start, len(row)):
            if is_infinite(row[t]):
                continue
            row[t] -= delta
            if row[t] < 0:
                raise RuntimeError("residual cost went negative; alpha too large")


def _grow_and_undo(inst: Instance, sigma: List[int], decompose) -> List[DecompositionStep]:
    """Shared growing loop + LIFO undo.  ``decompose`` performs one cost
    decomposition for the current maximum-demand point and returns the step."""
    trace: List[DecompositionStep] = []
    limit = inst.n * inst.horizon
    while True:
        point = max_demand_point(inst, sigma)
        if point.value == 0:
            break
        if len(trace) >= limit:
            raise RuntimeError(f"growing exceeded {limit} levels; "
                               "due dates failed to make progress")
        step = decompose(point, tuple(sigma), len(trace) + 1)
        sigma[step.chosen_job - 1] = step.chosen_time
        trace.append(step)
    rho = list(sigma)
    for step in reversed(trace):
        candidate = list(rho)
        candidate[step.chosen_job - 1] = step.prior_due
        if is_feasible(inst, candidate):
            rho = candidate
            step.reverted = True
        else:
            step.reverted = False
        step.rho_after = tuple(rho)
    sigma[:] = rho
    return trace


def local_ratio_solve(inst: Instance) -> SolveResult:
    """Grow due dates from zero until feasible, undo in reverse, and return
    the assignment with its EDD schedule, exact cost, and certified lower
    bound (sum of alpha * demand over all levels)."""
    report = validate_instance(inst)
    if not report.ok:
        raise InvalidInstanceError(report)
    if inst.has_release_dates:
        raise ValueError("instance has release dates; use local_ratio_solve_rd")
    residuals = [list(cf.values) for cf in inst.costs]
    sigma = [0] * inst.n

    def decompose(point, sigma_snapshot, level):
        model = build_model_costs(inst, sigma_snapshot, point.t)
        alpha, tight = compute_alpha(residuals, model)
        job_id, s = select_tight_pair(tight)
        _subtract(residuals, model, alpha)
        return DecompositionStep(
            level=level, t_star=point.t, demand=point.value, alpha=alpha,
            chosen_job=job_id, chosen_time=s,
            prior_due=sigma_snapshot[job_id - 1], model=model,
            sigma_before=sigma_snapshot)

    trace = _grow_and_undo(inst, sigma, decompose)
    lower_bound = sum((step.alpha * step.demand for step in trace), Fraction(0))
    return SolveResult(
        final_sigma=tuple(sigma),
        schedule=edd_schedule(inst, sigma),
        primal_cost=total_cost(inst, sigma),
        lower_bound=lower_bound,
        trace=tuple(trace))


def check_level_bound(result: SolveResult, factor: int = 4) -> LevelBoundReport:
    """Verify, per level, that the truncated processing of jobs whose raise
    survived past t_star totals at most factor * demand."""
    max_ratio: Optional[Fraction] = None
    failures = []
    for step in result.trace:
        kept = sum(height for job_id, height in step.model.heights.items()
                   if step.rho_after[job_id - 1] >= step.t_star)
        ratio = Fraction(kept, step.demand)
        if max_ratio is None or ratio > max_ratio:
            max_ratio = ratio
        if kept > factor * step.demand:
            failures.append(step.level)
    return LevelBoundReport(factor=factor, ok=not failures,
                            max_ratio=max_ratio, failures=failures)


def _rebuilt_residual(inst: Instance, steps: Sequence[DecompositionStep],
                      job_id: int, t: int) -> Cost:
    """Residual cost of (job, t) after subtracting the given steps from f."""
    value = inst.cost(job_id)(t)
    if is_infinite(value):
        return INFINITY
    for step in steps:
        if t >= step.model.start:
            value -= step.alpha * step.model.value(job_id, t)
    return value


def verify_solve_invariants(inst: Instance, result: SolveResult,
                            initial_sigma: Optional[Sequence[int]] = None,
                            factor: int = 4) -> InvariantReport:
    """Re-derive the structural solve invariants from the trace alone.

    Checks, independently of the solver's in-place arithmetic: the iteration
    budget, the one-coordinate monotone growing chain, the one-coordinate
    undo chain, zero residual cost at every current due date, the final
    residual vector staying non-negative, and the per-level bound of
    ``check_level_bound``.
    """
    report = InvariantReport()
    trace = result.trace
    n, T = inst.n, inst.horizon
    if initial_sigma is None:
        initial_sigma = [0] * n
    if len(trace) > n * T:
        report.add(f"growing used {len(trace)} levels, above the n*T = {n * T} budget")
    expected = tuple(initial_sigma)
    for step in trace:
        if step.sigma_before != expected:
            report.add(f"level {step.level}: sigma chain broken")
        if not step.prior_due < step.t_star <= step.chosen_time:
            report.add(f"level {step.level}: raise must satisfy "
                       f"prior < t* <= chosen time, got {step.prior_due}, "
                       f"{step.t_star}, {step.chosen_time}")
        if step.chosen_job not in step.model.heights:
            report.add(f"level {step.level}: chosen job outside model support")
        grown = list(step.sigma_before)
        grown[step.chosen_job - 1] = step.chosen_time
        expected = tuple(grown)
    grown_final = expected

    # Undo chain: rho^(k) differs from rho^(k+1) in at most the level's own
    # coordinate, reverted to its prior value, and dominates sigma^(k).
    # Every unwound vector must stay feasible, and a kept raise must be
    # genuinely necessary (reverting it would break feasibility).
    following = grown_final
    for step in reversed(trace):
        rho = step.rho_after
        if step.reverted:
            expected_rho = list(following)
            expected_rho[step.chosen_job - 1] = step.prior_due
            if rho != tuple(expected_rho):
                report.add(f"level {step.level}: revert did not restore the "
                           "prior due date of the chosen job")
        else:
            if rho != following:
                report.add(f"level {step.level}: kept raise must leave rho unchanged")
            candidate = list(rho)
            candidate[step.chosen_job - 1] = step.prior_due
            if is_feasible(inst, candidate):
                report.add(f"level {step.level}: raise was kept although "
                           "reverting it stays feasible")
        if not is_feasible(inst, rho):
            report.add(f"level {step.level}: unwound assignment is infeasible")
        if any(r < s for r, s in zip(rho, step.sigma_before)):
            report.add(f"level {step.level}: rho does not dominate sigma")
        if any(a > b for a, b in zip(rho, following)):
            report.add(f"level {step.level}: rho chain not monotone")
        following = rho
    if trace and result.final_sigma != trace[0].rho_after:
        report.add("final sigma differs from the fully unwound rho")

    for k, step in enumerate(trace):
        for job in inst.jobs:
            residual = _rebuilt_residual(inst, trace[:k], job.id,
                                         step.sigma_before[job.id - 1])
            if residual != 0:
                report.add(f"level {step.level}: residual cost of job {job.id} "
                           "at its current due date is nonzero")
    for job in inst.jobs:
        for t in range(T + 1):
            residual = _rebuilt_residual(inst, trace, job.id, t)
            if not is_infinite(residual) and residual < 0:
                report.add(f"final residual of job {job.id} at t={t} is negative")
                break

    bounds = check_level_bound(result, factor=factor)
    if not bounds.ok:
        report.add(f"level bound factor {factor} violated at levels {bounds.failures}")

    if not is_feasible(inst, result.final_sigma):
        report.add("final assignment is infeasible")
    if not is_infinite(result.primal_cost) and result.lower_bound > result.primal_cost:
        report.add("lower bound exceeds primal cost")
    return report
