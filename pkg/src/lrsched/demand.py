"""Residual-demand calculus and earliest-due-date feasibility checks.

The demand at slot t is D(t) = T - t + 1: at least that much processing must
complete at t or later in any schedule that fills slots 1..T.  Subtracting
what the jobs already covering t provide gives the residual demand; a due-date
vector is feasible exactly when no residual demand remains, and then EDD order
meets every due date.  With release dates the same role is played by interval
demands over [r, t).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Optional, Sequence

from .model import (
    Instance,
    InfeasibleAssignmentError,
    Schedule,
    check_sigma,
)


@dataclass(frozen=True)
class DemandPoint:
    """A slot (and release date, when relevant) with its residual demand."""

    t: int
    value: int
    r: Optional[int] = None


def _check_t(inst: Instance, t: int) -> None:
    if not 1 <= t <= inst.horizon:
        raise ValueError(f"time slot {t} outside 1..{inst.horizon}")


def demand_set(inst: Instance, t: int, jobs: Iterable[int]) -> int:
    """Residual demand at slot t given that `jobs` complete at t or later."""
    _check_t(inst, t)
    covered = sum(inst.ptime(j) for j in jobs)
    return max(inst.horizon - t + 1 - covered, 0)


def demand(inst: Instance, t: int, sigma: Sequence[int]) -> int:
    """Residual demand at slot t under a due-date vector (no release dates)."""
    _check_t(inst, t)
    covered = sum(job.ptime for job, s in zip(inst.jobs, sigma) if s >= t)
    return max(inst.horizon - t + 1 - covered, 0)


def truncated_ptime(inst: Instance, job_id: int, t: int, sigma_or_jobs) -> int:
    """min(p_j, residual demand): the most of the demand one job can cover.

    ``sigma_or_jobs`` is either a due-date vector or an explicit set of
    covering job ids.
    """
    if isinstance(sigma_or_jobs, (set, frozenset)):
        d = demand_set(inst, t, sigma_or_jobs)
    else:
        d = demand(inst, t, sigma_or_jobs)
    return min(inst.ptime(job_id), d)


def demand_rd(inst: Instance, r: int, t: int, sigma: Sequence[int]) -> int:
    """Residual demand for the interval [r, t).

    Counts jobs released at r or later whose due date sits in [r_j, t); their
    processing cannot all fit before t, so the excess must move to t or later.
    """
    if r not in inst.release_dates:
        raise ValueError(f"{r} is not a release date of this instance")
    if not r < t <= inst.horizon:
        raise ValueError(f"need r < t <= {inst.horizon}, got r={r}, t={t}")
    inside = sum(job.ptime for job, s in zip(inst.jobs, sigma)
                 if r <= job.rdate <= s < t)
    return max(r + inside - t + 1, 0)


def truncated_ptime_rd(inst: Instance, job_id: int, r: int, t: int,
                       sigma: Sequence[int]) -> int:
    return min(inst.ptime(job_id), demand_rd(inst, r, t, sigma))


def _demand_sweep(inst: Instance, sigma: Sequence[int]):
    """Yield (t, D(t, sigma)) for t = 1..T in O(n + T)."""
    T = inst.horizon
    drop = [0] * (T + 2)
    covered = 0
    for job, s in zip(inst.jobs, sigma):
        if s >= 1:
            covered += job.ptime
            drop[s + 1] += job.ptime
    for t in range(1, T + 1):
        if t > 1:
            covered -= drop[t]
        yield t, max(T - t + 1 - covered, 0)


def _demand_sweep_rd(inst: Instance, sigma: Sequence[int], r: int):
    """Yield (t, D(r, t, sigma)) for t = r+1..T in O(n + T)."""
    T = inst.horizon
    enter = [0] * (T + 2)
    for job, s in zip(inst.jobs, sigma):
        if r <= job.rdate <= s:
            enter[s + 1] += job.ptime
    inside = 0
    for t in range(1, T + 1):
        inside += enter[t]
        if t > r:
            yield t, max(r + inside - t + 1, 0)


def max_demand_point(inst: Instance, sigma: Sequence[int]) -> DemandPoint:
    """A maximizer of the residual demand.

    Ties are broken deterministically: largest t, and (with release dates)
    smallest r among equal (value, t).
    """
    check_sigma(inst, sigma)
    if inst.horizon == 0:
        return DemandPoint(t=0, value=0)
    if not inst.has_release_dates:
        best_t, best = 1, 0
        for t, d in _demand_sweep(inst, sigma):
            if d >= best:
                best_t, best = t, d
        return DemandPoint(t=best_t, value=best)
    best_t, best_r, best = 0, None, -1
    for r in inst.release_dates:
        for t, d in _demand_sweep_rd(inst, sigma, r):
            if d > best or (d == best and t > best_t):
                best_t, best_r, best = t, r, d
    return DemandPoint(t=best_t, value=best, r=best_r)


def is_feasible(inst: Instance, sigma: Sequence[int]) -> bool:
    """True iff no residual demand remains anywhere.

    Equivalent to some schedule (hence the EDD one) meeting every due date.
    With release dates this assumes sigma_j >= r_j for every job.
    """
    check_sigma(inst, sigma)
    if not inst.has_release_dates:
        return all(d == 0 for _, d in _demand_sweep(inst, sigma))
    return all(d == 0
               for r in inst.release_dates
               for _, d in _demand_sweep_rd(inst, sigma, r))


def edd_schedule(inst: Instance, sigma: Sequence[int]) -> Schedule:
    """Non-preemptive earliest-due-date schedule meeting every due date.

    Jobs run back to back ordered by (due date, id).  Raises
    InfeasibleAssignmentError naming the violated due-date slot when some job
    finishes late, which by the feasibility characterization happens exactly
    when some residual demand is positive.
    """
    check_sigma(inst, sigma)
    if inst.has_release_dates:
        raise ValueError("edd_schedule handles instances without release dates; "
                         "use edd_schedule_preemptive")
    order = sorted(inst.job_ids(), key=lambda j: (sigma[j - 1], j))
    if inst.total_ptime() > inst.horizon:
        raise ValueError("total processing time exceeds the horizon")
    slots = [None] * inst.horizon
    completion = [0] * inst.n
    t = 0
    for j in order:
        for _ in range(inst.ptime(j)):
            slots[t] = j
            t += 1
        completion[j - 1] = t
        if t > sigma[j - 1]:
            raise InfeasibleAssignmentError(
                f"job {j} completes at {t} but is due at {sigma[j - 1]}; "
                f"slot {sigma[j - 1] + 1} has positive residual demand",
                job=j, due=sigma[j - 1], completion=t)
    return Schedule(slots=tuple(slots), completion=tuple(completion),
                    preemptive=False)


def edd_schedule_preemptive(inst: Instance, sigma: Sequence[int]) -> Schedule:
    """Unit-slot preemptive EDD: each slot runs the released, unfinished job
    with the smallest (due date, id).

    Raises InfeasibleAssignmentError naming the violated interval when some
    job finishes after its due date.
    """
    check_sigma(inst, sigma)
    T = inst.horizon
    remaining = [job.ptime for job in inst.jobs]
    slots = [None] * T
    completion = [0] * inst.n
    for t in range(1, T + 1):
        ready = [j for j in inst.job_ids()
                 if remaining[j - 1] > 0 and inst.rdate(j) < t]
        if not ready:
            continue
        j = min(ready, key=lambda i: (sigma[i - 1], i))
        slots[t - 1] = j
        remaining[j - 1] -= 1
        if remaining[j - 1] == 0:
            completion[j - 1] = t
    unfinished = [j for j in inst.job_ids() if remaining[j - 1] > 0]
    if unfinished:
        raise RuntimeError(f"horizon {T} too short: jobs {unfinished} unfinished")
    for j in inst.job_ids():
        if completion[j - 1] > sigma[j - 1]:
            idle = [s for s in range(1, completion[j - 1]) if slots[s - 1] is None]
            start = idle[-1] if idle else 0
            raise InfeasibleAssignmentError(
                f"job {j} completes at {completion[j - 1]} but is due at "
                f"{sigma[j - 1]}; interval [{start}, {sigma[j - 1] + 1}) has "
                f"positive residual demand",
                job=j, due=sigma[j - 1], completion=completion[j - 1])
    return Schedule(slots=tuple(slots), completion=tuple(completion),
                    preemptive=True)
