"""Exact brute-force optimum for desk-scale instances.

Enumerates all n! priority orders.  For a fixed order the priority schedule
(always run the released, unfinished job earliest in the order) minimizes
every completion time simultaneously among schedules consistent with that
order, so with non-decreasing costs the minimum over orders is the exact
optimum.  Without release dates this degenerates to plain sequencing, since
preemption cannot help.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, List, Optional, Sequence

from .model import Cost, INFINITY, Instance, Schedule, is_infinite


@dataclass(frozen=True)
class OracleResult:
    opt_cost: Cost
    schedule: Schedule
    order: tuple  # job ids by priority, lexicographically smallest optimum


@dataclass
class ExhaustiveReport:
    total: int
    failures: list

    @property
    def ok(self) -> bool:
        return not self.failures


def _priority_completions(ptimes: Sequence[int], rdates: Sequence[int],
                          order: Sequence[int]) -> List[int]:
    """Completion times of the preemptive priority schedule for one order.

    Runs segment by segment between release times; order entries are 0-based
    job indexes, highest priority first.
    """
    n = len(order)
    remaining = list(ptimes)
    completion = [0] * n
    releases = sorted(set(rdates))
    time = 0
    done = 0
    while done < n:
        ready = [i for i in order if remaining[i] > 0 and rdates[i] <= time]
        if not ready:
            time = min(rdates[i] for i in range(n) if remaining[i] > 0 and rdates[i] > time)
            continue
        i = ready[0]
        horizon_next = [r for r in releases if r > time]
        run = remaining[i] if not horizon_next else min(remaining[i], horizon_next[0] - time)
        time += run
        remaining[i] -= run
        if remaining[i] == 0:
            completion[i] = time
            done += 1
    return completion


def _sequence_schedule(inst: Instance, order: Sequence[int]) -> Schedule:
    slots = [None] * inst.horizon
    completion = [0] * inst.n
    t = 0
    for i in order:
        for _ in range(inst.jobs[i].ptime):
            slots[t] = i + 1
            t += 1
        completion[i] = t
    return Schedule(slots=tuple(slots), completion=tuple(completion), preemptive=False)


def _priority_schedule(inst: Instance, order: Sequence[int]) -> Schedule:
    ptimes = [job.ptime for job in inst.jobs]
    rdates = [job.rdate for job in inst.jobs]
    slots = [None] * inst.horizon
    remaining = list(ptimes)
    completion = [0] * inst.n
    for t in range(1, inst.horizon + 1):
        ready = [i for i in order if remaining[i] > 0 and rdates[i] < t]
        if not ready:
            continue
        i = ready[0]
        slots[t - 1] = i + 1
        remaining[i] -= 1
        if remaining[i] == 0:
            completion[i] = t
    return Schedule(slots=tuple(slots), completion=tuple(completion), preemptive=True)


def brute_force_opt(inst: Instance, max_jobs: int = 8) -> OracleResult:
    """Exact optimum by enumerating all n! priority orders.

    Returns the minimum cost, a witness schedule, and the lexicographically
    smallest optimal order.  Deliberately the simplest correct method: the
    run time is n! * n-ish, which is fine for the verification sizes this
    oracle exists for.
    """
    if inst.n > max_jobs:
        raise ValueError(f"oracle capped at {max_jobs} jobs, got {inst.n}")
    if inst.n == 0:
        empty = Schedule(slots=(), completion=(), preemptive=False)
        return OracleResult(opt_cost=0, schedule=empty, order=())
    tables = [cf.values for cf in inst.costs]
    ptimes = [job.ptime for job in inst.jobs]
    rdates = [job.rdate for job in inst.jobs]
    with_releases = inst.has_release_dates
    best: Optional[Cost] = None
    best_order: Optional[tuple] = None

    for order in itertools.permutations(range(inst.n)):
        if with_releases:
            completion = _priority_completions(ptimes, rdates, order)
            cost: Cost = 0
            for i, c in enumerate(completion):
                value = tables[i][c]
                if is_infinite(value):
                    cost = INFINITY
                    break
                cost += value
        else:
            cost = 0
            t = 0
            abandoned = False
            for i in order:
                t += ptimes[i]
                value = tables[i][t]
                if is_infinite(value):
                    cost = INFINITY
                    break
                cost += value
                if best is not None and cost >= best:
                    abandoned = True
                    break
            if abandoned:
                continue
        if best is None or cost < best:
            best = cost
            best_order = order

    if best_order is None:  # every order costs INFINITY
        best_order = tuple(range(inst.n))
        best = INFINITY
    witness = (_priority_schedule(inst, best_order) if with_releases
               else _sequence_schedule(inst, best_order))
    return OracleResult(opt_cost=best, schedule=witness,
                        order=tuple(i + 1 for i in best_order))


def smith_rule_cost(inst: Instance) -> Cost:
    """Cost of sequencing by non-increasing f_j(1) / p_j (no release dates).

    For linear cost tables f_j(t) = w_j * t this is the classic exact rule,
    which makes it an independent cross-check of the oracle.
    """
    if inst.has_release_dates:
        raise ValueError("smith_rule_cost handles instances without release dates")
    order = sorted(range(inst.n),
                   key=lambda i: (-Fraction(inst.costs[i](1), inst.jobs[i].ptime),
                                  i))
    cost: Cost = 0
    t = 0
    for i in order:
        t += inst.jobs[i].ptime
        value = inst.costs[i](t)
        if is_infinite(value):
            return INFINITY
        cost += value
    return cost


def exhaustive_duedate_check(inst: Instance, predicate: Callable[[tuple], bool],
                             max_failures: int = 10) -> ExhaustiveReport:
    """Evaluate a predicate on every due-date vector of a tiny instance.

    The domain is {0..T}^n, narrowed to {r_j..T} per job when release dates
    are present.  Enumeration is (T+1)^n, so sizes are capped hard.
    """
    if inst.n > 4 or inst.horizon > 12:
        raise ValueError("exhaustive check capped at n <= 4 and horizon <= 12")
    domains = []
    for job in inst.jobs:
        low = job.rdate if inst.has_release_dates else 0
        domains.append(range(low, inst.horizon + 1))
    total = 0
    failures = []
    for sigma in itertools.product(*domains):
        total += 1
        if not predicate(sigma):
            if len(failures) < max_failures:
                failures.append(sigma)
    return ExhaustiveReport(total=total, failures=failures)
