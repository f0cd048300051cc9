"""Shared data model: jobs, exact cost tables, instances, due dates, schedules.

All cost values are exact rationals (``fractions.Fraction`` or plain ints)
extended with the single distinguished value ``INFINITY``.  Floats never enter
the arithmetic: ratios that drive the solvers compound across iterations and
ties decide which job/time pair gets selected, so rounding would silently
change results.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Sequence, Union

INFINITY = float("inf")

#: Exact non-negative rational, or INFINITY.
Cost = Union[int, Fraction, float]


class InvalidInstanceError(ValueError):
    """An algorithm was handed an instance that fails validation."""

    def __init__(self, report: "ValidationReport"):
        super().__init__("invalid instance: " + "; ".join(report.violations))
        self.report = report


class InfeasibleAssignmentError(RuntimeError):
    """A due-date vector admits no schedule meeting every due date."""

    def __init__(self, message: str, job: int, due: int, completion: int):
        super().__init__(message)
        self.job = job
        self.due = due
        self.completion = completion


class UnboundedAlphaError(RuntimeError):
    """No finite cost entry limits the next cost decomposition or dual raise.

    This can only happen when every candidate job has infinite residual cost
    at every time slot that would help cover the outstanding demand.
    """


def as_cost(value) -> Cost:
    """Coerce ints, Fractions, integral floats and the strings "inf" / "a/b".

    Finite values are canonicalized: integral rationals come back as ints,
    everything else as a ``Fraction`` in lowest terms.
    """
    if value == INFINITY:
        return INFINITY
    if isinstance(value, str):
        text = value.strip()
        if text == "inf":
            return INFINITY
        value = Fraction(text)
    if isinstance(value, float):
        if not value.is_integer():
            raise ValueError(f"non-integral float cost {value!r}; use 'a/b' strings")
        value = int(value)
    if isinstance(value, int):
        return value
    if isinstance(value, Fraction):
        return int(value) if value.denominator == 1 else value
    raise TypeError(f"cannot interpret {value!r} as a cost value")


def format_cost(value: Cost) -> str:
    if value == INFINITY:
        return "inf"
    value = as_cost(value)
    return str(value)


def is_infinite(value: Cost) -> bool:
    return value == INFINITY


@dataclass(frozen=True)
class Job:
    """A job: 1-based id, positive integral processing time, release date."""

    id: int
    ptime: int
    rdate: int = 0


@dataclass(frozen=True)
class CostFunction:
    """Dense cost table over slots 0..T.

    Input instance tables must be non-decreasing; residual tables produced by
    cost decomposition stay non-negative but may lose monotonicity, which is
    why the table is dense rather than a breakpoint list.
    """

    values: tuple

    @classmethod
    def from_values(cls, values: Sequence) -> "CostFunction":
        return cls(tuple(as_cost(v) for v in values))

    def __call__(self, t: int) -> Cost:
        return self.values[t]

    def __len__(self) -> int:
        return len(self.values)

    @property
    def monotone(self) -> bool:
        return all(a <= b for a, b in zip(self.values, self.values[1:]))


@dataclass(frozen=True)
class Instance:
    """A single-machine instance over slots 1..horizon (0 = "no due date")."""

    jobs: tuple
    costs: tuple
    horizon: int

    @classmethod
    def build(cls, jobs: Sequence[Job], costs: Sequence[CostFunction],
              horizon: Optional[int] = None) -> "Instance":
        jobs = tuple(sorted(jobs, key=lambda j: j.id))
        if horizon is None:
            horizon = (max((j.rdate for j in jobs), default=0)
                       + sum(j.ptime for j in jobs))
        return cls(jobs, tuple(costs), horizon)

    @property
    def n(self) -> int:
        return len(self.jobs)

    @property
    def release_dates(self) -> tuple:
        distinct = sorted({j.rdate for j in self.jobs})
        return tuple(distinct) if distinct else (0,)

    @property
    def kappa(self) -> int:
        return len(self.release_dates)

    @property
    def has_release_dates(self) -> bool:
        return any(j.rdate > 0 for j in self.jobs)

    def total_ptime(self) -> int:
        return sum(j.ptime for j in self.jobs)

    def job_ids(self) -> range:
        return range(1, self.n + 1)

    def ptime(self, job_id: int) -> int:
        return self.jobs[job_id - 1].ptime

    def rdate(self, job_id: int) -> int:
        return self.jobs[job_id - 1].rdate

    def cost(self, job_id: int) -> CostFunction:
        return self.costs[job_id - 1]


@dataclass(frozen=True)
class Schedule:
    """Unit-slot schedule; ``slots[t-1]`` is the job run in slot t (None = idle)."""

    slots: tuple
    completion: tuple
    preemptive: bool = False

    def completion_of(self, job_id: int) -> int:
        return self.completion[job_id - 1]


@dataclass
class ValidationReport:
    violations: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations

    def add(self, message: str) -> None:
        self.violations.append(message)


def validate_instance(inst: Instance, check_zero_start: bool = True) -> ValidationReport:
    """Report every violated instance invariant (empty report = valid).

    ``check_zero_start`` additionally requires f_j(r_j) = 0 for every job,
    which the due-date growing solvers need for their initial assignment to
    cost nothing.  Instances produced by ``properize`` intentionally violate
    it and are validated with the flag off.
    """
    report = ValidationReport()
    n = inst.n
    ids = [j.id for j in inst.jobs]
    if ids != list(range(1, n + 1)):
        report.add(f"job ids must be contiguous 1..{n}, got {ids}")
    for job in inst.jobs:
        if job.ptime < 1:
            report.add(f"job {job.id}: ptime >= 1 violated (got {job.ptime})")
        if job.rdate < 0:
            report.add(f"job {job.id}: rdate >= 0 violated (got {job.rdate})")
    expected_T = (max((j.rdate for j in inst.jobs), default=0)
                  + sum(j.ptime for j in inst.jobs))
    if inst.horizon != expected_T:
        report.add(f"wrong horizon: expected {expected_T}, got {inst.horizon}")
    if len(inst.costs) != n:
        report.add(f"expected {n} cost tables, got {len(inst.costs)}")
        return report
    for job, cf in zip(inst.jobs, inst.costs):
        if len(cf) != inst.horizon + 1:
            report.add(f"job {job.id}: cost table must have {inst.horizon + 1} "
                       f"entries, got {len(cf)}")
            continue
        if is_infinite(cf(0)):
            report.add(f"job {job.id}: cost at slot 0 must be finite")
        if any(not is_infinite(v) and v < 0 for v in cf.values):
            report.add(f"job {job.id}: negative cost entry")
        if not cf.monotone:
            bad = next(t for t in range(len(cf) - 1) if not cf(t) <= cf(t + 1))
            report.add(f"job {job.id}: non-monotone input cost between "
                       f"t={bad} and t={bad + 1}")
        if check_zero_start and 0 <= job.rdate <= inst.horizon and cf(job.rdate) != 0:
            report.add(f"job {job.id}: cost at initial due date {job.rdate} "
                       f"must be 0, got {format_cost(cf(job.rdate))}")
    return report


def check_sigma(inst: Instance, sigma: Sequence[int]) -> None:
    if len(sigma) != inst.n:
        raise ValueError(f"due-date vector has {len(sigma)} entries, expected {inst.n}")
    for job, s in zip(inst.jobs, sigma):
        if not 0 <= s <= inst.horizon:
            raise ValueError(f"due date {s} of job {job.id} outside 0..{inst.horizon}")


def total_cost(inst: Instance, sigma: Sequence[int],
               costs: Optional[Sequence[CostFunction]] = None) -> Cost:
    """Total cost of a due-date vector: sum of each job's cost at its due date."""
    check_sigma(inst, sigma)
    if costs is None:
        costs = inst.costs
    total: Cost = 0
    for cf, s in zip(costs, sigma):
        value = cf(s)
        if is_infinite(value):
            return INFINITY
        total += value
    return total
