"""Instance builders and JSON (de)serialization.

Builders: the four-job gap family (drives the primal/dual ratio to 4 as p
grows), the shift-and-pad transformation that makes its zero-cost regions
achievable, and seeded random instances for the empirical suites.
"""

from __future__ import annotations

import json
import random
from fractions import Fraction
from .model import (
    INFINITY,
    CostFunction,
    Instance,
    Job,
    as_cost,
    format_cost,
    is_infinite,
)

COST_MODELS = ("step", "weighted_completion", "weighted_tardiness")


def counterexample(p: int) -> Instance:
    """The four-job gap family: all processing times p, horizon 4p.

    Jobs 1 and 2 cost 0 before p, then p up to 3p-1, then infinity; jobs 3
    and 4 cost 0 up to 3p-2 and p afterwards.  The primal-dual solver ends
    with primal cost 4p against dual objective p+2, a ratio approaching 4.
    """
    if p < 4:
        raise ValueError(f"p must be >= 4, got {p}")
    T = 4 * p

    def early(t: int):
        if t <= p - 1:
            return 0
        if t <= 3 * p - 1:
            return p
        return INFINITY

    def late(t: int):
        return 0 if t <= 3 * p - 2 else p

    jobs = [Job(i, p) for i in range(1, 5)]
    costs = [CostFunction.from_values([fn(t) for t in range(T + 1)])
             for fn in (early, early, late, late)]
    return Instance.build(jobs, costs)


def properize(inst: Instance, delta_num: int, delta_den: int = 1) -> Instance:
    """Shift every cost table one horizon to the right and add delta * p_j.

    Adds a dummy filler job of length T that is free up to T and forbidden
    after, so the shifted instance schedules the original jobs in the second
    half of the doubled horizon.  The result satisfies f'_j(t) >= f'_j(p'_j)
    everywhere: no job is artificially free before it could finish.
    """
    delta = Fraction(delta_num, delta_den)
    if delta <= 0:
        raise ValueError(f"delta must be positive, got {delta}")
    if inst.has_release_dates:
        raise ValueError("properize handles instances without release dates")
    T = inst.horizon
    jobs = [Job(job.id, job.ptime) for job in inst.jobs]
    jobs.append(Job(inst.n + 1, T))
    costs = []
    for job, cf in zip(inst.jobs, inst.costs):
        base = delta * job.ptime
        shifted = [base if t <= T else base + cf(t - T) for t in range(2 * T + 1)]
        costs.append(CostFunction.from_values(shifted))
    costs.append(CostFunction.from_values(
        [0 if t <= T else INFINITY for t in range(2 * T + 1)]))
    return Instance.build(jobs, costs)


def random_instance(seed: int, n: int, p_max: int, kappa: int,
                    cost_model: str) -> Instance:
    """Deterministic random instance.

    Release dates always include 0 (kappa == 1 therefore means no release
    dates at all), the remaining kappa - 1 are distinct draws from a small
    window, and every distinct value is used by at least one job.  Cost
    tables are integral, non-decreasing, and zero at each job's release.
    """
    if n < 1 or p_max < 1 or kappa < 1:
        raise ValueError("need n >= 1, p_max >= 1, kappa >= 1")
    if kappa > n:
        raise ValueError(f"kappa <= n required, got kappa={kappa}, n={n}")
    if cost_model not in COST_MODELS:
        raise ValueError(f"cost_model must be one of {COST_MODELS}")
    rng = random.Random(f"{seed}:{n}:{p_max}:{kappa}:{cost_model}")
    ptimes = [rng.randint(1, p_max) for _ in range(n)]
    span = max(2, p_max * kappa)
    releases = [0] + sorted(rng.sample(range(1, span + 1), kappa - 1))
    assigned = releases + [rng.choice(releases) for _ in range(n - kappa)]
    rng.shuffle(assigned)
    jobs = [Job(i + 1, ptimes[i], assigned[i]) for i in range(n)]
    T = max(assigned) + sum(ptimes)

    costs = []
    for job in jobs:
        if cost_model == "weighted_completion":
            w = rng.randint(1, 9)
            values = [w * max(0, t - job.rdate) for t in range(T + 1)]
        elif cost_model == "weighted_tardiness":
            w = rng.randint(1, 9)
            d = rng.randint(job.rdate, T)
            values = [w * max(0, t - d) for t in range(T + 1)]
        else:
            values = []
            level = 0
            for t in range(T + 1):
                if t > job.rdate and rng.random() < 0.4:
                    level += rng.randint(1, 5)
                values.append(level)
        costs.append(CostFunction.from_values(values))
    return Instance.build(jobs, costs, horizon=T)


def _expand_cost(cost_spec: dict, rdate: int, horizon: int, where: str) -> CostFunction:
    kind = cost_spec.get("type")
    if kind == "table":
        values = cost_spec.get("values")
        if not isinstance(values, list):
            raise ValueError(f"{where}: table cost needs a 'values' list")
        if len(values) != horizon + 1:
            raise ValueError(f"{where}: table must have {horizon + 1} entries, "
                             f"got {len(values)}")
        return CostFunction.from_values([as_cost(v) for v in values])
    if kind == "step":
        breaks = cost_spec.get("breaks")
        if not isinstance(breaks, list):
            raise ValueError(f"{where}: step cost needs a 'breaks' list")
        points = sorted((int(t), as_cost(v)) for t, v in breaks)
        values = []
        level = as_cost(0)
        idx = 0
        for t in range(horizon + 1):
            while idx < len(points) and points[idx][0] <= t:
                level = points[idx][1]
                idx += 1
            values.append(level)
        return CostFunction.from_values(values)
    if kind == "weighted_completion":
        w = as_cost(cost_spec.get("w", 1))
        return CostFunction.from_values(
            [w * max(0, t - rdate) for t in range(horizon + 1)])
    if kind == "weighted_tardiness":
        w = as_cost(cost_spec.get("w", 1))
        d = int(cost_spec.get("d", rdate))
        return CostFunction.from_values(
            [w * max(0, t - d) for t in range(horizon + 1)])
    raise ValueError(f"{where}: unknown cost type {kind!r}")


def instance_from_dict(doc: dict) -> Instance:
    raw_jobs = doc.get("jobs")
    if not isinstance(raw_jobs, list):
        raise ValueError("instance document needs a 'jobs' list")
    jobs = []
    for i, entry in enumerate(raw_jobs):
        where = f"jobs[{i}]"
        job_id = entry.get("id", i + 1)
        p = entry.get("p")
        if not isinstance(p, int) or p < 1:
            raise ValueError(f"{where}.p must be an integer >= 1, got {p!r}")
        r = entry.get("r", 0)
        if not isinstance(r, int) or r < 0:
            raise ValueError(f"{where}.r must be an integer >= 0, got {r!r}")
        jobs.append(Job(int(job_id), p, r))
    horizon = doc.get("horizon")
    if horizon is None:
        horizon = max((j.rdate for j in jobs), default=0) + sum(j.ptime for j in jobs)
    costs = []
    for i, entry in enumerate(raw_jobs):
        cost_spec = entry.get("cost")
        if not isinstance(cost_spec, dict):
            raise ValueError(f"jobs[{i}].cost must be an object")
        costs.append(_expand_cost(cost_spec, jobs[i].rdate, horizon, f"jobs[{i}].cost"))
    return Instance.build(jobs, costs, horizon=horizon)


def instance_to_dict(inst: Instance) -> dict:
    return {
        "horizon": inst.horizon,
        "jobs": [
            {
                "id": job.id,
                "p": job.ptime,
                "r": job.rdate,
                "cost": {
                    "type": "table",
                    "values": [_encode_cost(v) for v in cf.values],
                },
            }
            for job, cf in zip(inst.jobs, inst.costs)
        ],
    }


def _encode_cost(value):
    if is_infinite(value):
        return "inf"
    value = as_cost(value)
    return value if isinstance(value, int) else format_cost(value)


def write_instance(inst: Instance, path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(instance_to_dict(inst), fh, indent=2)
        fh.write("\n")


def read_instance(path) -> Instance:
    with open(path, "r", encoding="utf-8") as fh:
        doc = json.load(fh)
    return instance_from_dict(doc)
