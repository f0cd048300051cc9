import random
from fractions import Fraction

import pytest

from lrsched import (
    INFINITY,
    CostFunction,
    Instance,
    Job,
    as_cost,
    counterexample,
    format_cost,
    total_cost,
    validate_instance,
)
from helpers import table_instance


def test_exact_subtraction_roundtrip():
    a, b = Fraction(7, 3), Fraction(5, 6)
    assert (a - b) + b == a
    assert as_cost((a - b) + b) == a


def test_infinity_absorbs():
    assert INFINITY + Fraction(3, 2) == INFINITY
    assert Fraction(3, 2) + INFINITY == INFINITY
    assert INFINITY - Fraction(10) == INFINITY
    assert INFINITY + 0 == INFINITY


def test_comparisons_total():
    values = [INFINITY, Fraction(1, 2), 0, 3, Fraction(7, 2)]
    ordered = sorted(values)
    assert ordered == [0, Fraction(1, 2), 3, Fraction(7, 2), INFINITY]
    assert all(v <= INFINITY for v in values)


@pytest.mark.parametrize("raw, expected", [
    ("inf", INFINITY),
    ("3/4", Fraction(3, 4)),
    ("6/2", 3),
    (7, 7),
    (2.0, 2),
    (Fraction(9, 3), 3),
])
def test_as_cost_parsing(raw, expected):
    assert as_cost(raw) == expected


def test_as_cost_rejects_non_integral_float():
    with pytest.raises(ValueError):
        as_cost(0.5)


def test_format_cost():
    assert format_cost(INFINITY) == "inf"
    assert format_cost(Fraction(8, 3)) == "8/3"
    assert format_cost(Fraction(4, 1)) == "4"


def test_counterexample_is_valid():
    assert validate_instance(counterexample(4)).ok
    assert validate_instance(counterexample(7)).ok


def test_validate_flags_non_monotone_cost():
    inst = table_instance([1, 1], [[0, 1], [0, 0]])
    inst = Instance.build(inst.jobs, [
        CostFunction.from_values([0, 3, 1]),
        CostFunction.from_values([0, 0, 0]),
    ])
    report = validate_instance(inst)
    assert not report.ok
    assert any("non-monotone" in v for v in report.violations)


def test_validate_flags_zero_ptime():
    inst = Instance.build([Job(1, 0)], [CostFunction.from_values([0])])
    report = validate_instance(inst)
    assert any("ptime" in v for v in report.violations)


def test_validate_flags_wrong_horizon():
    inst = Instance(jobs=(Job(1, 2),), costs=(CostFunction.from_values([0, 0, 0]),),
                    horizon=2)
    assert validate_instance(inst).ok
    wrong = Instance(jobs=inst.jobs, costs=(CostFunction.from_values([0, 0, 0, 0]),),
                     horizon=3)
    report = validate_instance(wrong)
    assert any("wrong horizon" in v for v in report.violations)


def test_validate_flags_duplicate_ids():
    inst = Instance.build([Job(1, 1), Job(1, 1)],
                          [CostFunction.from_values([0, 0, 0])] * 2)
    report = validate_instance(inst)
    assert any("contiguous" in v for v in report.violations)


def test_validate_zero_start_flag():
    inst = table_instance([2], [[1, 1, 1]])
    assert not validate_instance(inst).ok
    assert validate_instance(inst, check_zero_start=False).ok


def test_total_cost_gap_instance():
    inst = counterexample(4)
    assert total_cost(inst, (11, 11, 16, 16)) == 16
    assert total_cost(inst, (0, 0, 0, 0)) == 0
    assert total_cost(inst, (12, 11, 16, 16)) == INFINITY


def test_total_cost_rejects_out_of_range():
    inst = counterexample(4)
    with pytest.raises(ValueError):
        total_cost(inst, (17, 0, 0, 0))
    with pytest.raises(ValueError):
        total_cost(inst, (0, 0, 0))


def test_total_cost_monotone_in_sigma():
    inst = counterexample(4)
    rng = random.Random(5)
    for _ in range(50):
        sigma = [rng.randint(0, 16) for _ in range(4)]
        bigger = [min(16, s + rng.randint(0, 3)) for s in sigma]
        assert total_cost(inst, sigma) <= total_cost(inst, bigger)


def test_release_date_bookkeeping():
    inst = table_instance([1, 2, 1], [[0] * 7] * 3, rdates=[0, 2, 2])
    assert inst.horizon == 2 + 4
    assert inst.release_dates == (0, 2)
    assert inst.kappa == 2
    assert inst.has_release_dates
