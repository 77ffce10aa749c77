import math
import random

import numpy as np
import pytest

from delaylab.dde import StepMethod
from delaylab.errors import DomainViolation
from delaylab.exact import TABLE_TIMES, ExactSolution, error_table, exact_value
from delaylab.logistic import rhs_canonical, simulate_canonical

# published "z actual" column for a = 1.57
Z_ACTUAL = [
    0.785, 0.955212394, 1.162332124, 1.414361848, 1.721039448, 2.051553608, 2.333223,
    2.506014394, 2.510599321, 2.318651603, 1.981346675, 1.597509757, 1.258411453,
]


@pytest.mark.parametrize("t, expected", list(zip(TABLE_TIMES, Z_ACTUAL)))
def test_exact_value_matches_table(t, expected):
    assert exact_value(t, 1.57) == pytest.approx(expected, abs=1e-9)


def test_exact_value_at_zero_is_half_a():
    assert exact_value(0, 1.57) == 0.785


@pytest.mark.parametrize("t", [-1e-3, 3.0001, 5])
def test_domain(t):
    with pytest.raises(DomainViolation):
        exact_value(t, 1.0)


def test_boundary_values_match_closed_expressions():
    for a in (0.5, 1.57, 2.4):
        sol = ExactSolution(a)
        z1 = (a / 2) * math.exp(a / 2)
        z2 = z1 * math.exp(a - (math.exp(a / 2) - 1))
        e = math.exp(a / 2)
        z3 = z2 * math.exp(a - math.exp((a + 2) / 2) * (-math.exp(-e) * (e + 1) + 2 / math.e))
        assert sol(1.0) == pytest.approx(z1, rel=1e-14)
        assert sol(2.0) == pytest.approx(z2, rel=1e-14)
        assert sol(3.0) == pytest.approx(z3, rel=1e-14)


def test_continuity_at_joints():
    rng = random.Random(7)
    for _ in range(100):
        a = rng.uniform(1e-3, 3.0)
        for joint in (1.0, 2.0):
            left = exact_value(math.nextafter(joint, 0), a)
            right = exact_value(math.nextafter(joint, 4), a)
            assert abs(left - right) <= 1e-12 * max(1.0, abs(left))


def test_ode_residual_finite_differences():
    rng = random.Random(11)
    h = 1e-6
    for _ in range(200):
        a = rng.uniform(0.2, 3.0)
        t = rng.uniform(1.0 + 2 * h, 3.0 - 2 * h)
        if abs(t - 2.0) < 2 * h:
            continue
        slope = (exact_value(t + h, a) - exact_value(t - h, a)) / (2 * h)
        rhs = rhs_canonical(exact_value(t, a), exact_value(t - 1, a), a)
        assert slope == pytest.approx(rhs, rel=1e-6, abs=1e-9)


def test_one_sided_derivatives_agree_at_one():
    a = 1.57
    h = 1e-6
    left = (exact_value(1.0, a) - exact_value(1.0 - h, a)) / h
    right = (exact_value(1.0 + h, a) - exact_value(1.0, a)) / h
    assert left == pytest.approx(right, rel=1e-5)


def test_rk4_reference_run_agrees_beyond_two():
    ref = simulate_canonical(1.57, 0.785, dt=1 / 8192, horizon=3, method="rk4")
    for t in np.arange(2.0, 3.0001, 0.125):
        assert ref.at(t) == pytest.approx(exact_value(t, 1.57), abs=1e-12)


def test_error_table_delta_recomputed():
    tab = error_table("euler", 1 / 64, 1.57)
    assert np.array_equal(tab.delta, tab.actual - tab.simulated)
    assert [r[3] for r in tab.records()] == list(tab.delta)
    assert tab.delta[0] == 0.0


@pytest.mark.parametrize("dt, expected", [(1 / 512, -0.001540304), (1 / 1024, -0.000770132)])
def test_error_table_published_delta(dt, expected):
    tab = error_table(StepMethod.RK4_HELD, dt, 1.57, [1.75])
    assert tab.delta[0] == pytest.approx(expected, abs=5e-9)


def test_history_rows_have_zero_delta():
    for method in StepMethod:
        tab = error_table(method, 1 / 128, 1.1, [0.0, 0.5, 1.0])
        assert np.all(tab.delta == 0.0)


def test_error_table_rejects_out_of_range_times():
    with pytest.raises(DomainViolation):
        error_table("euler", 1 / 64, 1.57, [3.5])
