import math

import numpy as np
import pytest

from delaylab.dde import Trajectory, build_grid
from delaylab.errors import BracketInvalid, NonPositive, TooShort
from delaylab.logistic import simulate_canonical
from delaylab.regime import (
    THRESHOLDS,
    Regime,
    SimConfig,
    Thresholds,
    analyze_trajectory,
    classify_a,
    crossing_times,
    extrema,
    hopf_boundary_search,
    predict_regime,
)


@pytest.mark.parametrize(
    "a, regime",
    [
        (0.35, Regime.ASYMPTOTIC),
        (1 / math.e, Regime.ASYMPTOTIC),
        (0.37, Regime.DAMPED),
        (1.0, Regime.DAMPED),
        (1.5706, Regime.DAMPED),
        (1.5707, Regime.SUSTAINED),
        (1.6, Regime.SUSTAINED),
    ],
)
def test_predict_regime(a, regime):
    assert predict_regime(a) is regime


def test_predict_regime_monotone():
    ranks = [predict_regime(k / 10).rank for k in range(1, 21)]
    assert ranks == sorted(ranks)


@pytest.mark.parametrize("a", [0.0, -1.0, math.nan])
def test_predict_regime_rejects(a):
    with pytest.raises(NonPositive):
        predict_regime(a)


def test_thresholds_ordering():
    assert THRESHOLDS.asymptotic_bound == pytest.approx(0.367879441, abs=1e-9)
    assert THRESHOLDS.asymptotic_bound < THRESHOLDS.sustained_bound < math.pi / 2
    with pytest.raises(ValueError):
        Thresholds(sustained_bound=1.6)


def test_crossing_times_linear_interpolation():
    t = np.array([0.0, 1.0, 2.0, 3.0])
    v = np.array([1.0, -1.0, -1.0, 3.0])
    assert np.allclose(crossing_times(t, v, 0.0), [0.5, 2.25])


def test_crossing_times_ignores_touching():
    t = np.arange(5.0)
    v = np.array([1.0, 0.0, 1.0, 0.0, 2.0])
    assert len(crossing_times(t, v, 0.0)) == 0


def test_extrema_of_sine():
    t = np.linspace(0, 4 * np.pi, 4001)
    imax, imin = extrema(np.sin(t))
    assert np.allclose(t[imax], [np.pi / 2, 5 * np.pi / 2], atol=1e-2)
    assert np.allclose(t[imin], [3 * np.pi / 2, 7 * np.pi / 2], atol=1e-2)


def _synthetic(decay, horizon=60.0, dt=1 / 64):
    grid = build_grid(dt, 1.0, horizon)
    t = grid.times
    v = 1.0 + 0.5 * np.exp(-decay * t) * np.cos(np.pi / 2 * t)
    return Trajectory(grid, v, np.zeros_like(v))


def test_analyze_synthetic_damped_and_sustained():
    assert analyze_trajectory(_synthetic(0.05), 1.0).verdict is Regime.DAMPED
    sustained = analyze_trajectory(_synthetic(0.0), 1.0)
    assert sustained.verdict is Regime.SUSTAINED
    assert sustained.envelope_ratio == pytest.approx(1.0, abs=1e-3)
    assert np.all(np.diff(sustained.crossing_times) > 0)
    assert np.all(sustained.peak_amplitudes >= 0)


def test_analyze_too_short():
    traj = simulate_canonical(1.6, 0.12, dt=1 / 64, horizon=30)
    with pytest.raises(TooShort):
        analyze_trajectory(traj, 1.6)


def test_analyze_slow_monotone_approach():
    traj = simulate_canonical(0.35, 0.2, dt=1 / 512, horizon=60)
    res = analyze_trajectory(traj, 0.35, min_delays=20)
    assert res.verdict is Regime.ASYMPTOTIC
    assert res.terminal_deviation < 1e-3


@pytest.mark.parametrize(
    "a, regime", [(1.5, Regime.DAMPED), (1.6, Regime.SUSTAINED)]
)
def test_analyze_either_side_of_boundary(a, regime):
    res = classify_a(a, SimConfig(beta=0.12, horizon=300))
    assert res.verdict is regime
    if regime is Regime.SUSTAINED:
        assert abs(res.mean_peak_ratio - 1) <= 0.01


@pytest.mark.parametrize("a", [0.2, 0.35, 0.8, 1.0, 1.4, 1.7, 2.0])
def test_empirical_agrees_with_prediction(a):
    assert classify_a(a, SimConfig(beta=0.12)).verdict is predict_regime(a)


@pytest.mark.parametrize("a", [0.35, 1.0, 1.6, 2.0])
def test_never_oscillates_about_zero(a):
    traj = simulate_canonical(a, 0.12, dt=1 / 256, horizon=100)
    assert len(crossing_times(traj.times, traj.values, 0.0)) == 0


def test_hopf_bracket_invalid():
    with pytest.raises(BracketInvalid):
        hopf_boundary_search(0.2, 0.3, 0.01, SimConfig(horizon=60, dt=1 / 64))
    with pytest.raises(BracketInvalid):
        hopf_boundary_search(1.6, 1.5, 0.01)


def test_hopf_search_is_deterministic_and_brackets():
    cfg = SimConfig(dt=1 / 128, horizon=200)
    first = hopf_boundary_search(1.4, 1.8, 0.01, cfg)
    second = hopf_boundary_search(1.4, 1.8, 0.01, cfg, concurrent=True)
    assert first.estimate == second.estimate
    assert first.hi - first.lo <= 0.01
    assert 1.5 < first.estimate < 1.6
