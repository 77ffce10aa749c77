"""Interest-rate / inflation layer built on the delay logistic equation.

The actual long rate ``i(t)`` obeys

    i'(t) = A (i(t) - w) - i(t - t0) (i(t) - w)

with nominal long rate ``A`` and short rate ``w`` held constant.  Under
``x = i - w`` this is the delay logistic equation with growth rate
``A - w`` and delay ``t0``; inflation follows from the Fisher relation as
``A - i``.  Rates are per month and ``t0`` is in months.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from typing import Optional

import numpy as np

from .dde import StepMethod, Trajectory, build_grid, integrate
from .errors import ScenarioInvalid
from .logistic import InitialFunction
from .regime import THRESHOLDS, OscillationAnalysis, analyze_trajectory

__all__ = [
    "InterestScenario",
    "EconTrajectory",
    "Stability",
    "PolicyVerdict",
    "fisher_inflation",
    "psi",
    "psi_function",
    "simulate_scenario",
    "simulate_shifted",
    "shift_equivalence_check",
    "policy_check",
    "delay_thresholds",
    "analyze_scenario",
]


def fisher_inflation(i_nominal: float, i_actual: float):
    """Inflation ``I = i_nominal - i_actual`` and the ratio ``(i_actual + I) / (i_actual * I)``.

    The approximation is trustworthy when the ratio is much larger than 1.
    A zero denominator gives an infinite ratio.
    """
    infl = i_nominal - i_actual
    denom = i_actual * infl
    if denom == 0:
        return infl, math.inf
    return infl, (i_actual + infl) / denom


def psi_function(A: float, w: float, beta: float, t0: float, offset: float = 0.0) -> InitialFunction:
    return InitialFunction(beta=beta, rate=A - w - beta, span=t0, offset=offset)


def psi(t: float, A: float, w: float, beta: float, t0: Optional[float] = None) -> float:
    """``beta * exp((A - w - beta) t)``; checked against ``[0, t0]`` when ``t0`` is given."""
    if t0 is None:
        return beta * math.exp((A - w - beta) * t)
    return psi_function(A, w, beta, t0)(t)


@dataclass(frozen=True)
class InterestScenario:
    A: float
    w: float = 0.0
    t0: float = 14.0
    beta: float = 0.02
    horizon: float = 1800.0
    # months per step; None means t0/512
    dt: Optional[float] = None
    method: StepMethod = StepMethod.EULER

    def __post_init__(self):
        if not (self.A > 0 and math.isfinite(self.A)):
            raise ScenarioInvalid(f"nominal long rate A must be > 0, got {self.A!r}")
        if not (0 <= self.w < self.A):
            raise ScenarioInvalid(f"short rate w must satisfy 0 <= w < A, got w={self.w!r}, A={self.A!r}")
        if not (self.t0 > 0 and math.isfinite(self.t0)):
            raise ScenarioInvalid(f"delay t0 must be > 0, got {self.t0!r}")
        if not (self.beta > 0 and math.isfinite(self.beta)):
            raise ScenarioInvalid(f"beta must be > 0, got {self.beta!r}")
        if self.horizon < self.t0:
            raise ScenarioInvalid(f"horizon {self.horizon!r} shorter than t0 {self.t0!r}")
        object.__setattr__(self, "method", StepMethod.parse(self.method))
        build_grid(self.step, self.t0, self.horizon)

    @property
    def step(self) -> float:
        return self.t0 / 512 if self.dt is None else self.dt

    @property
    def canonical_a(self) -> float:
        return (self.A - self.w) * self.t0

    def grid(self):
        return build_grid(self.step, self.t0, self.horizon)


@dataclass(frozen=True)
class EconTrajectory:
    A: float
    trajectory: Trajectory

    @property
    def times(self) -> np.ndarray:
        return self.trajectory.times

    @property
    def long_rate_actual(self) -> np.ndarray:
        return self.trajectory.values

    @property
    def inflation(self) -> np.ndarray:
        return self.A - self.trajectory.values

    header = ("time_months", "time_years", "interest_percent", "inflation_percent")

    def records(self):
        for t, i, infl in zip(self.times, self.long_rate_actual, self.inflation):
            yield (t, t / 12, i * 100, infl * 100)


def _direct_rhs(A, w):
    def f(t, i, i_delayed):
        return A * (i - w) - i_delayed * (i - w)

    return f


def _shifted_rhs(A, w):
    r = A - w

    def f(t, x, x_delayed):
        return r * x - x * x_delayed

    return f


def simulate_scenario(scn: InterestScenario) -> EconTrajectory:
    """Integrate the long-rate equation from the history ``psi + w``."""
    init = psi_function(scn.A, scn.w, scn.beta, scn.t0, offset=scn.w)
    traj = integrate(_direct_rhs(scn.A, scn.w), init, scn.grid(), scn.method)
    return EconTrajectory(scn.A, traj)


def simulate_shifted(scn: InterestScenario) -> Trajectory:
    """Integrate the shifted variable ``x = i - w`` from ``psi``."""
    init = psi_function(scn.A, scn.w, scn.beta, scn.t0)
    return integrate(_shifted_rhs(scn.A, scn.w), init, scn.grid(), scn.method)


def shift_equivalence_check(scn: InterestScenario) -> float:
    """Max pointwise gap between the direct run and the shifted run plus ``w``."""
    direct = simulate_scenario(scn).long_rate_actual
    shifted = simulate_shifted(scn).values + scn.w
    return float(np.max(np.abs(direct - shifted)))


def analyze_scenario(scn: InterestScenario, econ: Optional[EconTrajectory] = None, **kwargs) -> OscillationAnalysis:
    econ = econ or simulate_scenario(scn)
    return analyze_trajectory(econ.trajectory, scn.A, **kwargs)


class Stability(str, enum.Enum):
    STABLE_ORDERLY = "stable-orderly"
    OSCILLATION_RISK = "oscillation-risk"


@dataclass(frozen=True)
class PolicyVerdict:
    verdict: Stability
    product: float


def policy_check(A: float, w: float, t0: float) -> PolicyVerdict:
    """Oscillation risk of holding rates ``A`` and ``w`` with delay ``t0``.

    Orderly (non-oscillating) behavior needs ``(A - w) * t0 <= 1/e``.
    Negative ``w`` is accepted here.
    """
    if not (math.isfinite(A) and math.isfinite(w) and A > w):
        raise ScenarioInvalid(f"need finite A > w, got A={A!r}, w={w!r}")
    if not (t0 > 0 and math.isfinite(t0)):
        raise ScenarioInvalid(f"delay t0 must be > 0, got {t0!r}")
    product = (A - w) * t0
    if product <= THRESHOLDS.asymptotic_bound:
        return PolicyVerdict(Stability.STABLE_ORDERLY, product)
    return PolicyVerdict(Stability.OSCILLATION_RISK, product)


def delay_thresholds(A: float, w: float = 0.0):
    """Delays (months) at which the regime changes for a given rate spread ``A - w``.

    Returns ``(asymptotic_max, sustained_min)``: no oscillation for
    ``t0 <= asymptotic_max``, sustained oscillation for ``t0 > sustained_min``.
    """
    spread = A - w
    if not spread > 0:
        raise ScenarioInvalid(f"need A > w, got A={A!r}, w={w!r}")
    return THRESHOLDS.asymptotic_bound / spread, THRESHOLDS.sustained_bound / spread
