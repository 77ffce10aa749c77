"""Canonical delay logistic equation ``z' = a*z - z*z(t-1)`` and its changes of variable.

Three equivalent forms are handled:

* canonical: unit delay, growth-delay product ``a``;
* physical: delay ``t0`` (months), rate ``A = a / t0``, values ``i = z / t0``;
* Wright: ``y = z / a``, so ``y' = a*y - a*y*y(t-1)`` with fixed point 1.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .dde import Grid, StepMethod, Trajectory, build_grid, integrate
from .errors import DomainViolation, NonPositive

__all__ = [
    "DelayLogisticParams",
    "PhysicalParams",
    "InitialFunction",
    "canonical_params",
    "to_physical",
    "to_canonical",
    "phi",
    "junction_residual",
    "rhs_canonical",
    "rhs_wright",
    "canonical_rhs",
    "wright_rhs",
    "wright_from_canonical",
    "canonical_from_wright",
    "simulate_canonical",
]

# slack for the last history node, which sits at n*dt rather than exactly at the delay
_EDGE = 1e-9


def _positive(name, value):
    if not (value > 0 and math.isfinite(value)):
        raise NonPositive(f"{name} must be a finite number > 0, got {value!r}")
    return float(value)


@dataclass(frozen=True)
class DelayLogisticParams:
    a: float

    def __post_init__(self):
        _positive("a", self.a)


@dataclass(frozen=True)
class PhysicalParams:
    A: float
    t0: float

    def __post_init__(self):
        _positive("A", self.A)
        _positive("t0", self.t0)

    @property
    def a(self) -> float:
        return self.A * self.t0


@dataclass(frozen=True)
class InitialFunction:
    """Exponential history ``offset + beta * exp(rate * t)`` on ``[0, span]``.

    The canonical family uses ``rate = a - beta`` and ``span = 1``; the
    physical analog uses ``rate = A - w - beta`` and ``span = t0``.
    """

    beta: float
    rate: float
    span: float = 1.0
    offset: float = 0.0

    def __post_init__(self):
        _positive("beta", self.beta)
        _positive("span", self.span)

    @classmethod
    def canonical(cls, a: float, beta: float) -> "InitialFunction":
        return cls(beta=beta, rate=a - beta)

    def _check(self, t):
        if not (-_EDGE <= t <= self.span * (1 + _EDGE)):
            raise DomainViolation(f"t={t!r} outside the history interval [0, {self.span!r}]")

    def __call__(self, t: float) -> float:
        self._check(t)
        return self.offset + self.beta * math.exp(self.rate * t)

    def derivative(self, t: float) -> float:
        self._check(t)
        return self.rate * self.beta * math.exp(self.rate * t)


def canonical_params(A: float, t0: float) -> DelayLogisticParams:
    return DelayLogisticParams(PhysicalParams(A, t0).a)


def to_physical(traj: Trajectory, t0: float) -> Trajectory:
    """Rescale a unit-delay trajectory to delay ``t0``: times times ``t0``, values over ``t0``."""
    _positive("t0", t0)
    return traj.map(1.0 / t0, time_scale=t0)


def to_canonical(traj: Trajectory, t0: float) -> Trajectory:
    _positive("t0", t0)
    return traj.map(t0, time_scale=1.0 / t0)


def phi(t: float, a: float, beta: float) -> float:
    """Exponential initial function ``beta * exp((a - beta) t)`` on ``[0, 1]``."""
    return InitialFunction.canonical(a, beta)(t)


def junction_residual(init, a: float, span: float = 1.0) -> float:
    """C1 matching residual ``init'(span) - (a - init(0)) * init(span)``.

    ``init`` is either an object with ``derivative`` (e.g.
    :class:`InitialFunction`) or an array of samples on a uniform grid over
    ``[0, span]``; for samples the endpoint derivative is a second-order
    one-sided difference, so the residual is only O(h^2) accurate.
    """
    if hasattr(init, "derivative"):
        end = getattr(init, "span", span)
        return init.derivative(end) - (a - init(0.0)) * init(end)
    samples = np.asarray(init, dtype=float)
    if samples.ndim != 1 or len(samples) < 3:
        raise ValueError("sampled history needs at least 3 points")
    h = span / (len(samples) - 1)
    slope = (3 * samples[-1] - 4 * samples[-2] + samples[-3]) / (2 * h)
    return float(slope - (a - samples[0]) * samples[-1])


def rhs_canonical(z: float, z_delayed: float, a: float) -> float:
    return a * z - z * z_delayed


def rhs_wright(y: float, y_delayed: float, a: float) -> float:
    return a * y - a * y * y_delayed


def canonical_rhs(a: float):
    """``f(t, z, z_delayed)`` for the canonical equation, ready for :func:`integrate`."""

    def f(t, z, zd):
        return a * z - z * zd

    return f


def wright_rhs(a: float):
    def f(t, y, yd):
        return a * y - a * y * yd

    return f


def wright_from_canonical(traj: Trajectory, a: float) -> Trajectory:
    _positive("a", a)
    return traj.map(1.0 / a)


def canonical_from_wright(traj: Trajectory, a: float) -> Trajectory:
    _positive("a", a)
    return traj.map(a)


def simulate_canonical(
    a: float,
    beta: float,
    dt: float = 1 / 512,
    horizon: float = 3.0,
    method=StepMethod.EULER,
    grid: Grid | None = None,
) -> Trajectory:
    """Integrate the canonical equation from the exponential initial function."""
    DelayLogisticParams(a)
    init = InitialFunction.canonical(a, beta)
    grid = grid or build_grid(dt, 1.0, horizon)
    return integrate(canonical_rhs(a), init, grid, method)
