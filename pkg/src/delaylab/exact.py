"""Closed-form solution of the canonical equation on ``[0, 3]`` for ``beta = a/2``.

With history ``(a/2) exp(a t / 2)`` the method of steps can be carried out
by hand for two delay intervals.  Writing ``s = t - 1`` (resp. ``t - 2``)
and ``V = exp(a s / 2)``:

    1 <= t <= 2:  z = z(1) * exp(a s - (V - 1))
    2 <= t <= 3:  z = z(2) * exp(a s - e^{(a+2)/2} (2/e - (V + 1) e^{-V}))
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import List, Sequence, Tuple

import numpy as np

from .dde import StepMethod
from .errors import DomainViolation, NonPositive
from .logistic import simulate_canonical

__all__ = ["ExactSolution", "ErrorTable", "exact_value", "error_table", "TABLE_TIMES"]

# sample times of the published comparison table
TABLE_TIMES = tuple(k / 4 for k in range(13))


@dataclass(frozen=True)
class ExactSolution:
    a: float

    def __post_init__(self):
        if not (self.a > 0 and math.isfinite(self.a)):
            raise NonPositive(f"a must be > 0, got {self.a!r}")

    @property
    def beta(self) -> float:
        return self.a / 2

    def z1(self) -> float:
        a = self.a
        return 0.5 * a * math.exp(0.5 * a)

    def z2(self) -> float:
        a = self.a
        return self.z1() * math.exp(a - (math.exp(0.5 * a) - 1.0))

    def z3(self) -> float:
        a = self.a
        v = math.exp(0.5 * a)
        return self.z2() * math.exp(a - math.exp(0.5 * (a + 2)) * (2 / math.e - (v + 1) * math.exp(-v)))

    def __call__(self, t: float) -> float:
        a = self.a
        if not (0.0 <= t <= 3.0):
            raise DomainViolation(f"closed form is only available on [0, 3], got t={t!r}")
        if t <= 1.0:
            return 0.5 * a * math.exp(0.5 * a * t)
        if t <= 2.0:
            s = t - 1.0
            return self.z1() * math.exp(a * s - (math.exp(0.5 * a * s) - 1.0))
        s = t - 2.0
        v = math.exp(0.5 * a * s)
        return self.z2() * math.exp(a * s - math.exp(0.5 * (a + 2)) * (2 / math.e - (v + 1) * math.exp(-v)))


def exact_value(t: float, a: float) -> float:
    return ExactSolution(a)(t)


@dataclass
class ErrorTable:
    """Exact vs simulated samples; ``delta`` is always recomputed."""

    rows: List[Tuple[float, float, float]] = field(default_factory=list)
    method: StepMethod | None = None
    dt: float | None = None
    a: float | None = None

    header = ("time", "z_actual", "z_simulated", "delta")

    @property
    def times(self) -> np.ndarray:
        return np.array([r[0] for r in self.rows])

    @property
    def actual(self) -> np.ndarray:
        return np.array([r[1] for r in self.rows])

    @property
    def simulated(self) -> np.ndarray:
        return np.array([r[2] for r in self.rows])

    @property
    def delta(self) -> np.ndarray:
        return self.actual - self.simulated

    def records(self):
        for t, za, zs in self.rows:
            yield (t, za, zs, za - zs)


def error_table(method, dt: float, a: float, sample_times: Sequence[float] = TABLE_TIMES) -> ErrorTable:
    """Integrate from ``phi`` with ``beta = a/2`` and tabulate against the closed form."""
    method = StepMethod.parse(method)
    sol = ExactSolution(a)
    times = [float(t) for t in sample_times]
    for t in times:
        if not 0.0 <= t <= 3.0:
            raise DomainViolation(f"sample time {t!r} outside [0, 3]")
    traj = simulate_canonical(a, sol.beta, dt=dt, horizon=3.0, method=method)
    rows = [(t, sol(t), traj.at(t)) for t in times]
    return ErrorTable(rows=rows, method=method, dt=dt, a=a)
