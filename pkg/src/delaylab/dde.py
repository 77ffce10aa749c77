"""Fixed-step method-of-steps integration of scalar constant-delay equations.

The solved problem is ``z'(t) = f(t, z(t), z(t - delay))`` on ``[0, horizon]``
with ``z`` prescribed on the history interval ``[0, delay]``.  History is
sampled from the initial function, never integrated; stepping starts at
``t = delay``.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from typing import Callable, Optional

import numpy as np

from .errors import DomainViolation, FutureLookup, HorizonTooShort, MisalignedStep, NonFinite, NonPositive

__all__ = [
    "Grid",
    "Trajectory",
    "StepMethod",
    "build_grid",
    "integrate",
    "delayed_value",
    "hermite",
]

Rhs = Callable[[float, float, float], float]

_ALIGN_RTOL = 1e-9


class StepMethod(str, enum.Enum):
    """Stepping schemes.

    ``EULER`` and ``RK4_HELD`` read the delayed state only at grid nodes.
    ``RK4`` reads it at half-step stage times through a cubic Hermite
    interpolant.  ``RK4_HELD`` is classical RK4 with the delayed input held
    at the node ``t_k - delay`` for all four stages, the way a
    system-dynamics ``DELAY`` block behaves; it is first order overall.
    """

    EULER = "euler"
    RK4 = "rk4"
    RK4_HELD = "rk4-held"

    @classmethod
    def parse(cls, value):
        if isinstance(value, cls):
            return value
        aliases = {"forward-euler": cls.EULER, "classical-rk4": cls.RK4}
        key = str(value).strip().lower()
        if key in aliases:
            return aliases[key]
        return cls(key)


@dataclass(frozen=True)
class Grid:
    dt: float
    delay: float
    horizon: float
    nodes_per_delay: int

    @property
    def n_nodes(self) -> int:
        return int(round(self.horizon / self.dt)) + 1

    @property
    def times(self) -> np.ndarray:
        return np.arange(self.n_nodes) * self.dt

    def index(self, t: float) -> int:
        """Index of the node at time ``t``; raises if ``t`` is off-grid."""
        k = int(round(t / self.dt))
        if not math.isclose(k * self.dt, t, rel_tol=1e-9, abs_tol=1e-12) or not 0 <= k < self.n_nodes:
            raise ValueError(f"t={t!r} is not a node of this grid")
        return k

    def scaled(self, factor: float) -> "Grid":
        """Same node layout with every time multiplied by ``factor``."""
        if not factor > 0:
            raise NonPositive(f"time scale factor must be > 0, got {factor!r}")
        return Grid(self.dt * factor, self.delay * factor, self.horizon * factor, self.nodes_per_delay)


def build_grid(dt: float, delay: float, horizon: float) -> Grid:
    for name, val in (("dt", dt), ("delay", delay), ("horizon", horizon)):
        if not (val > 0 and math.isfinite(val)):
            raise NonPositive(f"{name} must be a finite number > 0, got {val!r}")
    if horizon < delay:
        raise HorizonTooShort(f"horizon {horizon!r} is shorter than the delay {delay!r}")
    ratio = delay / dt
    n = int(round(ratio))
    if n < 1 or abs(ratio - n) > _ALIGN_RTOL * ratio:
        raise MisalignedStep(f"delay/dt = {ratio!r} is not an integer")
    steps = int(round(horizon / dt))
    return Grid(dt=float(dt), delay=float(delay), horizon=steps * float(dt), nodes_per_delay=n)


@dataclass(frozen=True)
class Trajectory:
    """Uniformly sampled solution with the derivative stored at every node."""

    grid: Grid
    values: np.ndarray
    derivs: np.ndarray

    def __post_init__(self):
        values = np.array(self.values, dtype=float)
        derivs = np.array(self.derivs, dtype=float)
        if values.shape != derivs.shape or values.ndim != 1:
            raise ValueError("values and derivs must be 1-d arrays of equal length")
        if len(values) != self.grid.n_nodes:
            raise ValueError(f"expected {self.grid.n_nodes} samples, got {len(values)}")
        values.flags.writeable = False
        derivs.flags.writeable = False
        object.__setattr__(self, "values", values)
        object.__setattr__(self, "derivs", derivs)

    @property
    def times(self) -> np.ndarray:
        return self.grid.times

    def __len__(self):
        return len(self.values)

    def at(self, t: float) -> float:
        return float(self.values[self.grid.index(t)])

    def sample(self, times) -> np.ndarray:
        return np.array([self.at(t) for t in times])

    def map(self, value_scale: float, time_scale: float = 1.0, value_offset: float = 0.0) -> "Trajectory":
        """Affine change of variables ``v -> v*value_scale + value_offset`` and ``t -> t*time_scale``."""
        grid = self.grid if time_scale == 1.0 else self.grid.scaled(time_scale)
        return Trajectory(
            grid,
            self.values * value_scale + value_offset,
            self.derivs * (value_scale / time_scale),
        )


def hermite(v0: float, v1: float, d0: float, d1: float, h: float, s: float) -> float:
    """Cubic Hermite interpolant on ``[x0, x0 + h]`` evaluated at ``x0 + s*h``."""
    s2 = s * s
    s3 = s2 * s
    h00 = 2 * s3 - 3 * s2 + 1
    h10 = s3 - 2 * s2 + s
    h01 = -2 * s3 + 3 * s2
    h11 = s3 - s2
    return h00 * v0 + h10 * h * d0 + h01 * v1 + h11 * h * d1


def delayed_value(traj: Trajectory, t: float, method=StepMethod.RK4, frontier: Optional[int] = None) -> float:
    """Look up ``z(t)`` in already computed history.

    ``frontier`` is the last valid node index (defaults to the end of the
    trajectory).  Node queries return the stored sample exactly; off-node
    queries are only legal for ``RK4`` and use the Hermite interpolant.
    """
    method = StepMethod.parse(method)
    dt = traj.grid.dt
    last = len(traj) - 1 if frontier is None else frontier
    if t < 0:
        raise DomainViolation(f"delayed query time {t!r} precedes the history interval")
    pos = t / dt
    k = int(round(pos))
    if abs(pos - k) <= 1e-9 * max(1.0, pos):
        if k > last:
            raise FutureLookup(t, last * dt)
        return float(traj.values[k])
    if method is not StepMethod.RK4:
        raise ValueError(f"{method.value} reads delayed values only at grid nodes; t={t!r} is off-grid")
    j = int(math.floor(pos))
    if j + 1 > last:
        raise FutureLookup(t, last * dt)
    return hermite(traj.values[j], traj.values[j + 1], traj.derivs[j], traj.derivs[j + 1], dt, pos - j)


def _history_derivs(init, times: np.ndarray, values: np.ndarray, dt: float) -> np.ndarray:
    deriv = getattr(init, "derivative", None)
    if callable(deriv):
        return np.array([float(deriv(t)) for t in times])
    if len(values) < 3:
        return np.gradient(values, dt)
    return np.gradient(values, dt, edge_order=2)


def integrate(rhs: Rhs, init, grid: Grid, method=StepMethod.EULER) -> Trajectory:
    """Integrate ``z' = rhs(t, z, z(t - delay))`` on ``grid``.

    ``init`` is evaluated at every node of ``[0, delay]``.  If it exposes a
    ``derivative`` callable, that is used for the history derivatives
    (needed by the RK4 Hermite lookups); otherwise they are estimated by
    finite differences of the samples.
    """
    method = StepMethod.parse(method)
    dt = grid.dt
    n = grid.nodes_per_delay
    total = grid.n_nodes
    hist_t = np.arange(n + 1) * dt
    hist_v = np.array([float(init(t)) for t in hist_t])
    for t, v in zip(hist_t, hist_v):
        if not math.isfinite(v):
            raise NonFinite(float(t), float(v))
    hist_d = _history_derivs(init, hist_t, hist_v, dt)

    z = [0.0] * total
    d = [0.0] * total
    z[: n + 1] = hist_v.tolist()
    d[:n] = hist_d[:n].tolist()

    half = 0.5 * dt
    sixth = dt / 6.0
    eighth = dt / 8.0
    isfinite = math.isfinite
    zk = z[n]
    for k in range(n, total - 1):
        t = k * dt
        zd = z[k - n]
        fk = rhs(t, zk, zd)
        d[k] = fk
        if method is StepMethod.EULER:
            znew = zk + dt * fk
        elif method is StepMethod.RK4_HELD:
            k2 = rhs(t + half, zk + half * fk, zd)
            k3 = rhs(t + half, zk + half * k2, zd)
            k4 = rhs(t + dt, zk + dt * k3, zd)
            znew = zk + sixth * (fk + 2.0 * k2 + 2.0 * k3 + k4)
        else:
            j = k - n
            zmid = 0.5 * (z[j] + z[j + 1]) + eighth * (d[j] - d[j + 1])
            k2 = rhs(t + half, zk + half * fk, zmid)
            k3 = rhs(t + half, zk + half * k2, zmid)
            k4 = rhs(t + dt, zk + dt * k3, z[j + 1])
            znew = zk + sixth * (fk + 2.0 * k2 + 2.0 * k3 + k4)
        if not isfinite(znew):
            raise NonFinite((k + 1) * dt, znew)
        z[k + 1] = znew
        zk = znew
    last = total - 1
    if last >= n:
        d[last] = rhs(last * dt, z[last], z[last - n])
        if not isfinite(d[last]):
            raise NonFinite(last * dt, d[last])
    return Trajectory(grid, np.array(z), np.array(d))
