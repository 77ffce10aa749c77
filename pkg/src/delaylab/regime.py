"""Regime prediction from ``a``, empirical classification of trajectories, Hopf boundary search."""

from __future__ import annotations

import enum
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import List, Optional

import numpy as np

from .dde import StepMethod, Trajectory
from .errors import BracketInvalid, NonPositive, TooShort
from .logistic import simulate_canonical

__all__ = [
    "Regime",
    "Thresholds",
    "THRESHOLDS",
    "OscillationAnalysis",
    "SimConfig",
    "HopfResult",
    "predict_regime",
    "crossing_times",
    "extrema",
    "analyze_trajectory",
    "classify_a",
    "hopf_boundary_search",
]


class Regime(str, enum.Enum):
    ASYMPTOTIC = "asymptotic"
    DAMPED = "damped"
    SUSTAINED = "sustained"

    @property
    def rank(self) -> int:
        return list(Regime).index(self)


@dataclass(frozen=True)
class Thresholds:
    asymptotic_bound: float = 1 / math.e
    # proved bound; Wright's conjectured value is pi/2
    sustained_bound: float = 1.5706

    def __post_init__(self):
        if not self.asymptotic_bound < self.sustained_bound < math.pi / 2:
            raise ValueError("thresholds must satisfy asymptotic < sustained < pi/2")


THRESHOLDS = Thresholds()


def predict_regime(a: float, thresholds: Thresholds = THRESHOLDS) -> Regime:
    if not (a > 0 and math.isfinite(a)):
        raise NonPositive(f"a must be > 0, got {a!r}")
    if a <= thresholds.asymptotic_bound:
        return Regime.ASYMPTOTIC
    if a <= thresholds.sustained_bound:
        return Regime.DAMPED
    return Regime.SUSTAINED


@dataclass(frozen=True)
class OscillationAnalysis:
    equilibrium: float
    # sign changes of z - equilibrium over the stepped run, noise floor applied
    crossing_times: np.ndarray
    peak_times: np.ndarray
    peak_amplitudes: np.ndarray
    envelope_ratio: float
    mean_peak_ratio: float
    terminal_deviation: float
    verdict: Regime


def crossing_times(times: np.ndarray, values: np.ndarray, level: float) -> np.ndarray:
    """Times where ``values - level`` changes sign, linearly interpolated between nodes.

    Exact touches of ``level`` are not counted as crossings unless the sign
    on either side differs.
    """
    dev = np.asarray(values, dtype=float) - level
    sign = np.sign(dev)
    nz = np.flatnonzero(sign)
    if len(nz) < 2:
        return np.empty(0)
    s = sign[nz]
    flips = np.flatnonzero(s[1:] != s[:-1])
    i0 = nz[flips]
    i1 = nz[flips + 1]
    t0, t1 = times[i0], times[i1]
    d0, d1 = dev[i0], dev[i1]
    return t0 + (t1 - t0) * d0 / (d0 - d1)


def extrema(values: np.ndarray):
    """Indices of strict interior local maxima and minima (plateaus count once)."""
    v = np.asarray(values, dtype=float)
    dv = np.diff(v)
    nz = np.flatnonzero(dv)
    if len(nz) < 2:
        return np.empty(0, dtype=int), np.empty(0, dtype=int)
    s = np.sign(dv[nz])
    turn = np.flatnonzero(s[1:] != s[:-1])
    idx = nz[turn] + 1
    is_max = s[turn] > 0
    return idx[is_max], idx[~is_max]


def analyze_trajectory(
    traj: Trajectory,
    equilibrium: float,
    transient_fraction: float = 0.5,
    rel_tol: float = 0.01,
    n_peaks: int = 10,
    min_delays: float = 20.0,
    noise_floor: float = 1e-8,
) -> OscillationAnalysis:
    """Classify a trajectory as asymptotic, damped or sustained about ``equilibrium``.

    Deviations smaller than ``noise_floor * equilibrium`` are treated as
    zero.  Sign changes of ``z - equilibrium`` are counted over the whole
    stepped part of the run (``t >= delay``), since strongly damped runs
    settle long before the transient window ends.  Fewer than two sign
    changes together with a terminal deviation below ``1e-3 * equilibrium``
    means asymptotic.

    Otherwise the envelope is measured on the last ``n_peaks`` significant
    local maxima of ``z`` after the first ``transient_fraction`` of the run
    (or, if the oscillation had already died out there, the last ones of
    the whole run).  Maxima rather than all extrema are used because the
    logistic cycle is strongly asymmetric.  A geometric-mean ratio of
    successive maxima below ``1 - rel_tol`` means damped, anything else
    sustained.
    """
    if not equilibrium > 0:
        raise NonPositive(f"equilibrium must be > 0, got {equilibrium!r}")
    if not 0 <= transient_fraction < 1:
        raise ValueError("transient_fraction must be in [0, 1)")
    grid = traj.grid
    start = int(round(transient_fraction * (grid.n_nodes - 1)))
    kept = grid.n_nodes - 1 - start
    if kept * grid.dt < min_delays * grid.delay:
        raise TooShort(
            f"only {kept * grid.dt / grid.delay:.3g} delay units after the transient; need {min_delays}"
        )
    first = grid.nodes_per_delay
    times = traj.times[first:]
    values = traj.values[first:]
    dev = values - equilibrium
    floor = noise_floor * equilibrium
    clipped = np.where(np.abs(dev) > floor, dev, 0.0)
    crossings = crossing_times(times, clipped, 0.0)
    terminal = abs(float(dev[-1]))

    imax, imin = extrema(values)
    order = np.sort(np.concatenate([imax, imin]))
    significant = np.abs(dev[order]) > floor
    peak_times = times[order][significant]
    peak_amps = np.abs(dev[order])[significant]

    if len(crossings) < 2 and terminal < 1e-3 * equilibrium:
        return OscillationAnalysis(
            equilibrium, crossings, peak_times, peak_amps, math.nan, math.nan, terminal, Regime.ASYMPTOTIC
        )

    imax = imax[np.abs(dev[imax]) > floor]
    late = imax[imax >= start - first]
    pool = late if len(late) >= 3 else imax
    maxima = np.abs(dev[pool])[-n_peaks:]
    if len(maxima) < 2:
        if terminal < 1e-3 * equilibrium:
            # crossed the equilibrium, then settled within a couple of swings
            return OscillationAnalysis(
                equilibrium, crossings, peak_times, peak_amps, math.nan, math.nan, terminal, Regime.DAMPED
            )
        raise TooShort(f"only {len(peak_amps)} significant extrema; need at least 4")
    envelope = float(maxima[-1] / maxima[0])
    mean_ratio = envelope ** (1.0 / (len(maxima) - 1))
    verdict = Regime.DAMPED if mean_ratio < 1 - rel_tol else Regime.SUSTAINED
    return OscillationAnalysis(
        equilibrium, crossings, peak_times, peak_amps, envelope, mean_ratio, terminal, verdict
    )


@dataclass(frozen=True)
class SimConfig:
    """Simulation settings for empirical classification in canonical units."""

    dt: float = 1 / 512
    horizon: float = 300.0
    beta: float = 0.12
    method: StepMethod = StepMethod.EULER
    transient_fraction: float = 0.5
    rel_tol: float = 0.01


def classify_a(a: float, config: SimConfig = SimConfig()) -> OscillationAnalysis:
    traj = simulate_canonical(a, config.beta, dt=config.dt, horizon=config.horizon, method=config.method)
    return analyze_trajectory(traj, a, config.transient_fraction, config.rel_tol)


@dataclass(frozen=True)
class HopfResult:
    estimate: float
    lo: float
    hi: float
    evaluations: List[tuple] = field(default_factory=list)


def hopf_boundary_search(
    lo: float,
    hi: float,
    param_tol: float = 0.002,
    config: SimConfig = SimConfig(),
    concurrent: bool = False,
) -> HopfResult:
    """Bisect on the empirical verdict between a damped ``lo`` and a sustained ``hi``."""
    if not lo < hi:
        raise BracketInvalid(f"need lo < hi, got [{lo!r}, {hi!r}]")
    if not param_tol > 0:
        raise NonPositive("param_tol must be > 0")
    if concurrent:
        with ThreadPoolExecutor(max_workers=2) as pool:
            v_lo, v_hi = (r.verdict for r in pool.map(lambda x: classify_a(x, config), (lo, hi)))
    else:
        v_lo = classify_a(lo, config).verdict
        v_hi = classify_a(hi, config).verdict
    evaluations = [(lo, v_lo), (hi, v_hi)]
    if v_lo is not Regime.DAMPED or v_hi is not Regime.SUSTAINED:
        raise BracketInvalid(f"bracket endpoints classify as {v_lo.value} and {v_hi.value}")
    while hi - lo > param_tol:
        mid = 0.5 * (lo + hi)
        v = classify_a(mid, config).verdict
        evaluations.append((mid, v))
        if v is Regime.SUSTAINED:
            hi = mid
        else:
            lo = mid
    return HopfResult(0.5 * (lo + hi), lo, hi, evaluations)
