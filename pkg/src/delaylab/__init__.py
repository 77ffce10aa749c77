"""Numerical laboratory for the delay logistic equation and a two-rate interest/inflation model."""

__version__ = "0.1.0"

from .dde import Grid, StepMethod, Trajectory, build_grid, delayed_value, integrate
from .econ import (
    EconTrajectory,
    InterestScenario,
    fisher_inflation,
    policy_check,
    psi,
    shift_equivalence_check,
    simulate_scenario,
)
from .errors import DelayLabError, NumericalError, ParameterError
from .exact import ErrorTable, ExactSolution, error_table, exact_value
from .logistic import (
    DelayLogisticParams,
    InitialFunction,
    PhysicalParams,
    canonical_params,
    junction_residual,
    phi,
    rhs_canonical,
    simulate_canonical,
    to_physical,
    wright_from_canonical,
)
from .regime import Regime, SimConfig, analyze_trajectory, hopf_boundary_search, predict_regime
