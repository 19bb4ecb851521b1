"""Steady-state and transition analysis of environmental tax recycling in a two-period OLG economy with a pollution-health feedback."""

from .dynamics import EconState, Trajectory, cohort_welfare, initial_state, simulate, step
from .errors import LowPollutionWarning, NumericError, ParameterError, RegimeError, ScenarioError
from .optimize import ScalarMaxResult, audit, central_diff, maximize_on_unit_interval
from .params import DerivedParams, ModelParams, derive, validate
from .policy import (
    PolicyReport,
    beta_hat,
    beta_hat_u,
    classify,
    comparative_statics,
    du_dbeta,
    dy_dbeta,
    gap,
    tau_cutoff_u,
    tau_cutoff_y,
)
from .scenario import Scenario, load_scenario, parse_scenario
from .steady_state import SteadyState, solve, welfare

__version__ = "0.1.0"
