# src/impulsive_fronts/__init__.py
"""Two-season impulsive free-boundary epidemic model.

Principal eigenvalues (semi-analytic and discrete), forward simulation with
moving fronts, periodic steady states and the spreading-vanishing classifier.
"""

from .classifier import classify, find_mu_star
from .config import ExperimentSpec, read_experiment, write_config
from .eigen_analytic import (
    EigenCase,
    EigenSolution,
    critical_half_width,
    lambda1_interval,
    nu1,
)
from .eigen_discrete import build_monodromy, lambda1_discrete, power_iterate
from .errors import (
    BracketError,
    ConfigError,
    ConvergenceError,
    EigenSolveError,
    ImpulsiveFrontsError,
    ParameterError,
    SolverError,
    StepRejectedError,
)
from .forward_sim import SimConfig, SimState, Trajectory, detect_outcome, run
from .logs import AppLogger, get_app_logger
from .model import (
    GrowthFunction,
    ImpulseFunction,
    InitialData,
    ModelParams,
    compute_bounds,
    validate_assumptions,
)
from .outcome import MuStarEstimate, Outcome, Verdict
from .periodic_state import (
    OdeOrbit,
    OrbitConfig,
    PeriodicOrbit,
    monotone_iterate,
    periodic_ode_orbit,
)


__all__ = [
    "AppLogger",
    "BracketError",
    "ConfigError",
    "ConvergenceError",
    "EigenCase",
    "EigenSolution",
    "EigenSolveError",
    "ExperimentSpec",
    "GrowthFunction",
    "ImpulseFunction",
    "ImpulsiveFrontsError",
    "InitialData",
    "ModelParams",
    "MuStarEstimate",
    "OdeOrbit",
    "OrbitConfig",
    "Outcome",
    "ParameterError",
    "PeriodicOrbit",
    "SimConfig",
    "SimState",
    "SolverError",
    "StepRejectedError",
    "Trajectory",
    "Verdict",
    "build_monodromy",
    "classify",
    "compute_bounds",
    "critical_half_width",
    "detect_outcome",
    "find_mu_star",
    "get_app_logger",
    "lambda1_discrete",
    "lambda1_interval",
    "monotone_iterate",
    "nu1",
    "periodic_ode_orbit",
    "power_iterate",
    "read_experiment",
    "run",
    "validate_assumptions",
    "write_config",
]
