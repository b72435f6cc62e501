# src/impulsive_fronts/constants.py
"""Constants for impulsive-fronts.

Application identity, environment variable names, numerical defaults and the
tolerances shared across the solvers live here so every module reads the same
values.
"""

from __future__ import annotations

from typing import Final


# --- Application identity -----------------------------------------------------

APP_NAME: Final[str] = "impulsive_fronts"
"""Logger name and import package name."""

PROGRAM_DISPLAY: Final[str] = "impulsive-fronts"
"""Name shown by the CLI."""

DEFAULT_LOG_LEVEL: Final[str] = "info"
"""Log level used when no CLI flag, env var or root level is set."""

LOG_LEVEL_ENV_VAR: Final[str] = "IMPULSIVE_FRONTS_LOG_LEVEL"
"""Application-specific log level environment variable."""

OUTPUT_DIR_ENV_VAR: Final[str] = "IMPULSIVE_FRONTS_OUTPUT_DIR"
"""Overrides `output.dir` from the config file."""

LOG_LEVEL_CHOICES: Final[tuple[str, ...]] = (
    "test",
    "trace",
    "debug",
    "detail",
    "info",
    "brief",
    "warning",
    "error",
    "critical",
    "silent",
)


# --- Exit codes ---------------------------------------------------------------

EXIT_OK: Final[int] = 0
EXIT_USAGE: Final[int] = 1
EXIT_SOLVER: Final[int] = 2


# --- Model validation ---------------------------------------------------------

ASSUMPTION_SAMPLE_LOW: Final[float] = 1e-6
ASSUMPTION_SAMPLE_HIGH: Final[float] = 1e6
"""Log-spaced assumption samples cover [low, high] times a characteristic density."""

DEFAULT_ASSUMPTION_SAMPLES: Final[int] = 200

ROOT_TOL: Final[float] = 1e-12
"""Absolute tolerance for scalar root finding (u_star, k, critical width)."""


# --- Eigenvalue solvers -------------------------------------------------------

CASE_REL_TOL: Final[float] = 1e-9
"""Relative tolerance deciding the equal-ratio case."""

MIX_BRACKET_STEPS: Final[int] = 64
"""Doublings allowed while bracketing the logit of the window position."""

MIX_RESIDUAL_TOL: Final[float] = 1e-8
"""Largest accepted |ln y1 - ln y2| at the mixing-coordinate root."""

CRITICAL_BRACKET_STEPS: Final[int] = 64
"""Halvings and doublings allowed while bracketing the critical half-width."""

DEFAULT_EIGEN_N: Final[int] = 400
DEFAULT_EIGEN_STEPS: Final[int] = 2000
"""Default monodromy time steps per period (dt = T / steps)."""

DEFAULT_EIGEN_TOL: Final[float] = 1e-10
DEFAULT_EIGEN_MAX_ITER: Final[int] = 10_000
MIN_EIGEN_N: Final[int] = 16


# --- Forward simulation -------------------------------------------------------

DEFAULT_SIM_N: Final[int] = 400
MIN_SIM_N: Final[int] = 32
DEFAULT_SIM_STEPS_PER_SEASON: Final[int] = 2000
"""Default dt = min(tau, T - tau) / steps."""

DEFAULT_DT_MIN: Final[float] = 1e-9
DEFAULT_VANISH_EPS: Final[float] = 1e-4
DEFAULT_HORIZON_PERIODS: Final[int] = 50
CLAMP_FLOOR: Final[float] = -1e-12
"""Densities in [CLAMP_FLOOR, 0) are clamped to zero; lower values reject a step."""

SPREAD_WIDTH_FACTOR: Final[float] = 4.0
"""Default spread width = factor * critical half-width (or factor * s0)."""


# --- Periodic states ----------------------------------------------------------

DEFAULT_ORBIT_N: Final[int] = 64
DEFAULT_ORBIT_STEPS: Final[int] = 400
DEFAULT_ORBIT_TOL: Final[float] = 1e-8
DEFAULT_ORBIT_MAX_SWEEPS: Final[int] = 10_000
ZERO_ORBIT_TOL: Final[float] = 1e-10


# --- Classifier ---------------------------------------------------------------

NU1_ZERO_TOL: Final[float] = 1e-8
"""nu1 within this of zero counts as nu1 >= 0 (region at infinity is high risk)."""

DEFAULT_BISECTION_DEPTH: Final[int] = 10
"""Default mu-star resolution is 2**-depth of the bracket width."""


# --- Export -------------------------------------------------------------------

CSV_FLOAT_FORMAT: Final[str] = "{:.17g}"
DEFAULT_OUTPUT_DIR: Final[str] = "out"
