# src/impulsive_fronts/logs.py
"""Application logger built on apathetic_logging.

Follows the custom-logger recipe: subclass the apathetic `Logger`, resolve the
level from CLI -> env -> root -> default, register env vars, the default level
and the logger name once at import time.
"""

from __future__ import annotations

import argparse
import os

import apathetic_logging

from .constants import APP_NAME, DEFAULT_LOG_LEVEL, LOG_LEVEL_ENV_VAR


# --- Custom Logger Class -----------------------------------------------------


class AppLogger(apathetic_logging.Logger):
    """impulsive-fronts logger with domain formatting helpers."""

    def determineLogLevel(
        self,
        *,
        args: argparse.Namespace | None = None,
        root_log_level: str | None = None,
    ) -> str:
        """Resolve log level from CLI → env → root config → default."""
        if args is not None:
            args_level = getattr(args, "log_level", None)
            if args_level:
                return str(args_level).upper()

        for env_var in (LOG_LEVEL_ENV_VAR, "LOG_LEVEL"):
            env_log_level = os.getenv(env_var)
            if env_log_level:
                return env_log_level.upper()

        if root_log_level:
            return root_log_level.upper()

        return DEFAULT_LOG_LEVEL.upper()

    def log_eigen(self, label: str, value: float) -> None:
        """Report an eigenvalue at brief level with a sign marker."""
        sign = "<0" if value < 0 else ">=0"
        self.brief("%s = %.6g (%s)", label, value, sign)

    def log_period(
        self, m: int, r: float, s: float, sup_u: float, sup_v: float
    ) -> None:
        """Per-period front summary at detail level."""
        self.detail(
            "period %d: r=%.6g s=%.6g sup_u=%.3e sup_v=%.3e", m, r, s, sup_u, sup_v
        )


# --- Logger Initialization ----------------------------------------------------

AppLogger.extendLoggingModule()
apathetic_logging.registerLogLevelEnvVars([LOG_LEVEL_ENV_VAR, "LOG_LEVEL"])
apathetic_logging.registerDefaultLogLevel(DEFAULT_LOG_LEVEL)
apathetic_logging.registerLogger(APP_NAME, AppLogger)


# --- Application Logger Getter ------------------------------------------------


def get_app_logger(logger_name: str = APP_NAME) -> AppLogger:
    """Return the configured application logger.

    Args:
        logger_name: Logger to fetch; defaults to the package logger.

    Returns:
        The `AppLogger` instance registered under `logger_name`.
    """
    return apathetic_logging.getLoggerOfType(logger_name, AppLogger)
