# src/impulsive_fronts/errors.py
"""Exception hierarchy for impulsive-fronts.

Invalid input raises `ConfigError` or `ParameterError` (both `ValueError`s),
numerical failures raise a `SolverError` subclass carrying a diagnostics
mapping. The CLI maps the first group to exit code 1 and the second to 2.
Assumption violations are never raised; see `model.validate_assumptions`.
"""

from __future__ import annotations

from collections.abc import Mapping
from pathlib import Path


class ImpulsiveFrontsError(Exception):
    """Root of every error raised by this package."""


class ConfigError(ImpulsiveFrontsError, ValueError):
    """A config file or CLI override could not be parsed."""

    def __init__(
        self,
        message: str,
        *,
        path: Path | str | None = None,
        line: int | None = None,
    ) -> None:
        self.path = None if path is None else Path(path)
        self.line = line
        prefix = ""
        if self.path is not None:
            prefix = f"{self.path}:{line}: " if line is not None else f"{self.path}: "
        elif line is not None:
            prefix = f"line {line}: "
        super().__init__(f"{prefix}{message}")


class ParameterError(ImpulsiveFrontsError, ValueError):
    """A constructor or operation received an out-of-range argument."""


class SolverError(ImpulsiveFrontsError, RuntimeError):
    """A numerical routine failed; `diagnostics` explains where.

    Solvers that advance a state attach the last accepted one as `state`.
    """

    def __init__(
        self, message: str, *, diagnostics: Mapping[str, object] | None = None
    ) -> None:
        self.diagnostics: dict[str, object] = dict(diagnostics or {})
        self.state: object | None = None
        if self.diagnostics:
            detail = ", ".join(f"{k}={v!r}" for k, v in self.diagnostics.items())
            message = f"{message} ({detail})"
        super().__init__(message)


class EigenSolveError(SolverError):
    """No positivity-satisfying eigenpair was found."""


class ConvergenceError(SolverError):
    """An iteration hit its cap before meeting its tolerance."""


class StepRejectedError(SolverError):
    """Time step rejections drove dt below dt_min."""


class BracketError(SolverError):
    """A bisection bracket does not straddle a sign or verdict change."""
