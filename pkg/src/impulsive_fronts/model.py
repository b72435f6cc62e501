# src/impulsive_fronts/model.py
"""Model parameters, growth/impulse contracts, assumption checks and bounds.

The model couples the infectious-agent density u and the infective-human
density v over a period [mT, (m+1)T]: a dry season of length tau (u decays,
v diffuses and decays, fronts frozen) followed by a wet season (coupled
reaction-diffusion with Stefan fronts). At each wrap t = mT the impulse
u -> H(u) is applied; v is untouched.
"""

from __future__ import annotations

import dataclasses
import math
from collections.abc import Callable
from dataclasses import dataclass, field
from typing import Any

import numpy as np
import numpy.typing as npt
from scipy.optimize import brentq

from .constants import (
    ASSUMPTION_SAMPLE_HIGH,
    ASSUMPTION_SAMPLE_LOW,
    DEFAULT_ASSUMPTION_SAMPLES,
    ROOT_TOL,
)
from .errors import ParameterError, SolverError
from .logs import get_app_logger


FloatArray = npt.NDArray[np.float64]
ScalarMap = Callable[[FloatArray], FloatArray]


def as_array(u: npt.ArrayLike) -> FloatArray:
    """Return `u` as a float64 numpy array (0-d for scalars)."""
    return np.asarray(u, dtype=np.float64)


# --- Growth function (F) ------------------------------------------------------


@dataclass(frozen=True)
class GrowthFunction:
    """Infection-rate function f(u) for the v-equation.

    Use the constructors `beverton_holt` and `custom` rather than building
    instances directly.
    """

    kind: str
    m: float = 0.0
    a: float = 0.0
    evaluator: ScalarMap | None = field(default=None, compare=False, repr=False)
    slope_at_zero: float = 0.0

    @classmethod
    def beverton_holt(cls, m: float, a: float) -> GrowthFunction:
        """f(u) = m*u / (a + u): saturation rate m, half-saturation density a."""
        return cls(kind="beverton-holt", m=m, a=a, slope_at_zero=m / a)

    @classmethod
    def custom(cls, fn: ScalarMap, derivative_at_zero: float) -> GrowthFunction:
        """User-supplied vectorised evaluator with its derivative at zero."""
        return cls(kind="custom", evaluator=fn, slope_at_zero=derivative_at_zero)

    def __call__(self, u: npt.ArrayLike) -> FloatArray:
        arr = as_array(u)
        if self.kind == "beverton-holt":
            return self.m * arr / (self.a + arr)
        if self.evaluator is None:
            msg = f"growth kind {self.kind!r} has no evaluator"
            raise ParameterError(msg)
        return as_array(self.evaluator(arr))

    @property
    def derivative_at_zero(self) -> float:
        return self.slope_at_zero

    def limit_ratio(self, probe: float = ASSUMPTION_SAMPLE_HIGH) -> float:
        """lim f(u)/u as u -> infinity (exact for Beverton-Holt, probed otherwise)."""
        if self.kind == "beverton-holt":
            return 0.0
        return float(self(probe)) / probe

    def characteristic_density(self) -> float:
        return self.a if self.kind == "beverton-holt" and self.a > 0 else 1.0

    def describe(self) -> str:
        if self.kind == "beverton-holt":
            return f"beverton-holt(m={self.m!r}, a={self.a!r})"
        return f"custom(f'(0)={self.slope_at_zero!r})"


# --- Impulse function (H) -----------------------------------------------------


@dataclass(frozen=True)
class ImpulseFunction:
    """Disinfection map u -> H(u) applied at every period wrap."""

    kind: str
    c: float = 0.0
    d: float = 0.0
    theta: float = 1.0
    evaluator: ScalarMap | None = field(default=None, compare=False, repr=False)
    slope_at_zero: float = 1.0

    @classmethod
    def identity(cls) -> ImpulseFunction:
        return cls(kind="identity")

    @classmethod
    def saturating(cls, c: float, d: float) -> ImpulseFunction:
        """H(u) = c*u / (d + u), so H'(0) = c/d."""
        return cls(kind="saturating", c=c, d=d, slope_at_zero=c / d)

    @classmethod
    def linear(cls, theta: float) -> ImpulseFunction:
        """H(u) = theta*u; a constant kill fraction 1 - theta."""
        return cls(kind="linear", theta=theta, slope_at_zero=theta)

    @classmethod
    def custom(cls, fn: ScalarMap, derivative_at_zero: float) -> ImpulseFunction:
        return cls(kind="custom", evaluator=fn, slope_at_zero=derivative_at_zero)

    def __call__(self, u: npt.ArrayLike) -> FloatArray:
        arr = as_array(u)
        if self.kind == "identity":
            return arr.copy()
        if self.kind == "saturating":
            return self.c * arr / (self.d + arr)
        if self.kind == "linear":
            return self.theta * arr
        if self.evaluator is None:
            msg = f"impulse kind {self.kind!r} has no evaluator"
            raise ParameterError(msg)
        return as_array(self.evaluator(arr))

    @property
    def derivative_at_zero(self) -> float:
        return self.slope_at_zero

    @property
    def constant_ratio(self) -> bool:
        """True for the boundary case where H(u)/u does not vary."""
        return self.kind in {"identity", "linear"}

    def describe(self) -> str:
        if self.kind == "identity":
            return "identity"
        if self.kind == "saturating":
            return f"saturating(c={self.c!r}, d={self.d!r})"
        if self.kind == "linear":
            return f"linear(theta={self.theta!r})"
        return f"custom(H'(0)={self.slope_at_zero!r})"


# --- Parameters ---------------------------------------------------------------


@dataclass(frozen=True)
class ModelParams:
    """Every coefficient of the two-season model.

    Construction does not validate; call `require_structural` (solvers do) or
    `validate_assumptions` (reports instead of raising).
    """

    d1: float
    d2: float
    a11: float
    a12: float
    a22: float
    delta1: float
    delta2: float
    mu1: float
    mu2: float
    tau: float
    T: float
    s0: float
    growth: GrowthFunction
    impulse: ImpulseFunction = field(default_factory=ImpulseFunction.identity)

    @property
    def f_prime0(self) -> float:
        return self.growth.derivative_at_zero

    @property
    def h_prime0(self) -> float:
        return self.impulse.derivative_at_zero

    @property
    def wet_length(self) -> float:
        return self.T - self.tau

    def with_overrides(self, **changes: Any) -> ModelParams:
        """Copy with some fields replaced."""
        return dataclasses.replace(self, **changes)


RATE_FIELDS: tuple[str, ...] = (
    "d1",
    "d2",
    "a11",
    "a12",
    "a22",
    "delta1",
    "delta2",
    "mu1",
    "mu2",
)


def structural_violations(
    params: ModelParams, *, allow_uncoupled: bool = False
) -> list[str]:
    """List positivity and season-structure problems of `params`.

    Args:
        params: Parameters to inspect.
        allow_uncoupled: Accept a12 = 0 and f'(0) = 0 (decoupled linear tests)
            and zero expansion capacities.

    Returns:
        Human-readable problems, empty when the parameters are usable.
    """
    problems: list[str] = []
    relaxed = {"a12", "mu1", "mu2"} if allow_uncoupled else {"mu1", "mu2"}
    for name in RATE_FIELDS:
        value = float(getattr(params, name))
        if not math.isfinite(value):
            problems.append(f"{name} must be finite (got {value!r})")
        elif name in relaxed:
            if value < 0:
                problems.append(f"{name} must be >= 0 (got {value!r})")
        elif value <= 0:
            problems.append(f"{name} must be > 0 (got {value!r})")
    if not 0 < params.tau < params.T:
        problems.append(f"need 0 < tau < T (got tau={params.tau!r}, T={params.T!r})")
    if not params.s0 > 0:
        problems.append(f"s0 must be > 0 (got {params.s0!r})")
    fp0 = params.f_prime0
    if fp0 < 0 or (fp0 == 0 and not allow_uncoupled):
        problems.append(f"f'(0) must be > 0 (got {fp0!r})")
    if not params.h_prime0 > 0:
        problems.append(f"H'(0) must be > 0 (got {params.h_prime0!r})")
    return problems


def require_structural(params: ModelParams, *, allow_uncoupled: bool = False) -> None:
    """Raise `ParameterError` listing every structural problem, if any."""
    problems = structural_violations(params, allow_uncoupled=allow_uncoupled)
    if problems:
        msg = "invalid model parameters: " + "; ".join(problems)
        raise ParameterError(msg)


# --- Initial data -------------------------------------------------------------


@dataclass(frozen=True)
class InitialData:
    """Initial densities on [-s0, s0], zero at both ends.

    The cosine profile is stored by its amplitudes so instances pickle; custom
    profiles pass `u0`/`v0` callables instead.
    """

    s0: float
    u_amp: float | None = None
    v_amp: float | None = None
    u0: ScalarMap | None = field(default=None, compare=False, repr=False)
    v0: ScalarMap | None = field(default=None, compare=False, repr=False)

    @classmethod
    def cosine(cls, s0: float, u_amp: float, v_amp: float) -> InitialData:
        """amp * cos(pi x / (2 s0)); the profile used by every experiment."""
        return cls(s0=s0, u_amp=u_amp, v_amp=v_amp)

    @classmethod
    def custom(cls, s0: float, u0: ScalarMap, v0: ScalarMap) -> InitialData:
        return cls(s0=s0, u0=u0, v0=v0)

    def profiles(self, x: npt.ArrayLike) -> tuple[FloatArray, FloatArray]:
        """Raw (u0, v0) at `x`, without clipping."""
        xs = as_array(x)
        if self.u0 is not None and self.v0 is not None:
            return as_array(self.u0(xs)), as_array(self.v0(xs))
        shape = np.cos(math.pi / (2.0 * self.s0) * xs)
        return (self.u_amp or 0.0) * shape, (self.v_amp or 0.0) * shape

    def sample(self, x: npt.ArrayLike) -> tuple[FloatArray, FloatArray]:
        """Evaluate (u0, v0) at `x`, clipped to zero outside (-s0, s0)."""
        xs = as_array(x)
        inside = np.abs(xs) < self.s0
        u_raw, v_raw = self.profiles(xs)
        u = np.where(inside, u_raw, 0.0)
        v = np.where(inside, v_raw, 0.0)
        return np.maximum(u, 0.0), np.maximum(v, 0.0)

    def sup(self, samples: int = 2049) -> tuple[float, float]:
        """(sup u0, sup v0); exact for the cosine profile."""
        if self.u_amp is not None and self.v_amp is not None:
            return max(self.u_amp, 0.0), max(self.v_amp, 0.0)
        u, v = self.sample(np.linspace(-self.s0, self.s0, samples))
        return float(u.max()), float(v.max())


# --- Assumption validation ----------------------------------------------------


@dataclass(frozen=True)
class AssumptionCheck:
    name: str
    passed: bool
    detail: str = ""
    first_violation: float | None = None


@dataclass(frozen=True)
class ValidationReport:
    checks: tuple[AssumptionCheck, ...]

    @property
    def ok(self) -> bool:
        return all(check.passed for check in self.checks)

    def failures(self) -> list[AssumptionCheck]:
        return [check for check in self.checks if not check.passed]

    def lines(self) -> list[str]:
        out: list[str] = []
        for check in self.checks:
            mark = "pass" if check.passed else "FAIL"
            where = (
                f" (first violation at u={check.first_violation:.6g})"
                if check.first_violation is not None
                else ""
            )
            detail = f": {check.detail}" if check.detail else ""
            out.append(f"[{mark}] {check.name}{detail}{where}")
        return out


def _first_bad(points: FloatArray, bad: npt.NDArray[np.bool_]) -> float | None:
    idx = np.flatnonzero(bad)
    return float(points[idx[0]]) if idx.size else None


def _monotone_check(
    name: str, points: FloatArray, values: FloatArray, *, increasing: bool
) -> AssumptionCheck:
    diffs = np.diff(values)
    bad = diffs <= 0 if increasing else diffs >= 0
    first = _first_bad(points[1:], bad)
    return AssumptionCheck(name, first is None, first_violation=first)


def _sample_grid(params: ModelParams, samples: int) -> FloatArray:
    scale = params.growth.characteristic_density()
    return np.geomspace(
        ASSUMPTION_SAMPLE_LOW * scale, ASSUMPTION_SAMPLE_HIGH * scale, samples
    )


def _growth_checks(params: ModelParams, u: FloatArray) -> list[AssumptionCheck]:
    f = params.growth
    checks: list[AssumptionCheck] = []
    f0 = float(f(0.0))
    checks.append(AssumptionCheck("(F) f(0) = 0", f0 == 0.0, f"f(0)={f0!r}"))
    values = f(u)
    checks.append(_monotone_check("(F) f' > 0", u, values, increasing=True))
    checks.append(
        _monotone_check(
            "(F) f(u)/u strictly decreasing", u, values / u, increasing=False
        )
    )
    threshold = params.a11 * params.a22 / params.a12 if params.a12 > 0 else math.inf
    limit = f.limit_ratio(float(u[-1]))
    checks.append(
        AssumptionCheck(
            "(F) lim f(u)/u < a11*a22/a12",
            limit < threshold,
            f"limit={limit:.6g}, bound={threshold:.6g}",
        )
    )
    return checks


def _impulse_checks(params: ModelParams, u: FloatArray) -> list[AssumptionCheck]:
    h = params.impulse
    checks: list[AssumptionCheck] = []
    h0 = float(h(0.0))
    checks.append(AssumptionCheck("(H) H(0) = 0", h0 == 0.0, f"H(0)={h0!r}"))
    values = h(u)
    checks.append(_monotone_check("(H) H' > 0", u, values, increasing=True))
    ratio = values / u
    if h.constant_ratio:
        spread = float(np.max(np.abs(ratio - ratio[0])))
        checks.append(
            AssumptionCheck(
                "(H) H(u)/u strictly decreasing",
                spread <= 1e-12 * max(1.0, abs(float(ratio[0]))),
                "constant ratio (boundary case)",
            )
        )
    else:
        checks.append(
            _monotone_check(
                "(H) H(u)/u strictly decreasing", u, ratio, increasing=False
            )
        )
    bad = (ratio <= 0) | (ratio > 1.0 + 1e-15)
    first = _first_bad(u, bad)
    checks.append(
        AssumptionCheck("(H) 0 < H(u)/u <= 1", first is None, first_violation=first)
    )
    return checks


def validate_assumptions(
    params: ModelParams, samples: int = DEFAULT_ASSUMPTION_SAMPLES
) -> ValidationReport:
    """Check structural positivity, (F) and (H) on a log-spaced sample grid.

    Violations are reported, never raised.

    Args:
        params: Parameters to check.
        samples: Number of log-spaced sample points (at least 2).

    Returns:
        A report with one entry per assumption.
    """
    if samples < 2:  # noqa: PLR2004
        msg = f"samples must be >= 2 (got {samples})"
        raise ParameterError(msg)
    checks: list[AssumptionCheck] = [
        AssumptionCheck("structure", False, problem)
        for problem in structural_violations(params)
    ]
    if not checks:
        checks.append(AssumptionCheck("structure", True))
    u = _sample_grid(params, samples)
    with np.errstate(all="ignore"):
        checks.extend(_growth_checks(params, u))
        checks.extend(_impulse_checks(params, u))
    report = ValidationReport(tuple(checks))
    logger = get_app_logger()
    for line in report.lines():
        logger.debug(line)
    return report


def validate_initial_data(init: InitialData, samples: int = 513) -> ValidationReport:
    """u0, v0 vanish at +-s0 and are positive inside (sampled)."""
    xs = np.linspace(-init.s0, init.s0, samples)
    u, v = init.profiles(xs)
    edge_tol = 1e-12 * max(1.0, float(np.max(np.abs(u))), float(np.max(np.abs(v))))
    checks = (
        AssumptionCheck(
            "u0(+-s0) = 0 and v0(+-s0) = 0",
            bool(
                abs(u[0]) <= edge_tol
                and abs(u[-1]) <= edge_tol
                and abs(v[0]) <= edge_tol
                and abs(v[-1]) <= edge_tol
            ),
        ),
        AssumptionCheck(
            "u0 > 0 inside",
            bool(np.all(u[1:-1] > 0)),
            first_violation=_first_bad(xs[1:-1], u[1:-1] <= 0),
        ),
        AssumptionCheck(
            "v0 > 0 inside",
            bool(np.all(v[1:-1] > 0)),
            first_violation=_first_bad(xs[1:-1], v[1:-1] <= 0),
        ),
    )
    return ValidationReport(checks)


# --- A-priori bounds ----------------------------------------------------------


@dataclass(frozen=True)
class AprioriBounds:
    u_star: float
    C2: float
    C3: float

    def residuals(self, params: ModelParams) -> tuple[float, float]:
        """(-a11*C2 + a12*C3, -a22*C3 + f(C2)); both must be <= 0."""
        first = -params.a11 * self.C2 + params.a12 * self.C3
        second = -params.a22 * self.C3 + float(params.growth(self.C2))
        return first, second


def beverton_holt_u_star(params: ModelParams) -> float:
    """Closed form a12*m/(a11*a22) - a, floored at 0."""
    g = params.growth
    return max(params.a12 * g.m / (params.a11 * params.a22) - g.a, 0.0)


def compute_u_star(params: ModelParams) -> float:
    """Positive root of f(u)/u = a11*a22/a12, or 0 when a12*f'(0) <= a11*a22.

    Beverton-Holt growth takes the closed form; other growth laws are bracketed
    and solved with brentq.
    """
    target = params.a11 * params.a22 / params.a12
    if params.a12 * params.f_prime0 / (params.a11 * params.a22) <= 1.0:
        return 0.0
    f = params.growth
    if f.kind == "beverton-holt":
        return beverton_holt_u_star(params)

    def gap(u: float) -> float:
        return float(f(u)) / u - target

    lo = ASSUMPTION_SAMPLE_LOW * f.characteristic_density()
    hi = 10.0 * f.characteristic_density()
    while gap(hi) > 0:
        hi *= 10.0
        if hi > ASSUMPTION_SAMPLE_HIGH * 1e6:
            msg = "no root of f(u)/u = a11*a22/a12; growth function inconsistent"
            raise SolverError(
                msg, diagnostics={"target": target, "limit": f.limit_ratio(hi)}
            )
    if gap(lo) <= 0:
        msg = "f(u)/u falls below a11*a22/a12 near zero despite f'(0) above it"
        raise SolverError(msg, diagnostics={"lo": lo, "gap": gap(lo)})
    return float(brentq(gap, lo, hi, xtol=ROOT_TOL, rtol=4 * np.finfo(float).eps))


def compute_bounds(params: ModelParams, init: InitialData) -> AprioriBounds:
    """The a-priori density bounds (C2, C3).

    Returns:
        u_star from `compute_u_star`, C2 = max{u_star, sup u0, a12/a11 sup v0}
        and C3 = max{sup v0, f(C2)/a22}.
    """
    u_star = compute_u_star(params)
    sup_u, sup_v = init.sup()
    c2 = max(u_star, sup_u, params.a12 / params.a11 * sup_v)
    c3 = max(sup_v, float(params.growth(c2)) / params.a22)
    bounds = AprioriBounds(u_star=u_star, C2=c2, C3=c3)
    get_app_logger().debug("bounds: u*=%.10g C2=%.10g C3=%.10g", u_star, c2, c3)
    return bounds
