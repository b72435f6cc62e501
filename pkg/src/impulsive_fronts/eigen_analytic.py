# src/impulsive_fronts/eigen_analytic.py
"""Semi-analytic principal eigenvalue of the periodic impulsive linearization.

Separating variables with the principal Dirichlet mode reduces the spatial
problem to kappa1 = (pi / L)**2 and the temporal problem to a two-season,
2x2 periodic system with wrap condition Phi(0) = H'(0) Phi(T), Psi(0) = Psi(T).
On the wet season the profile is a mix of the two exponential eigen-modes of

    A = [[-d1 kappa1 - a11, a12], [f'(0), -d2 kappa1 - a22]]

weighted by a mixing coordinate k. Matching the dry-season exponentials at tau
and the wrap condition at T gives two rational equations y = y1(k), y = y2(k)
in the multiplier y = exp(lambda1 T). On the positivity window
k in (b22/b21, b11/b12) y1 falls strictly to zero and y2 rises strictly from
zero, so the positive eigenpair is the unique crossing.

Each b row is divided by its dominant exponential and k is measured at the end
of the dry season, so the only exponential left in the two equations is
rho = exp((c2 - c1)(T - tau)) in (0, 1]. theta1, theta2 and y enter through
their logarithms, which keeps short intervals (large kappa1) in float range.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace
from enum import Enum

import numpy as np
from scipy.linalg import expm
from scipy.optimize import brentq
from scipy.special import expit

from .constants import (
    CASE_REL_TOL,
    CRITICAL_BRACKET_STEPS,
    MIX_BRACKET_STEPS,
    MIX_RESIDUAL_TOL,
    ROOT_TOL,
)
from .errors import EigenSolveError, ParameterError
from .logs import get_app_logger
from .model import FloatArray, ModelParams, require_structural


class EigenCase(str, Enum):
    """Which side of the equal-ratio line the coefficients fall on."""

    EQUAL_RATIO = "EqualRatio"
    GREATER = "Greater"
    LESS = "Less"


@dataclass(frozen=True)
class SpectralCoeffs:
    """Derived algebra for one (params, kappa1) pair.

    The b's act on k measured at tau: b11..b14 reduce to a12, alpha, a12 and
    alpha rho, b21..b24 to f'(0), -alpha, f'(0) rho and -alpha. b22 and b24 are
    negative; b14 and b23 underflow to zero once rho does.
    """

    kappa1: float
    c1: float
    c2: float
    alpha: float
    b11: float
    b12: float
    b13: float
    b14: float
    b21: float
    b22: float
    b23: float
    b24: float
    log_theta1: float
    log_theta2: float
    log_rho: float
    wet_length: float

    @property
    def beta(self) -> float:
        return -self.alpha

    @property
    def theta1(self) -> float:
        return math.exp(self.log_theta1)

    @property
    def theta2(self) -> float:
        return math.exp(self.log_theta2)

    @property
    def k_window(self) -> tuple[float, float]:
        """Open interval of k giving a strictly positive wet-season profile."""
        return self.b22 / self.b21, self.b11 / self.b12

    @property
    def log_one_minus_rho(self) -> float:
        if self.log_rho == 0.0:
            return -math.inf
        return math.log(-math.expm1(self.log_rho))

    def mix_coordinate(self, sigma: float) -> float:
        """k at logit position `sigma` inside the positivity window."""
        lo, hi = self.k_window
        if sigma < 0:
            return lo + (hi - lo) * float(expit(sigma))
        return hi - (hi - lo) * float(expit(-sigma))

    def log_y1(self, sigma: float) -> float:
        """ln y demanded by the Phi wrap condition at logit position `sigma`."""
        lo, hi = self.k_window
        log_to_hi = math.log(hi - lo) - float(np.logaddexp(0.0, sigma))
        numer = math.log(self.b12) + log_to_hi
        denom = float(
            np.logaddexp(
                math.log(self.b11) + self.log_one_minus_rho,
                math.log(self.alpha) + self.log_rho + log_to_hi,
            )
        )
        return -self.c1 * self.wet_length + numer - denom - self.log_theta1

    def log_y2(self, sigma: float) -> float:
        """ln y demanded by the Psi periodicity condition at `sigma`."""
        lo, hi = self.k_window
        log_from_lo = math.log(hi - lo) - float(np.logaddexp(0.0, -sigma))
        numer = math.log(self.b21) + log_from_lo
        denom = float(
            np.logaddexp(
                math.log(self.alpha) + self.log_one_minus_rho,
                math.log(self.b21) + self.log_rho + log_from_lo,
            )
        )
        return -self.c1 * self.wet_length + numer - denom - self.log_theta2


@dataclass(frozen=True)
class EigenSolution:
    lambda1: float
    k: float
    case_id: EigenCase
    coeffs: SpectralCoeffs
    params: ModelParams
    length: float | None = None

    @property
    def y(self) -> float:
        """Multiplier exp(lambda1 T); inf past float range."""
        try:
            return math.exp(self.lambda1 * self.params.T)
        except OverflowError:
            return math.inf

    def profile(self, t: float | FloatArray) -> tuple[FloatArray, FloatArray]:
        """(Phi, Psi) at time(s) `t` in [0, T]."""
        return eigen_profile(self, self.params, self.coeffs, t)


# --- Spatial factor -----------------------------------------------------------


def kappa1(length: float) -> float:
    """Principal Dirichlet eigenvalue (pi / L)**2 of -d2/dx2 on an interval."""
    if not length > 0 or not math.isfinite(length):
        msg = f"interval length must be positive and finite (got {length!r})"
        raise ParameterError(msg)
    return (math.pi / length) ** 2


# --- Coefficient algebra ------------------------------------------------------


def spectral_coeffs(params: ModelParams, kappa1: float) -> SpectralCoeffs:
    """c1, c2 and the scaled b/theta coefficients for `kappa1`."""
    if kappa1 < 0:
        msg = f"kappa1 must be >= 0 (got {kappa1!r})"
        raise ParameterError(msg)
    p = params
    fp = p.f_prime0
    x = p.a22 + (p.d2 - p.d1) * kappa1 - p.a11
    coupling = 4.0 * p.a12 * fp
    disc = math.sqrt(x * x + coupling)
    trace = -(p.d1 + p.d2) * kappa1 - p.a11 - p.a22
    c1 = (trace + disc) / 2.0
    c2 = (trace - disc) / 2.0
    # alpha = (disc - x) / 2, written without cancellation for x > 0
    alpha = (disc - x) / 2.0 if x <= 0 else coupling / (2.0 * (disc + x))
    log_rho = (c2 - c1) * p.wet_length
    rho = math.exp(log_rho)
    return SpectralCoeffs(
        kappa1=kappa1,
        c1=c1,
        c2=c2,
        alpha=alpha,
        b11=p.a12,
        b12=alpha,
        b13=p.a12,
        b14=alpha * rho,
        b21=fp,
        b22=-alpha,
        b23=fp * rho,
        b24=-alpha,
        log_theta1=math.log(p.h_prime0) - p.delta1 * p.tau,
        log_theta2=-(p.delta2 + p.d2 * kappa1) * p.tau,
        log_rho=log_rho,
        wet_length=p.wet_length,
    )


def classify_case(coeffs: SpectralCoeffs, rel_tol: float = CASE_REL_TOL) -> EigenCase:
    """Compare b12/(theta1 b14) with b21/(theta2 b23).

    Both ratios are 1/rho over theta1 and theta2 respectively, so the relative
    gap is ln theta2 - ln theta1 to first order.
    """
    diff = coeffs.log_theta2 - coeffs.log_theta1
    if abs(diff) <= rel_tol:
        return EigenCase.EQUAL_RATIO
    return EigenCase.GREATER if diff > 0 else EigenCase.LESS


def equal_ratio_lambda1(params: ModelParams, coeffs: SpectralCoeffs) -> float:
    """Closed form [c1 (tau - T) + (delta2 + d2 kappa1) tau] / T."""
    p = params
    return (
        coeffs.c1 * (p.tau - p.T) + (p.delta2 + p.d2 * coeffs.kappa1) * p.tau
    ) / p.T


# --- Solving for (k, y) -------------------------------------------------------


def _bracket_logit(coeffs: SpectralCoeffs) -> tuple[float, float]:
    """Widen [lo, hi] in the window logit until ln y1 - ln y2 changes sign."""
    lo, hi = -1.0, 1.0
    gap_lo = gap_hi = math.nan
    for _ in range(MIX_BRACKET_STEPS):
        gap_lo = coeffs.log_y1(lo) - coeffs.log_y2(lo)
        gap_hi = coeffs.log_y1(hi) - coeffs.log_y2(hi)
        if gap_lo >= 0 >= gap_hi:
            return lo, hi
        if not gap_lo >= 0:
            lo *= 2.0
        if not gap_hi <= 0:
            hi *= 2.0
    msg = "no sign change of ln y1 - ln y2 on the positivity window"
    raise EigenSolveError(
        msg,
        diagnostics={
            "window": coeffs.k_window,
            "logit": (lo, hi),
            "gap_left": gap_lo,
            "gap_right": gap_hi,
        },
    )


def solve_ky(coeffs: SpectralCoeffs, params: ModelParams) -> EigenSolution:
    """Principal eigenpair from the two rational multiplier equations.

    The root is searched over the logit of the position inside the positivity
    window, so every accepted k lies strictly inside it and the profile is
    positive on [0, T].

    Raises:
        EigenSolveError: The maps do not cross, or disagree at the crossing.
    """
    case = classify_case(coeffs)
    if case is EigenCase.EQUAL_RATIO:
        lam = equal_ratio_lambda1(params, coeffs)
        sol = EigenSolution(lam, 0.0, case, coeffs, params)
    else:
        lo, hi = _bracket_logit(coeffs)

        def gap(sigma: float) -> float:
            return coeffs.log_y1(sigma) - coeffs.log_y2(sigma)

        sigma = float(
            brentq(gap, lo, hi, xtol=ROOT_TOL, rtol=4 * np.finfo(float).eps)
        )
        log_y = coeffs.log_y1(sigma)
        residual = abs(log_y - coeffs.log_y2(sigma))
        if not residual <= MIX_RESIDUAL_TOL * max(1.0, abs(log_y)):
            msg = "multiplier maps disagree at the crossing"
            raise EigenSolveError(
                msg, diagnostics={"sigma": sigma, "ln_y": log_y, "residual": residual}
            )
        k = coeffs.mix_coordinate(sigma)
        sol = EigenSolution(log_y / params.T, k, case, coeffs, params)
    get_app_logger().trace(
        "solve_ky: case=%s k=%.12g lambda1=%.12g",
        case.value,
        sol.k,
        sol.lambda1,
    )
    return sol


def _solve(params: ModelParams, length: float | None) -> EigenSolution:
    k1 = 0.0
    try:
        k1 = 0.0 if length is None else kappa1(length)
        return solve_ky(spectral_coeffs(params, k1), params)
    except ParameterError:
        raise
    except (ArithmeticError, ValueError) as exc:
        msg = f"eigen solve failed: {exc}"
        raise EigenSolveError(
            msg, diagnostics={"length": length, "kappa1": k1}
        ) from exc


# --- Public entry points ------------------------------------------------------


def lambda1_interval(params: ModelParams, l1: float, l2: float) -> EigenSolution:
    """Principal eigenvalue on the fixed interval (l1, l2).

    Raises:
        ParameterError: l1 >= l2 or invalid parameters.
        EigenSolveError: No eigenpair, including arithmetic failures.
    """
    if not l1 < l2:
        msg = f"need l1 < l2 (got l1={l1!r}, l2={l2!r})"
        raise ParameterError(msg)
    require_structural(params)
    length = l2 - l1
    return replace(_solve(params, length), length=length)


def lambda1_half_width(params: ModelParams, half_width: float) -> float:
    """lambda1 on (-l, l)."""
    return lambda1_interval(params, -half_width, half_width).lambda1


def nu1(params: ModelParams) -> EigenSolution:
    """Limit eigenvalue of the spatially homogeneous problem (kappa1 = 0)."""
    require_structural(params)
    return _solve(params, None)


def eigen_profile(
    sol: EigenSolution,
    params: ModelParams,
    coeffs: SpectralCoeffs,
    t: float | FloatArray,
) -> tuple[FloatArray, FloatArray]:
    """Time profile (Phi, Psi) of the eigenfunction.

    The wet season (tau, T] mixes the two modes with weight k; the dry season
    [0, tau] is the pure exponential ending continuously at tau. Phi(0) is the
    post-impulse value. The profile is normalised at tau, where it equals
    (a12 - alpha k, f'(0) k + alpha) / (a12 f'(0) + alpha**2).

    Raises:
        ParameterError: Some `t` lies outside [0, T].
    """
    ts = np.asarray(t, dtype=np.float64)
    if np.any(ts < 0) or np.any(ts > params.T):
        msg = f"t must lie in [0, T={params.T!r}]"
        raise ParameterError(msg)
    lam, k = sol.lambda1, sol.k
    a12, fp, alpha = params.a12, params.f_prime0, coeffs.alpha
    norm = a12 * fp + alpha * alpha
    mu1 = lam + coeffs.c1
    mu2 = lam + coeffs.c2
    since = ts - params.tau
    with np.errstate(over="ignore", under="ignore"):
        wet = np.maximum(since, 0.0)
        e1 = np.exp(mu1 * wet)
        e2 = np.exp(mu2 * wet)
        wet_phi = (a12 * e1 - alpha * k * e2) / norm
        wet_psi = (fp * k * e2 + alpha * e1) / norm
        dry = np.minimum(since, 0.0)
        dry_phi = (a12 - alpha * k) / norm * np.exp((lam - params.delta1) * dry)
        dry_psi = (fp * k + alpha) / norm * np.exp(
            (lam - params.delta2 - params.d2 * coeffs.kappa1) * dry
        )
    in_dry = since <= 0
    return np.where(in_dry, dry_phi, wet_phi), np.where(in_dry, dry_psi, wet_psi)


# --- Cross-checks and derived quantities --------------------------------------


def _wet_matrix(params: ModelParams, kappa1: float) -> FloatArray:
    p = params
    return np.array(
        [
            [-p.d1 * kappa1 - p.a11, p.a12],
            [p.f_prime0, -p.d2 * kappa1 - p.a22],
        ]
    )


def _log_dry_factors(params: ModelParams, kappa1: float) -> FloatArray:
    p = params
    return np.array([-p.delta1 * p.tau, -(p.delta2 + p.d2 * kappa1) * p.tau])


def period_matrix(params: ModelParams, kappa1: float) -> FloatArray:
    """2x2 positive period map of the kappa1-mode: impulse . wet . dry."""
    p = params
    dry = np.diag(np.exp(_log_dry_factors(p, kappa1)))
    impulse = np.diag([p.h_prime0, 1.0])
    wet = expm(_wet_matrix(p, kappa1) * p.wet_length)
    return np.asarray(impulse @ wet @ dry, dtype=np.float64)


def lambda1_floquet(params: ModelParams, kappa1: float) -> float:
    """-ln(rho)/T from the Perron root of `period_matrix`.

    The wet block is shifted by its top eigenvalue and the dry block by its
    larger factor before multiplying; both shifts are added back to ln rho.
    """
    p = params
    a = _wet_matrix(p, kappa1)
    top = float(np.max(np.linalg.eigvals(a).real))
    log_dry = _log_dry_factors(p, kappa1)
    dry_shift = float(log_dry.max())
    scaled = (
        np.diag([p.h_prime0, 1.0])
        @ expm((a - top * np.eye(2)) * p.wet_length)
        @ np.diag(np.exp(log_dry - dry_shift))
    )
    rho = float(np.max(np.abs(np.linalg.eigvals(scaled))))
    return -(math.log(rho) + top * p.wet_length + dry_shift) / p.T


def critical_half_width(
    params: ModelParams, lo: float | None = None, hi: float | None = None
) -> float | None:
    """Half-width l* with lambda1(-l*, l*) = 0, or None when nu1 >= 0.

    lambda1 falls strictly in l from +infinity toward nu1, so a root exists
    exactly when nu1 < 0. The bracket starts at [lo, hi] (both default to s0);
    lo is halved until lambda1 >= 0 and hi doubled until lambda1 <= 0.

    Raises:
        EigenSolveError: No sign change within the allowed halvings/doublings.
    """
    if nu1(params).lambda1 >= 0:
        return None

    def lam(half: float) -> float:
        return lambda1_half_width(params, half)

    lo = params.s0 if lo is None else lo
    hi = max(lo, params.s0 if hi is None else hi)
    for _ in range(CRITICAL_BRACKET_STEPS):
        if lam(lo) >= 0:
            break
        hi, lo = lo, lo / 2.0
    else:
        msg = "could not bracket the critical half-width from below"
        raise EigenSolveError(msg, diagnostics={"lo": lo})
    for _ in range(CRITICAL_BRACKET_STEPS):
        if lam(hi) <= 0:
            break
        hi *= 2.0
    else:
        msg = "could not bracket the critical half-width from above"
        raise EigenSolveError(msg, diagnostics={"hi": hi})
    critical = float(brentq(lam, lo, hi, xtol=1e-10, rtol=1e-12))
    get_app_logger().detail("critical half-width l* = %.6g", critical)
    return critical


def tau_monotone_hypothesis(params: ModelParams, half_width: float) -> bool:
    """Sufficient condition for lambda1 to increase with tau on (-l, l)."""
    k1 = math.pi**2 / (4.0 * half_width**2)
    return params.delta1 >= params.a11 + params.d1 * k1 and params.delta2 >= params.a22
