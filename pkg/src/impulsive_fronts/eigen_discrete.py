# src/impulsive_fronts/eigen_discrete.py
"""Discrete oracle for lambda1: power iteration on the one-period monodromy map.

The linearized period map (impulse . wet . dry) is time-stepped on N interior
nodes with the second-order central Laplacian. Dry season: phi decays by
exp(-delta1 tau); psi takes Crank-Nicolson diffusion steps, each followed by
its exact decay. Wet season: Strang splitting of the cross coupling
[[0, a12], [f'(0), 0]] (explicit, second order) around a Crank-Nicolson step
of both diffusions with the exact self-decay. The impulse multiplies phi last.

The map preserves positivity whenever both Crank-Nicolson steps are monotone,
that is dt * d / h**2 <= 1; the coupling half-step has non-negative
coefficients for any dt.

lambda1 = -ln(rho) / T with rho the dominant eigenvalue of the map.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .constants import (
    DEFAULT_EIGEN_MAX_ITER,
    DEFAULT_EIGEN_N,
    DEFAULT_EIGEN_STEPS,
    DEFAULT_EIGEN_TOL,
    MIN_EIGEN_N,
)
from .diffusion import BlockDiffusion, FixedDiffusion, sine_mode
from .errors import ConvergenceError, ParameterError
from .logs import get_app_logger
from .model import FloatArray, ModelParams, require_structural


@dataclass(frozen=True)
class MonodromyOperator:
    """One-period linear map on paired grid functions (phi, psi) at t = 0+."""

    params: ModelParams
    l1: float
    l2: float
    n: int
    dt: float
    wet_steps: int
    dry_dt: float
    dry_steps: int
    _dry: FixedDiffusion = field(init=False, repr=False, compare=False)
    _wet: BlockDiffusion = field(init=False, repr=False, compare=False)
    _wet_decay: FloatArray = field(init=False, repr=False, compare=False)

    def __post_init__(self) -> None:
        p = self.params
        h2 = self.h**2
        dry = FixedDiffusion(self.n, p.d2 / h2, 0.0, self.dry_dt)
        wet = BlockDiffusion(self.n, (p.d1 / h2, p.d2 / h2), self.dt)
        decay = np.repeat(
            [math.exp(-p.a11 * self.dt), math.exp(-p.a22 * self.dt)], self.n
        )
        object.__setattr__(self, "_dry", dry)
        object.__setattr__(self, "_wet", wet)
        object.__setattr__(self, "_wet_decay", decay)

    @property
    def length(self) -> float:
        return self.l2 - self.l1

    @property
    def h(self) -> float:
        return self.length / (self.n + 1)

    @property
    def monotone(self) -> bool:
        """Whether every diffusion sub-step keeps non-negative data non-negative."""
        p = self.params
        dry_ok = 0.5 * self.dry_dt * 2.0 * p.d2 / self.h**2 <= 1.0
        return dry_ok and self._wet.monotone

    def nodes(self) -> FloatArray:
        return self.l1 + self.h * np.arange(1, self.n + 1, dtype=np.float64)

    def _couple(self, x: FloatArray, dt: float) -> FloatArray:
        """Second-order Taylor step of the cross coupling on stacked (phi, psi)."""
        a12 = self.params.a12
        fp = self.params.f_prime0
        diag = 1.0 + 0.5 * dt * dt * a12 * fp
        phi, psi = x[: self.n], x[self.n :]
        return np.concatenate([diag * phi + dt * a12 * psi, diag * psi + dt * fp * phi])

    def action(
        self, phi: FloatArray, psi: FloatArray
    ) -> tuple[FloatArray, FloatArray]:
        """Image of (phi, psi) after impulse . wet . dry."""
        p = self.params
        phi = phi * math.exp(-p.delta1 * p.tau)
        psi_decay = math.exp(-p.delta2 * self.dry_dt)
        for _ in range(self.dry_steps):
            psi = self._dry.step(psi) * psi_decay
        x = np.concatenate([phi, psi])
        half = 0.5 * self.dt
        for _ in range(self.wet_steps):
            x = self._couple(x, half)
            x = self._wet.step(x) * self._wet_decay
            x = self._couple(x, half)
        return p.h_prime0 * x[: self.n], x[self.n :].copy()


def build_monodromy(
    params: ModelParams,
    l1: float,
    l2: float,
    n: int = DEFAULT_EIGEN_N,
    dt: float | None = None,
) -> MonodromyOperator:
    """Assemble the discrete period map on (l1, l2).

    Args:
        params: Model parameters (a12 = f'(0) = 0 is accepted).
        l1: Left end of the interval.
        l2: Right end of the interval.
        n: Number of interior nodes, at least 16.
        dt: Nominal time step; rounded per season so an integer number of
            steps covers tau and T - tau. Defaults to T / 2000.

    Raises:
        ParameterError: Bad interval or grid, or dt * max(a12, f'(0)) >= 1.
    """
    require_structural(params, allow_uncoupled=True)
    if not l1 < l2:
        msg = f"need l1 < l2 (got l1={l1!r}, l2={l2!r})"
        raise ParameterError(msg)
    if n < MIN_EIGEN_N:
        msg = f"N must be >= {MIN_EIGEN_N} (got {n})"
        raise ParameterError(msg)
    nominal = params.T / DEFAULT_EIGEN_STEPS if dt is None else dt
    if not nominal > 0:
        msg = f"dt must be positive (got {nominal!r})"
        raise ParameterError(msg)
    wet_steps = max(1, round(params.wet_length / nominal))
    dt_wet = params.wet_length / wet_steps
    coupling = dt_wet * max(params.a12, params.f_prime0)
    if coupling >= 1.0:
        msg = (
            f"dt={dt_wet:.6g} too large for the coupling: "
            f"dt * max(a12, f'(0)) = {coupling:.6g} >= 1"
        )
        raise ParameterError(msg)
    dry_steps = max(1, round(params.tau / nominal))

    op = MonodromyOperator(
        params=params,
        l1=l1,
        l2=l2,
        n=n,
        dt=dt_wet,
        wet_steps=wet_steps,
        dry_dt=params.tau / dry_steps,
        dry_steps=dry_steps,
    )
    logger = get_app_logger()
    logger.debug(
        "monodromy: L=%.6g N=%d wet_steps=%d dry_steps=%d dt=%.6g",
        op.length,
        n,
        wet_steps,
        dry_steps,
        dt_wet,
    )
    if not op.monotone:
        logger.detail(
            "monodromy: Crank-Nicolson not monotone at dt*d/h^2=%.3g;"
            " positivity is not guaranteed",
            op.dt * max(params.d1, params.d2) / op.h**2,
        )
    return op


@dataclass(frozen=True)
class PowerResult:
    rho: float
    lambda1: float
    iterations: int
    phi: FloatArray = field(repr=False, compare=False)
    psi: FloatArray = field(repr=False, compare=False)


def power_iterate(
    op: MonodromyOperator,
    tol: float = DEFAULT_EIGEN_TOL,
    max_iter: int = DEFAULT_EIGEN_MAX_ITER,
    start: tuple[FloatArray, FloatArray] | None = None,
) -> PowerResult:
    """Dominant eigenpair of `op` from a positive start vector.

    Raises:
        ParameterError: tol is not positive.
        ConvergenceError: Successive quotients still differ after max_iter.
    """
    if not tol > 0:
        msg = f"tol must be positive (got {tol!r})"
        raise ParameterError(msg)
    if start is None:
        mode = sine_mode(op.n)
        phi, psi = mode.copy(), mode.copy()
    else:
        phi, psi = start
    scale = math.sqrt(float(phi @ phi + psi @ psi))
    phi, psi = phi / scale, psi / scale
    logger = get_app_logger()
    previous = math.nan
    quotient = math.nan
    for iteration in range(1, max_iter + 1):
        phi, psi = op.action(phi, psi)
        quotient = math.sqrt(float(phi @ phi + psi @ psi))
        phi, psi = phi / quotient, psi / quotient
        logger.trace("power iteration %d: rho=%.15g", iteration, quotient)
        if abs(quotient - previous) < tol * quotient:
            return PowerResult(
                rho=quotient,
                lambda1=-math.log(quotient) / op.params.T,
                iterations=iteration,
                phi=phi,
                psi=psi,
            )
        previous = quotient
    msg = "power iteration did not converge"
    raise ConvergenceError(
        msg,
        diagnostics={"max_iter": max_iter, "last": quotient, "previous": previous},
    )


def lambda1_discrete(
    op: MonodromyOperator,
    tol: float = DEFAULT_EIGEN_TOL,
    max_iter: int = DEFAULT_EIGEN_MAX_ITER,
) -> float:
    """-ln(rho) / T for the monodromy operator."""
    return power_iterate(op, tol, max_iter).lambda1


def refined_grid(n: int) -> int:
    """Node count whose spacing is exactly half that of `n` nodes."""
    return 2 * n + 1


def lambda1_richardson(
    params: ModelParams,
    l1: float,
    l2: float,
    n: int = DEFAULT_EIGEN_N,
    dt: float | None = None,
) -> float:
    """One Richardson step (4 lambda(h/2) - lambda(h)) / 3 on the grid spacing."""
    coarse = lambda1_discrete(build_monodromy(params, l1, l2, n, dt))
    fine = lambda1_discrete(build_monodromy(params, l1, l2, refined_grid(n), dt))
    return (4.0 * fine - coarse) / 3.0
