# src/impulsive_fronts/periodic_state.py
"""Periodic steady states of the fixed-interval problem and of its ODE limit.

`monotone_iterate` runs the upper/lower-solution iteration on (l1, l2): each
sweep solves one period of the four linear problems

    dry:  w_t + g w            = (g - delta1) w_prev
          z_t - d2 z_xx + g z  = (g - delta2) z_prev
    wet:  w_t - d1 w_xx + g w  = (g - a11) w_prev + a12 z_prev
          z_t - d2 z_xx + g z  = (g - a22) z_prev + f(w_prev)

with g = delta1 + delta2 + a11 + a22, closed by w(0+) = H(w_prev(T)) and
z(0) = z_prev(T). Sweeps use backward Euler so every sweep is order preserving
on the grid, and the sequence is monotone from either seed.

`periodic_ode_orbit` integrates the spatially homogeneous system period by
period until it settles on the periodic orbit (W, Z).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Literal

import numpy as np
from scipy.integrate import solve_ivp

from .constants import (
    DEFAULT_ORBIT_MAX_SWEEPS,
    DEFAULT_ORBIT_N,
    DEFAULT_ORBIT_STEPS,
    DEFAULT_ORBIT_TOL,
    ZERO_ORBIT_TOL,
)
from .diffusion import BACKWARD_EULER, FixedDiffusion
from .eigen_analytic import lambda1_interval, nu1
from .errors import ConvergenceError, ParameterError
from .logs import get_app_logger
from .model import (
    FloatArray,
    InitialData,
    ModelParams,
    compute_bounds,
    require_structural,
)


Seed = Literal["upper", "lower"]

# Sweeps allowed for the lower seed to become a discrete subsolution.
MAX_WARMUP_SWEEPS = 200
LOWER_SEED_SCALE = 1e-3


@dataclass(frozen=True)
class OrbitConfig:
    n: int = DEFAULT_ORBIT_N
    steps: int = DEFAULT_ORBIT_STEPS
    tol: float = DEFAULT_ORBIT_TOL
    max_sweeps: int = DEFAULT_ORBIT_MAX_SWEEPS

    def __post_init__(self) -> None:
        if self.n < 4 or self.steps < 4:  # noqa: PLR2004
            msg = f"orbit grid too small (N={self.n}, steps={self.steps})"
            raise ParameterError(msg)
        if not self.tol > 0 or self.max_sweeps < 1:
            msg = (
                f"need tol > 0 and max_sweeps >= 1 "
                f"(got tol={self.tol}, max_sweeps={self.max_sweeps})"
            )
            raise ParameterError(msg)


def period_grid(params: ModelParams, steps: int) -> tuple[FloatArray, int]:
    """Time nodes over one period with tau landing on a node.

    Returns:
        (t, n_dry): `steps + 1` nodes in [0, T], the first `n_dry + 1` covering
        the dry season.
    """
    n_dry = min(max(1, round(steps * params.tau / params.T)), steps - 1)
    dry = np.linspace(0.0, params.tau, n_dry + 1)
    wet = np.linspace(params.tau, params.T, steps - n_dry + 1)
    return np.concatenate([dry, wet[1:]]), n_dry


@dataclass(frozen=True)
class PeriodicOrbit:
    """One period of (w, z) on the interior nodes of (l1, l2).

    Row 0 holds the post-impulse values w(0+), the last row w(T) = w(0).
    """

    params: ModelParams
    l1: float
    l2: float
    t: FloatArray = field(repr=False)
    x: FloatArray = field(repr=False)
    w: FloatArray = field(repr=False)
    z: FloatArray = field(repr=False)
    sweeps: int = 0
    gap: float = 0.0
    seed: Seed = "upper"
    shortcut: bool = False
    warmups: int = 0
    sup_history: tuple[tuple[float, float], ...] = field(default=(), repr=False)

    @property
    def is_zero(self) -> bool:
        return max(self.sup()) < ZERO_ORBIT_TOL

    def sup(self) -> tuple[float, float]:
        return float(self.w.max()), float(self.z.max())

    def at_position(self, x0: float) -> tuple[FloatArray, FloatArray]:
        """Period series of (w, z) interpolated at `x0`."""
        xs = np.concatenate([[self.l1], self.x, [self.l2]])
        pad = np.zeros((self.t.size, 1))
        w_full = np.hstack([pad, self.w, pad])
        z_full = np.hstack([pad, self.z, pad])
        w = np.array([np.interp(x0, xs, row) for row in w_full])
        z = np.array([np.interp(x0, xs, row) for row in z_full])
        return w, z


@dataclass(frozen=True)
class _SweepContext:
    params: ModelParams
    n_dry: int
    steps: int
    gamma: float
    dt_dry: float
    dry_z: FixedDiffusion
    wet_w: FixedDiffusion
    wet_z: FixedDiffusion


def _context(
    params: ModelParams, l1: float, l2: float, cfg: OrbitConfig
) -> _SweepContext:
    p = params
    t, n_dry = period_grid(p, cfg.steps)
    dt_dry = float(t[1] - t[0])
    dt_wet = float(t[-1] - t[-2])
    h = (l2 - l1) / (cfg.n + 1)
    gamma = p.delta1 + p.delta2 + p.a11 + p.a22
    return _SweepContext(
        params=p,
        n_dry=n_dry,
        steps=cfg.steps,
        gamma=gamma,
        dt_dry=dt_dry,
        dry_z=FixedDiffusion(cfg.n, p.d2 / h**2, gamma, dt_dry, BACKWARD_EULER),
        wet_w=FixedDiffusion(cfg.n, p.d1 / h**2, gamma, dt_wet, BACKWARD_EULER),
        wet_z=FixedDiffusion(cfg.n, p.d2 / h**2, gamma, dt_wet, BACKWARD_EULER),
    )


def sweep(
    w_prev: FloatArray, z_prev: FloatArray, ctx: _SweepContext
) -> tuple[FloatArray, FloatArray]:
    """One period of the linear problems driven by the previous iterate."""
    p, g = ctx.params, ctx.gamma
    w = np.empty_like(w_prev)
    z = np.empty_like(z_prev)
    w[0] = p.impulse(w_prev[-1])
    z[0] = z_prev[-1]
    decay = 1.0 + g * ctx.dt_dry
    for k in range(ctx.n_dry):
        w[k + 1] = (w[k] + ctx.dt_dry * (g - p.delta1) * w_prev[k + 1]) / decay
        z[k + 1] = ctx.dry_z.step(z[k], (g - p.delta2) * z_prev[k + 1])
    for k in range(ctx.n_dry, ctx.steps):
        src_w = (g - p.a11) * w_prev[k + 1] + p.a12 * z_prev[k + 1]
        src_z = (g - p.a22) * z_prev[k + 1] + p.growth(w_prev[k + 1])
        w[k + 1] = ctx.wet_w.step(w[k], src_w)
        z[k + 1] = ctx.wet_z.step(z[k], src_z)
    return w, z


def _lower_seed(
    params: ModelParams,
    l1: float,
    l2: float,
    t: FloatArray,
    x: FloatArray,
    ceiling: tuple[float, float],
) -> tuple[FloatArray, FloatArray]:
    """eps e^{(lambda1 + v)(T - t)} chi(x) (Phi(t), Psi(t)), v = |lambda1| / 2."""
    sol = lambda1_interval(params, l1, l2)
    lam = sol.lambda1
    if lam >= 0:
        msg = f"lower seed needs lambda1 < 0 on ({l1}, {l2}) (got {lam:.6g})"
        raise ParameterError(msg)
    phi, psi = sol.profile(t)
    envelope = np.exp((lam + abs(lam) / 2.0) * (params.T - t))
    chi = np.sin(math.pi * (x - l1) / (l2 - l1))
    w = (envelope * phi)[:, None] * chi[None, :]
    z = (envelope * psi)[:, None] * chi[None, :]
    eps = LOWER_SEED_SCALE * min(ceiling[0] / w.max(), ceiling[1] / z.max())
    return eps * w, eps * z


def monotone_iterate(  # noqa: PLR0913, C901
    params: ModelParams,
    l1: float,
    l2: float,
    grid: OrbitConfig | None = None,
    tol: float | None = None,
    *,
    seed: Seed = "upper",
    force: bool = False,
    init: InitialData | None = None,
) -> PeriodicOrbit:
    """Periodic steady state on (l1, l2) by monotone iteration.

    Args:
        params: Model parameters.
        l1: Left end of the interval.
        l2: Right end of the interval.
        grid: Space/time resolution and iteration cap.
        tol: Sup gap between successive sweeps; overrides `grid.tol`.
        seed: "upper" starts from the constants (C2, C3); "lower" from the
            scaled principal eigenfunction (needs lambda1 < 0).
        force: Sweep even when lambda1 >= 0 already implies the zero orbit.
        init: Initial data entering C2, C3; zero data when omitted.

    Raises:
        ConvergenceError: The gap is still above tol after max_sweeps.
    """
    require_structural(params)
    cfg = grid or OrbitConfig()
    tol = cfg.tol if tol is None else tol
    if not l1 < l2:
        msg = f"need l1 < l2 (got l1={l1!r}, l2={l2!r})"
        raise ParameterError(msg)
    logger = get_app_logger()
    t, _ = period_grid(params, cfg.steps)
    x = l1 + (l2 - l1) / (cfg.n + 1) * np.arange(1, cfg.n + 1, dtype=np.float64)
    shape = (t.size, cfg.n)

    lam = lambda1_interval(params, l1, l2).lambda1
    if lam >= 0 and seed == "upper" and not force:
        logger.info("lambda1=%.6g >= 0 on (%g, %g): zero orbit", lam, l1, l2)
        zeros = np.zeros(shape)
        return PeriodicOrbit(
            params, l1, l2, t, x, zeros, zeros.copy(), seed=seed, shortcut=True
        )

    data = init or InitialData.cosine(params.s0, 0.0, 0.0)
    bounds = compute_bounds(params, data)
    ctx = _context(params, l1, l2, cfg)
    warmups = 0
    if seed == "upper":
        w, z = np.full(shape, bounds.C2), np.full(shape, bounds.C3)
    else:
        w, z = _lower_seed(params, l1, l2, t, x, (bounds.C2, bounds.C3))
        while True:
            w_next, z_next = sweep(w, z, ctx)
            if np.all(w_next >= w) and np.all(z_next >= z):
                break
            w, z = w_next, z_next
            warmups += 1
            if warmups >= MAX_WARMUP_SWEEPS:
                logger.warning(
                    "lower seed not a subsolution after %d sweeps; "
                    "the sequence may not be monotone",
                    warmups,
                )
                break
        logger.debug("lower seed ready after %d warm-up sweeps", warmups)

    history: list[tuple[float, float]] = [(float(w.max()), float(z.max()))]
    gap = math.inf
    for count in range(1, cfg.max_sweeps + 1):
        w_next, z_next = sweep(w, z, ctx)
        gap = float(max(np.abs(w_next - w).max(), np.abs(z_next - z).max()))
        w, z = w_next, z_next
        history.append((float(w.max()), float(z.max())))
        logger.trace("sweep %d: gap=%.3e", count, gap)
        if gap < tol:
            logger.detail(
                "monotone iteration (%s seed) converged in %d sweeps, gap=%.3e",
                seed,
                count,
                gap,
            )
            return PeriodicOrbit(
                params,
                l1,
                l2,
                t,
                x,
                w,
                z,
                sweeps=count,
                gap=gap,
                seed=seed,
                warmups=warmups,
                sup_history=tuple(history),
            )
    logger.error("monotone iteration stalled at gap=%.3e", gap)
    msg = "monotone iteration did not converge"
    raise ConvergenceError(
        msg, diagnostics={"sweeps": cfg.max_sweeps, "gap": gap, "tol": tol}
    )


# --- Spatially homogeneous orbit ----------------------------------------------


@dataclass(frozen=True)
class OdeOrbit:
    """One period of (W, Z); row 0 is W(0+) after the impulse."""

    params: ModelParams
    t: FloatArray = field(repr=False)
    W: FloatArray = field(repr=False)
    Z: FloatArray = field(repr=False)
    periods: int = 0
    gap: float = 0.0
    shortcut: bool = False

    @property
    def is_zero(self) -> bool:
        return max(self.sup()) < ZERO_ORBIT_TOL

    def sup(self) -> tuple[float, float]:
        return float(self.W.max()), float(self.Z.max())

    def at(self, t: float | FloatArray) -> tuple[FloatArray, FloatArray]:
        """(W, Z) at times within the period, t taken modulo T."""
        tt = np.mod(np.asarray(t, dtype=np.float64), self.params.T)
        return np.interp(tt, self.t, self.W), np.interp(tt, self.t, self.Z)


def _ode_period(
    params: ModelParams, start: tuple[float, float], t: FloatArray, n_dry: int
) -> tuple[FloatArray, FloatArray]:
    p = params
    u0 = float(p.impulse(start[0]))
    v0 = start[1]
    t_dry = t[: n_dry + 1]
    w_dry = u0 * np.exp(-p.delta1 * t_dry)
    z_dry = v0 * np.exp(-p.delta2 * t_dry)

    def rhs(_t: float, y: FloatArray) -> list[float]:
        return [
            -p.a11 * y[0] + p.a12 * y[1],
            -p.a22 * y[1] + float(p.growth(y[0])),
        ]

    t_wet = t[n_dry:]
    sol = solve_ivp(
        rhs,
        (float(t_wet[0]), float(t_wet[-1])),
        [float(w_dry[-1]), float(z_dry[-1])],
        method="RK45",
        t_eval=t_wet,
        rtol=1e-10,
        atol=1e-13,
    )
    if not sol.success:
        msg = f"wet-season integration failed: {sol.message}"
        raise ConvergenceError(msg, diagnostics={"start": start})
    w = np.concatenate([w_dry, sol.y[0, 1:]])
    z = np.concatenate([z_dry, sol.y[1, 1:]])
    return w, z


def periodic_ode_orbit(
    params: ModelParams,
    tol: float = DEFAULT_ORBIT_TOL,
    *,
    steps: int = DEFAULT_ORBIT_STEPS,
    max_periods: int = DEFAULT_ORBIT_MAX_SWEEPS,
    force: bool = False,
    init: InitialData | None = None,
) -> OdeOrbit:
    """Periodic orbit of the homogeneous impulsive system, from (C2, C3).

    Raises:
        ConvergenceError: Successive periods still differ after max_periods.
    """
    require_structural(params)
    logger = get_app_logger()
    t, n_dry = period_grid(params, steps)
    if nu1(params).lambda1 >= 0 and not force:
        logger.info("nu1 >= 0: zero ODE orbit")
        zeros = np.zeros(t.size)
        return OdeOrbit(params, t, zeros, zeros.copy(), shortcut=True)
    bounds = compute_bounds(params, init or InitialData.cosine(params.s0, 0.0, 0.0))
    start = (bounds.C2, bounds.C3)
    prev_w = np.full(t.size, bounds.C2)
    prev_z = np.full(t.size, bounds.C3)
    gap = math.inf
    for period in range(1, max_periods + 1):
        w, z = _ode_period(params, start, t, n_dry)
        gap = float(max(np.abs(w - prev_w).max(), np.abs(z - prev_z).max()))
        if gap < tol:
            logger.detail("ODE orbit settled after %d periods, gap=%.3e", period, gap)
            return OdeOrbit(params, t, w, z, periods=period, gap=gap)
        prev_w, prev_z = w, z
        start = (float(w[-1]), float(z[-1]))
    logger.error("ODE orbit stalled at gap=%.3e", gap)
    msg = "periodic ODE orbit did not converge"
    raise ConvergenceError(
        msg, diagnostics={"periods": max_periods, "gap": gap, "tol": tol}
    )
