# src/impulsive_fronts/forward_sim.py
"""Nonlinear forward solver with moving infection fronts.

Densities live on a front-fixed grid xi in [0, 1] (N + 2 nodes including the
two boundary zeros) mapped by x = r + xi (s - r). With L = s - r the wet-season
equations become

    U_t = d / L**2 U_xixi + (r' + xi L') / L U_xi + reaction

Diffusion is Crank-Nicolson (implicit weight from the new width, explicit weight
from the old one), advection and reaction are explicit, and the fronts move by
the Stefan condition s' = -mu1 u_x(s) - mu2 v_x(s) (likewise r') evaluated from
the densities at the start of the step. During the dry season the fronts are
frozen, u decays exactly and v diffuses on the fixed interval.
"""

from __future__ import annotations

import math
from collections.abc import Callable
from dataclasses import dataclass, field, replace
from enum import Enum

import numpy as np

from .constants import (
    CLAMP_FLOOR,
    DEFAULT_DT_MIN,
    DEFAULT_HORIZON_PERIODS,
    DEFAULT_SIM_N,
    DEFAULT_SIM_STEPS_PER_SEASON,
    DEFAULT_VANISH_EPS,
    MIN_SIM_N,
    SPREAD_WIDTH_FACTOR,
)
from .diffusion import CRANK_NICOLSON, theta_step
from .eigen_analytic import critical_half_width, lambda1_interval
from .errors import ParameterError, SolverError, StepRejectedError
from .logs import get_app_logger
from .model import (
    FloatArray,
    InitialData,
    ModelParams,
    compute_bounds,
    require_structural,
)
from .outcome import Outcome, Verdict


class Phase(str, Enum):
    DRY = "Dry"
    WET = "Wet"


@dataclass(frozen=True)
class SimState:
    """Solution at one instant; `u` and `v` include the boundary zeros."""

    t: float
    phase: Phase
    r: float
    s: float
    u: FloatArray = field(repr=False, compare=False)
    v: FloatArray = field(repr=False, compare=False)
    m: int = 0

    @property
    def n(self) -> int:
        """Interior node count."""
        return self.u.size - 2

    @property
    def width(self) -> float:
        return self.s - self.r

    @property
    def h(self) -> float:
        """Physical grid spacing."""
        return self.width / (self.n + 1)

    def xi(self) -> FloatArray:
        return np.linspace(0.0, 1.0, self.n + 2)

    def x(self) -> FloatArray:
        return self.r + self.width * self.xi()


@dataclass(frozen=True)
class SimConfig:
    """Forward-run settings; `None` fields resolve from the model parameters."""

    n: int = DEFAULT_SIM_N
    dt: float | None = None
    horizon: float | None = None
    vanish_eps: float = DEFAULT_VANISH_EPS
    spread_width: float | None = None
    snap_every: float | None = None
    dt_min: float = DEFAULT_DT_MIN
    impulse_at_start: bool = False
    probe_x: float = 0.0
    theta: float = CRANK_NICOLSON
    stop_on_outcome: bool = False

    def __post_init__(self) -> None:
        problems: list[str] = []
        if self.n < MIN_SIM_N:
            problems.append(f"N must be >= {MIN_SIM_N} (got {self.n})")
        if self.dt is not None and not self.dt > 0:
            problems.append(f"dt must be > 0 (got {self.dt!r})")
        if self.horizon is not None and self.horizon < 0:
            problems.append(f"horizon must be >= 0 (got {self.horizon!r})")
        if not self.vanish_eps > 0:
            problems.append(f"vanish_eps must be > 0 (got {self.vanish_eps!r})")
        if self.spread_width is not None and not self.spread_width > 0:
            problems.append(f"spread_width must be > 0 (got {self.spread_width!r})")
        if self.snap_every is not None and not self.snap_every > 0:
            problems.append(f"snap_every must be > 0 (got {self.snap_every!r})")
        if not 0.5 <= self.theta <= 1.0:  # noqa: PLR2004
            problems.append(f"theta must lie in [0.5, 1] (got {self.theta!r})")
        if problems:
            msg = "invalid simulation config: " + "; ".join(problems)
            raise ParameterError(msg)

    def resolved_dt(self, params: ModelParams) -> float:
        if self.dt is not None:
            return self.dt
        return min(params.tau, params.wet_length) / DEFAULT_SIM_STEPS_PER_SEASON

    def resolved_horizon(self, params: ModelParams) -> float:
        if self.horizon is not None:
            return self.horizon
        return DEFAULT_HORIZON_PERIODS * params.T

    def resolved_snap_every(self, params: ModelParams) -> float:
        return self.snap_every if self.snap_every is not None else params.T

    def resolved_spread_width(self, params: ModelParams) -> float:
        """Explicit width, else 4 l* (critical half-width), else 4 s0."""
        if self.spread_width is not None:
            return self.spread_width
        critical = critical_half_width(params)
        base = critical if critical is not None else params.s0
        return SPREAD_WIDTH_FACTOR * base


@dataclass(frozen=True)
class Snapshot:
    t: float
    r: float
    s: float
    u: FloatArray = field(repr=False, compare=False)
    v: FloatArray = field(repr=False, compare=False)


@dataclass(frozen=True)
class PeriodSummary:
    m: int
    t: float
    r: float
    s: float
    sup_u: float
    sup_v: float
    max_speed: float


@dataclass(frozen=True)
class Trajectory:
    """Sampled history of one run."""

    params: ModelParams
    config: SimConfig
    times: FloatArray = field(repr=False)
    r: FloatArray = field(repr=False)
    s: FloatArray = field(repr=False)
    sup_u: FloatArray = field(repr=False)
    sup_v: FloatArray = field(repr=False)
    probe_u: FloatArray = field(repr=False)
    probe_v: FloatArray = field(repr=False)
    snapshots: tuple[Snapshot, ...] = field(repr=False)
    periods: tuple[PeriodSummary, ...] = field(repr=False)
    final: SimState = field(repr=False)
    bounds_exceeded: bool = False
    early_outcome: Outcome | None = None

    def to_rows(self) -> list[tuple[float, float, float, float, float]]:
        """(t, r, s, sup_u, sup_v) per recorded sample."""
        return [
            (float(t), float(r), float(s), float(su), float(sv))
            for t, r, s, su, sv in zip(
                self.times, self.r, self.s, self.sup_u, self.sup_v, strict=True
            )
        ]


# --- Single steps -------------------------------------------------------------


def _check_densities(
    u: FloatArray, v: FloatArray
) -> tuple[FloatArray, FloatArray] | None:
    """Clamp round-off negatives; None when an undershoot is too large."""
    if float(min(u.min(), v.min())) < CLAMP_FLOOR:
        return None
    return np.maximum(u, 0.0), np.maximum(v, 0.0)


def step_dry(
    state: SimState, params: ModelParams, dt: float, theta: float = CRANK_NICOLSON
) -> SimState:
    """Advance the dry season: exact decay of u, theta-scheme diffusion of v."""
    n = state.n
    w = params.d2 * (n + 1) ** 2 / state.width**2
    v_inner = theta_step(state.v[1:-1], w_new=w, w_old=w, dt=dt, theta=theta)
    v = np.zeros_like(state.v)
    v[1:-1] = v_inner * math.exp(-params.delta2 * dt)
    u = state.u * math.exp(-params.delta1 * dt)
    return replace(state, t=state.t + dt, phase=Phase.DRY, u=u, v=v)


def boundary_gradients(state: SimState, f: FloatArray) -> tuple[float, float]:
    """(f_x at r, f_x at s) from one-sided 3-point stencils.

    A stencil that contradicts the sign a non-negative profile must have at a
    zero boundary falls back to the 2-point difference.
    """
    h = state.h
    left = (-3.0 * f[0] + 4.0 * f[1] - f[2]) / (2.0 * h)
    if left < 0:
        left = (f[1] - f[0]) / h
    right = (3.0 * f[-1] - 4.0 * f[-2] + f[-3]) / (2.0 * h)
    if right > 0:
        right = (f[-1] - f[-2]) / h
    return left, right


def front_speeds(state: SimState, params: ModelParams) -> tuple[float, float]:
    """(r', s') from the Stefan conditions."""
    ux_r, ux_s = boundary_gradients(state, state.u)
    vx_r, vx_s = boundary_gradients(state, state.v)
    r_dot = -params.mu1 * ux_r - params.mu2 * vx_r
    s_dot = -params.mu1 * ux_s - params.mu2 * vx_s
    return r_dot, s_dot


def _central_xi(f: FloatArray, h_xi: float) -> FloatArray:
    """Central xi-derivative at the interior nodes."""
    return (f[2:] - f[:-2]) / (2.0 * h_xi)


def step_wet(
    state: SimState, params: ModelParams, dt: float, theta: float = CRANK_NICOLSON
) -> SimState:
    """Advance the wet season on the front-fixed grid.

    Raises:
        StepRejectedError: A front would reverse (only with negative densities).
    """
    p = params
    n = state.n
    h_xi = 1.0 / (n + 1)
    width = state.width
    r_dot, s_dot = front_speeds(state, p)
    if r_dot > 0 or s_dot < 0:
        msg = "front reversal"
        raise StepRejectedError(
            msg, diagnostics={"t": state.t, "r_dot": r_dot, "s_dot": s_dot}
        )
    r_new = state.r + dt * r_dot
    s_new = state.s + dt * s_dot
    width_new = s_new - r_new
    xi_inner = state.xi()[1:-1]
    drift = (r_dot + xi_inner * (s_dot - r_dot)) / width

    u_in, v_in = state.u[1:-1], state.v[1:-1]
    src_u = drift * _central_xi(state.u, h_xi) - p.a11 * u_in + p.a12 * v_in
    src_v = (
        drift * _central_xi(state.v, h_xi) - p.a22 * v_in + p.growth(u_in)
    )
    scale_old = 1.0 / (width * h_xi) ** 2
    scale_new = 1.0 / (width_new * h_xi) ** 2
    u = np.zeros_like(state.u)
    v = np.zeros_like(state.v)
    u[1:-1] = theta_step(
        u_in,
        w_new=p.d1 * scale_new,
        w_old=p.d1 * scale_old,
        dt=dt,
        theta=theta,
        source=src_u,
    )
    v[1:-1] = theta_step(
        v_in,
        w_new=p.d2 * scale_new,
        w_old=p.d2 * scale_old,
        dt=dt,
        theta=theta,
        source=src_v,
    )
    return replace(
        state, t=state.t + dt, phase=Phase.WET, r=r_new, s=s_new, u=u, v=v
    )


def apply_impulse(state: SimState, params: ModelParams) -> SimState:
    """u -> H(u) nodewise; v, fronts and grid unchanged."""
    return replace(state, u=params.impulse(state.u))


def _guarded_step(
    state: SimState,
    params: ModelParams,
    dt: float,
    cfg: SimConfig,
    stepper: Callable[[SimState, ModelParams, float, float], SimState],
) -> SimState:
    """Take `dt`, halving recursively while densities undershoot."""
    try:
        candidate = stepper(state, params, dt, cfg.theta)
    except StepRejectedError:
        candidate = None
    if candidate is not None:
        checked = _check_densities(candidate.u, candidate.v)
        if checked is not None:
            return replace(candidate, u=checked[0], v=checked[1])
    half = dt / 2.0
    if half < cfg.dt_min:
        lowest = (
            float(min(candidate.u.min(), candidate.v.min()))
            if candidate is not None
            else math.nan
        )
        msg = "time step rejected below dt_min"
        raise StepRejectedError(
            msg,
            diagnostics={
                "t": state.t,
                "dt": dt,
                "dt_min": cfg.dt_min,
                "min_density": lowest,
                "r": state.r,
                "s": state.s,
            },
        )
    get_app_logger().warning(
        "step rejected at t=%.6g (dt=%.3g); retrying with dt/2", state.t, dt
    )
    mid = _guarded_step(state, params, half, cfg, stepper)
    return _guarded_step(mid, params, half, cfg, stepper)


# --- Runs ---------------------------------------------------------------------


def initial_state(params: ModelParams, init: InitialData, n: int) -> SimState:
    r, s = -params.s0, params.s0
    x = np.linspace(r, s, n + 2)
    u, v = init.sample(x)
    u[0] = u[-1] = 0.0
    v[0] = v[-1] = 0.0
    return SimState(t=0.0, phase=Phase.DRY, r=r, s=s, u=u, v=v, m=0)


class _Recorder:
    def __init__(self, cfg: SimConfig, snap_every: float) -> None:
        self.cfg = cfg
        self.snap_every = snap_every
        self.next_snap = 0.0
        self.columns: dict[str, list[float]] = {
            key: [] for key in ("t", "r", "s", "sup_u", "sup_v", "probe_u", "probe_v")
        }
        self.snapshots: list[Snapshot] = []
        self.periods: list[PeriodSummary] = []
        self.bounds_exceeded = False

    def record(self, state: SimState) -> None:
        cols = self.columns
        x = state.x()
        inside = state.r <= self.cfg.probe_x <= state.s
        cols["t"].append(state.t)
        cols["r"].append(state.r)
        cols["s"].append(state.s)
        cols["sup_u"].append(float(state.u.max()))
        cols["sup_v"].append(float(state.v.max()))
        cols["probe_u"].append(
            float(np.interp(self.cfg.probe_x, x, state.u)) if inside else 0.0
        )
        cols["probe_v"].append(
            float(np.interp(self.cfg.probe_x, x, state.v)) if inside else 0.0
        )
        if state.t >= self.next_snap - 1e-9 * max(1.0, self.snap_every):
            self.snapshots.append(
                Snapshot(state.t, state.r, state.s, state.u.copy(), state.v.copy())
            )
            while self.next_snap <= state.t + 1e-9 * max(1.0, self.snap_every):
                self.next_snap += self.snap_every

    def build(
        self,
        params: ModelParams,
        final: SimState,
        early: Outcome | None = None,
    ) -> Trajectory:
        cols = {k: np.asarray(v, dtype=np.float64) for k, v in self.columns.items()}
        return Trajectory(
            params=params,
            config=self.cfg,
            times=cols["t"],
            r=cols["r"],
            s=cols["s"],
            sup_u=cols["sup_u"],
            sup_v=cols["sup_v"],
            probe_u=cols["probe_u"],
            probe_v=cols["probe_v"],
            snapshots=tuple(self.snapshots),
            periods=tuple(self.periods),
            final=final,
            bounds_exceeded=self.bounds_exceeded,
            early_outcome=early,
        )


def _season(  # noqa: PLR0913
    state: SimState,
    params: ModelParams,
    cfg: SimConfig,
    end: float,
    dt: float,
    phase: Phase,
    recorder: _Recorder,
    limits: tuple[float, float],
) -> SimState:
    span = end - state.t
    if span <= 0:
        return state
    steps = max(1, math.ceil(span / dt - 1e-9))
    dt_k = span / steps
    stepper = step_dry if phase is Phase.DRY else step_wet
    c2, c3 = limits
    for _ in range(steps):
        try:
            state = _guarded_step(state, params, dt_k, cfg, stepper)
        except SolverError as exc:
            exc.state = state
            raise
        if not recorder.bounds_exceeded and (
            float(state.u.max()) > c2 + 1e-8 or float(state.v.max()) > c3 + 1e-8
        ):
            recorder.bounds_exceeded = True
            get_app_logger().warning(
                "a-priori bound exceeded at t=%.6g (sup u=%.6g > C2=%.6g or "
                "sup v=%.6g > C3=%.6g)",
                state.t,
                float(state.u.max()),
                c2,
                float(state.v.max()),
                c3,
            )
        recorder.record(state)
    return replace(state, t=end, phase=phase)


def run(params: ModelParams, init: InitialData, cfg: SimConfig) -> Trajectory:
    """Alternate dry and wet seasons with the impulse at every wrap t = mT."""
    require_structural(params)
    logger = get_app_logger()
    bounds = compute_bounds(params, init)
    limits = (bounds.C2, bounds.C3)
    dt = cfg.resolved_dt(params)
    horizon = cfg.resolved_horizon(params)
    recorder = _Recorder(cfg, cfg.resolved_snap_every(params))
    spread_width: float | None = None
    state = initial_state(params, init, cfg.n)
    if cfg.impulse_at_start:
        state = apply_impulse(state, params)
    recorder.record(state)
    logger.info(
        "simulating to t=%.6g with N=%d dt=%.4g (%s impulse)",
        horizon,
        cfg.n,
        dt,
        params.impulse.describe(),
    )
    m = 0
    while state.t < horizon - 1e-12:
        start = m * params.T
        dry_end = min(start + params.tau, horizon)
        wet_end = min(start + params.T, horizon)
        s_before, r_before = state.s, state.r
        state = _season(state, params, cfg, dry_end, dt, Phase.DRY, recorder, limits)
        state = _season(state, params, cfg, wet_end, dt, Phase.WET, recorder, limits)
        if wet_end < start + params.T:
            break
        sup_u, sup_v = float(state.u.max()), float(state.v.max())
        speed = max(state.s - s_before, r_before - state.r) / params.wet_length
        recorder.periods.append(
            PeriodSummary(m + 1, state.t, state.r, state.s, sup_u, sup_v, speed)
        )
        logger.log_period(m + 1, state.r, state.s, sup_u, sup_v)
        if cfg.stop_on_outcome:
            if spread_width is None:
                spread_width = cfg.resolved_spread_width(params)
            partial = recorder.build(params, state)
            verdict = detect_outcome(partial, cfg, spread_width=spread_width)
            if verdict.verdict is not Verdict.UNDECIDED:
                logger.info("early outcome at t=%.6g: %s", state.t, verdict.verdict)
                return recorder.build(params, state, verdict)
        m += 1
        state = replace(apply_impulse(state, params), m=m)
        if state.t < horizon - 1e-12:
            recorder.record(state)
    return recorder.build(params, state)


# --- Outcome detection --------------------------------------------------------


def detect_outcome(
    traj: Trajectory,
    cfg: SimConfig,
    *,
    lambda1: Callable[[float, float], float] | None = None,
    spread_width: float | None = None,
) -> Outcome:
    """Classify a finished (or partial) run.

    Vanishing: sup u + sup v below `vanish_eps` over the last full period while
    both fronts moved less than one grid spacing. Spreading: lambda1 on the
    current interval is negative and the width exceeds the spread width, so the
    fronts cannot stay bounded. Anything else is Undecided.
    """
    params = traj.params

    def interval_lambda1(l1: float, l2: float) -> float:
        if lambda1 is not None:
            return lambda1(l1, l2)
        return lambda1_interval(params, l1, l2).lambda1

    t_end = float(traj.times[-1]) if traj.times.size else 0.0
    if t_end < params.T - 1e-12:
        return Outcome(Verdict.UNDECIDED, {"t_end": t_end}, ("no full period yet",))
    final = traj.final
    window = traj.times >= t_end - params.T - 1e-12
    sup_sum = float(np.max(traj.sup_u[window] + traj.sup_v[window]))
    r_move = float(traj.r[window][0] - traj.r[window][-1])
    s_move = float(traj.s[window][-1] - traj.s[window][0])
    lam = interval_lambda1(final.r, final.s)
    threshold = (
        spread_width if spread_width is not None else cfg.resolved_spread_width(params)
    )
    evidence: dict[str, float | None] = {
        "t_end": t_end,
        "r_end": final.r,
        "s_end": final.s,
        "width": final.width,
        "lambda1_end": lam,
        "sup_sum_last_period": sup_sum,
        "spread_width": threshold,
    }
    if sup_sum < cfg.vanish_eps and max(r_move, s_move) < final.h:
        return Outcome(
            Verdict.VANISHING,
            evidence,
            ("densities below vanish_eps and fronts stalled over the last period",),
        )
    if lam < 0 and final.width > threshold:
        return Outcome(
            Verdict.SPREADING,
            evidence,
            ("lambda1(r, s) < 0 on the current interval, so the width is unbounded",),
        )
    return Outcome(Verdict.UNDECIDED, evidence)

