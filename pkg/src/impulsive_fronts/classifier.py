# src/impulsive_fronts/classifier.py
"""Spreading-vanishing verdicts from the eigenvalue criteria.

With nu1 the large-interval limit of lambda1 and lambda1(s0) the eigenvalue on
the initial interval (-s0, s0):

    nu1 >= 0                      -> Vanishing
    nu1 < 0 and lambda1(s0) <= 0  -> Spreading
    nu1 < 0 < lambda1(s0)         -> ThresholdRegime (decided by mu1, mu2)

In the threshold regime `find_mu_star` brackets the expansion-capacity
threshold by bisection over forward runs with mu2 = rho * mu1. Finite-horizon
verdicts are a numerical proxy for the asymptotic ones.
"""

from __future__ import annotations

import math
from collections.abc import Callable
from dataclasses import replace
from multiprocessing import Pool

from .constants import DEFAULT_BISECTION_DEPTH, NU1_ZERO_TOL
from .eigen_analytic import critical_half_width, lambda1_half_width, nu1
from .errors import BracketError, ParameterError
from .forward_sim import SimConfig, detect_outcome, run
from .logs import get_app_logger
from .model import InitialData, ModelParams, require_structural
from .outcome import MuStarEstimate, Outcome, Verdict


Probe = Callable[[float], tuple[Verdict, float]]


def classify(params: ModelParams, init: InitialData) -> Outcome:
    """Case table on (nu1, lambda1(s0)); eigen errors propagate."""
    require_structural(params)
    logger = get_app_logger()
    limit = nu1(params).lambda1
    at_s0 = lambda1_half_width(params, init.s0)
    evidence: dict[str, float | None] = {
        "nu1": limit,
        "lambda1_s0": at_s0,
        "s0": init.s0,
        "nu1_zero_tol": NU1_ZERO_TOL,
    }
    notes: list[str] = []
    if limit >= -NU1_ZERO_TOL:
        verdict = Verdict.VANISHING
        if limit < NU1_ZERO_TOL:
            notes.append(
                "nu1 is zero within tolerance; treated as nu1 >= 0 under the "
                "growth-at-infinity assumption"
            )
        notes.append("nu1 >= 0: every solution vanishes")
        evidence["critical_half_width"] = None
    else:
        evidence["critical_half_width"] = critical_half_width(params)
        if at_s0 <= 0:
            verdict = Verdict.SPREADING
            notes.append("nu1 < 0 and lambda1(s0) <= 0: spreading for any mu")
        else:
            verdict = Verdict.THRESHOLD
            notes.append(
                "nu1 < 0 < lambda1(s0): outcome depends on the front coefficients"
            )
    logger.brief(
        "classify: %s (nu1=%.6g, lambda1(s0)=%.6g)", verdict.value, limit, at_s0
    )
    return Outcome(verdict, evidence, tuple(notes))


# --- mu* bisection ------------------------------------------------------------


def probe_mu(
    params: ModelParams,
    init: InitialData,
    sim: SimConfig,
    rho: float,
    mu1: float,
) -> tuple[Verdict, float]:
    """Forward run at (mu1, rho * mu1); returns the verdict and final width."""
    probe_params = params.with_overrides(mu1=mu1, mu2=rho * mu1)
    cfg = replace(sim, stop_on_outcome=True)
    traj = run(probe_params, init, cfg)
    outcome = traj.early_outcome or detect_outcome(traj, cfg)
    get_app_logger().detail("probe mu1=%.8g -> %s", mu1, outcome.verdict.value)
    return outcome.verdict, traj.final.width


def _probe_star(
    args: tuple[ModelParams, InitialData, SimConfig, float, float],
) -> tuple[Verdict, float]:
    return probe_mu(*args)


def _monotone(history: list[tuple[float, Verdict, float]]) -> bool:
    """Vanishing probes must all sit below spreading ones."""
    decided = sorted((mu, v) for mu, v, _ in history if v is not Verdict.UNDECIDED)
    seen_spread = False
    for _, verdict in decided:
        if verdict is Verdict.SPREADING:
            seen_spread = True
        elif seen_spread:
            return False
    return True


def find_mu_star(  # noqa: PLR0913, C901, PLR0912
    params: ModelParams,
    init: InitialData,
    rho: float,
    bracket: tuple[float, float],
    sim: SimConfig,
    *,
    resolution: float | None = None,
    parallel: bool = False,
    probe: Probe | None = None,
) -> MuStarEstimate:
    """Bisect mu1 (mu2 = rho * mu1) down to `resolution`.

    Args:
        params: Model parameters; mu1 and mu2 are overridden per probe.
        init: Initial data.
        rho: Ratio mu2 / mu1, positive.
        bracket: (mu_lo, mu_hi), expected to vanish at mu_lo and spread at mu_hi.
        sim: Forward-run settings for every probe.
        resolution: Final bracket width; defaults to 2**-10 of the initial one.
        parallel: Probe both children of each bisection node alongside the
            midpoint in worker processes.
        probe: Replacement verdict oracle mu1 -> (verdict, width).

    Returns:
        The bracket with the full probe history. `paused` is set when a probe
        came back Undecided; the bracket is then the last decided one.

    Raises:
        BracketError: The endpoints do not straddle the threshold.
    """
    lo, hi = bracket
    if not 0 < lo < hi or not rho > 0:
        msg = f"need 0 < mu_lo < mu_hi and rho > 0 (got {bracket!r}, rho={rho!r})"
        raise ParameterError(msg)
    width0 = hi - lo
    target = (
        resolution
        if resolution is not None
        else width0 * 2.0**-DEFAULT_BISECTION_DEPTH
    )
    if not target > 0:
        msg = f"resolution must be positive (got {target!r})"
        raise ParameterError(msg)
    logger = get_app_logger()
    logger.debug(
        "bisection: %d halvings to reach %.3g",
        bisection_depth(width0, target),
        target,
    )
    if probe is None:
        regime = classify(params, init).verdict
        if regime is not Verdict.THRESHOLD:
            logger.warning(
                "find_mu_star outside the threshold regime (%s)", regime.value
            )

    history: list[tuple[float, Verdict, float]] = []
    cache: dict[float, tuple[Verdict, float]] = {}
    pool = Pool(3) if parallel and probe is None else None

    def evaluate(points: list[float]) -> None:
        todo = [mu for mu in points if mu not in cache]
        if probe is not None:
            results = [probe(mu) for mu in todo]
        elif pool is not None:
            args = [(params, init, sim, rho, mu) for mu in todo]
            results = pool.map(_probe_star, args)
        else:
            results = [probe_mu(params, init, sim, rho, mu) for mu in todo]
        for mu, result in zip(todo, results, strict=True):
            cache[mu] = result
            history.append((mu, result[0], result[1]))

    def estimate(lo_: float, hi_: float, *, paused: bool) -> MuStarEstimate:
        return MuStarEstimate(
            lo=lo_,
            hi=hi_,
            rho=rho,
            history=tuple(history),
            monotone=_monotone(history),
            paused=paused,
        )

    try:
        evaluate([lo, hi])
        v_lo, v_hi = cache[lo][0], cache[hi][0]
        if Verdict.UNDECIDED in (v_lo, v_hi):
            logger.warning("undecided probe at a bracket endpoint; pausing")
            return estimate(lo, hi, paused=True)
        if v_lo is v_hi or v_lo is not Verdict.VANISHING:
            msg = "bracket does not straddle mu*"
            raise BracketError(
                msg,
                diagnostics={
                    "mu_lo": lo,
                    "verdict_lo": v_lo.value,
                    "mu_hi": hi,
                    "verdict_hi": v_hi.value,
                },
            )
        while hi - lo > target:
            mid = 0.5 * (lo + hi)
            points = [mid]
            if pool is not None:
                points += [0.5 * (lo + mid), 0.5 * (mid + hi)]
            evaluate(points)
            verdict = cache[mid][0]
            if verdict is Verdict.UNDECIDED:
                logger.warning("undecided probe at mu1=%.8g; pausing", mid)
                return estimate(lo, hi, paused=True)
            if verdict is Verdict.VANISHING:
                lo = mid
            else:
                hi = mid
    finally:
        if pool is not None:
            pool.close()
            pool.join()

    result = estimate(lo, hi, paused=False)
    if not result.monotone:
        logger.warning(
            "probe verdicts are not monotone in mu1; refine the grid or horizon"
        )
    logger.brief(
        "mu* in [%.8g, %.8g] after %d probes (width %.3g)",
        lo,
        hi,
        len(history),
        hi - lo,
    )
    return result


def bisection_depth(width0: float, resolution: float) -> int:
    """Bisection steps needed to shrink `width0` to `resolution`."""
    return max(0, math.ceil(math.log2(width0 / resolution)))
