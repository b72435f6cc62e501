# tests/20_model/test_compute_bounds.py
"""Tests for u_star and the a-priori bounds (C2, C3)."""

import pytest

import impulsive_fronts.model as mod_model
from tests.utils import (
    cosine_init,
    disinfection_params,
    dry_season_params,
    ladder_params,
)


@pytest.mark.parametrize(
    "params",
    [ladder_params(), disinfection_params(), dry_season_params()],
    ids=["ladder", "identity", "tau-3"],
)
def test_u_star_closed_form_matches_root_finding(
    params: mod_model.ModelParams,
) -> None:
    """The Beverton-Holt closed form agrees with brentq on the same f."""
    # --- setup ---
    g = params.growth
    twin = params.with_overrides(
        growth=mod_model.GrowthFunction.custom(
            lambda u: g.m * u / (g.a + u), g.derivative_at_zero
        )
    )

    # --- execute ---
    closed = mod_model.compute_u_star(params)
    numeric = mod_model.compute_u_star(twin)

    # --- verify ---
    assert closed == mod_model.beverton_holt_u_star(params)
    assert closed > 0
    assert numeric == pytest.approx(closed, abs=1e-9)


def test_bounds_for_tau3_parameters() -> None:
    """u* = 1.7^2 / 0.64 - 1 dominates the initial data."""
    # --- setup ---
    params = dry_season_params()

    # --- execute ---
    bounds = mod_model.compute_bounds(params, cosine_init())

    # --- verify ---
    assert bounds.u_star == pytest.approx(1.7 * 1.7 / 0.64 - 1.0, abs=1e-9)
    assert bounds.C2 == pytest.approx(bounds.u_star)
    assert bounds.C3 == pytest.approx(float(params.growth(bounds.C2)) / 0.8)


@pytest.mark.parametrize(
    ("u_amp", "v_amp"), [(0.4, 0.1), (10.0, 0.1), (0.1, 10.0)]
)
def test_bound_residuals_are_non_positive(u_amp: float, v_amp: float) -> None:
    """(C2, C3) is an upper solution of the reaction system."""
    # --- setup ---
    params = disinfection_params()

    # --- execute ---
    bounds = mod_model.compute_bounds(params, cosine_init(2.0, u_amp, v_amp))
    first, second = bounds.residuals(params)

    # --- verify ---
    assert first <= 1e-9
    assert second <= 1e-9
    assert bounds.C2 >= u_amp
    assert bounds.C3 >= v_amp


def test_weak_coupling_gives_zero_u_star() -> None:
    """a12 f'(0) <= a11 a22 means no positive equilibrium."""
    # --- setup ---
    params = dry_season_params().with_overrides(a12=0.1)

    # --- execute ---
    u_star = mod_model.compute_u_star(params)

    # --- verify ---
    assert u_star == 0.0
