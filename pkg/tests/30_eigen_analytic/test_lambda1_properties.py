# tests/30_eigen_analytic/test_lambda1_properties.py
"""Monotonicity, limit and closed-form properties of lambda1."""

import math

import numpy as np
import pytest

import impulsive_fronts.eigen_analytic as mod_eigen
import impulsive_fronts.errors as mod_errors
import impulsive_fronts.model as mod_model
from tests.utils import (
    disinfection_params,
    dry_season_params,
    harsh_dry_params,
    ladder_params,
)


STRICT_MARGIN = 1e-6


def test_lambda1_decreases_with_interval_size() -> None:
    """Larger habitats are easier to invade."""
    # --- setup ---
    params = ladder_params()
    widths = [5.0, 10.0, 15.0, 20.0, 25.0, 30.0]

    # --- execute ---
    values = [mod_eigen.lambda1_half_width(params, w) for w in widths]

    # --- verify ---
    assert np.all(np.diff(values) < -STRICT_MARGIN), values


def test_lambda1_decreases_with_impulse_slope() -> None:
    """Weaker disinfection (larger H'(0)) lowers lambda1."""
    # --- setup ---
    thetas = [0.01 + 0.1 * i for i in range(10)]

    # --- execute ---
    values = [
        mod_eigen.lambda1_interval(ladder_params(theta=t), -10.0, 10.0).lambda1
        for t in thetas
    ]

    # --- verify ---
    assert np.all(np.diff(values) < -STRICT_MARGIN), values


def test_lambda1_increases_with_dry_season_length() -> None:
    """Longer dry seasons raise lambda1 when the decay hypothesis holds."""
    # --- setup ---
    taus = [2.0, 3.0, 4.0, 5.0, 6.0, 7.0, 8.0]
    assert all(
        mod_eigen.tau_monotone_hypothesis(ladder_params(tau=t), 10.0)
        for t in taus
    )

    # --- execute ---
    values = [
        mod_eigen.lambda1_half_width(ladder_params(tau=t), 10.0) for t in taus
    ]

    # --- verify ---
    assert np.all(np.diff(values) > STRICT_MARGIN), values


@pytest.mark.parametrize(
    "params", [ladder_params(), disinfection_params()], ids=["ladder", "identity"]
)
def test_large_interval_limit_is_nu1(params: mod_model.ModelParams) -> None:
    """lambda1 on a huge interval approaches nu1."""
    # --- execute ---
    far = mod_eigen.lambda1_half_width(params, 1e4)
    limit = mod_eigen.nu1(params).lambda1

    # --- verify ---
    assert abs(far - limit) < 1e-3


def test_equal_ratio_family_uses_closed_form() -> None:
    """theta = exp((delta1 - delta2 - d2 kappa1) tau) lands on the tie case."""
    # --- setup ---
    base = ladder_params()
    k1 = mod_eigen.kappa1(20.0)
    theta = math.exp((base.delta1 - base.delta2 - base.d2 * k1) * base.tau)
    params = base.with_overrides(impulse=mod_model.ImpulseFunction.linear(theta))
    coeffs = mod_eigen.spectral_coeffs(params, k1)
    closed = (
        coeffs.c1 * (params.tau - params.T)
        + (params.delta2 + params.d2 * k1) * params.tau
    ) / params.T

    # --- execute ---
    sol = mod_eigen.lambda1_interval(params, -10.0, 10.0)

    # --- verify ---
    assert sol.case_id is mod_eigen.EigenCase.EQUAL_RATIO
    assert abs(sol.lambda1 - closed) < 1e-10
    assert sol.lambda1 == pytest.approx(
        mod_eigen.lambda1_floquet(params, k1), abs=1e-8
    )


def test_spectral_coefficient_signs() -> None:
    """b22 and b24 are negative, the other b's positive, c2 < c1."""
    # --- setup ---
    params = dry_season_params()

    # --- execute ---
    coeffs = mod_eigen.spectral_coeffs(params, mod_eigen.kappa1(6.0))

    # --- verify ---
    assert coeffs.c2 < coeffs.c1
    assert coeffs.b22 < 0
    assert coeffs.b24 < 0
    for name in ("b11", "b12", "b13", "b14", "b21", "b23", "alpha"):
        assert getattr(coeffs, name) > 0, name
    lo, hi = coeffs.k_window
    assert lo < 0 < hi


@pytest.mark.parametrize(
    ("params", "half_width"),
    [
        (disinfection_params(saturating=True), 2.65),
        (ladder_params(), 10.0),
        (dry_season_params(tau=4.7), 3.1),
    ],
)
def test_profile_satisfies_wrap_conditions(
    params: mod_model.ModelParams, half_width: float
) -> None:
    """Phi(0) = H'(0) Phi(T) and Psi(0) = Psi(T) with a positive profile."""
    # --- setup ---
    sol = mod_eigen.lambda1_interval(params, -half_width, half_width)

    # --- execute ---
    phi, psi = sol.profile(np.array([0.0, params.T]))
    ts = np.linspace(0.0, params.T, 2001)
    phi_all, psi_all = sol.profile(ts)

    # --- verify ---
    assert phi[0] == pytest.approx(params.h_prime0 * phi[1], rel=1e-8)
    assert psi[0] == pytest.approx(psi[1], rel=1e-8)
    assert np.all(phi_all > 0)
    assert np.all(psi_all > 0)


def test_profile_solves_the_wet_season_system() -> None:
    """(Phi, Psi)' = (lambda1 + A)(Phi, Psi) on the wet season."""
    # --- setup ---
    params = dry_season_params(tau=4.7)
    sol = mod_eigen.lambda1_interval(params, -3.1, 3.1)
    k1 = sol.coeffs.kappa1
    a = np.array(
        [
            [-params.d1 * k1 - params.a11, params.a12],
            [params.f_prime0, -params.d2 * k1 - params.a22],
        ]
    )
    step = 1e-4
    ts = np.linspace(params.tau + 0.1, params.T - 0.1, 50)

    # --- execute ---
    phi_p, psi_p = sol.profile(ts + step)
    phi_m, psi_m = sol.profile(ts - step)
    phi, psi = sol.profile(ts)
    derivative = np.stack([phi_p - phi_m, psi_p - psi_m]) / (2.0 * step)
    rhs = sol.lambda1 * np.stack([phi, psi]) + a @ np.stack([phi, psi])

    # --- verify ---
    np.testing.assert_allclose(derivative, rhs, rtol=1e-6, atol=1e-9)


def test_critical_half_width_is_a_root() -> None:
    """lambda1(-l*, l*) = 0 and l* separates the golden intervals."""
    # --- setup ---
    params = disinfection_params()

    # --- execute ---
    critical = mod_eigen.critical_half_width(params)

    # --- verify ---
    assert critical is not None
    assert 2.0 < critical < 45.0
    assert abs(mod_eigen.lambda1_half_width(params, critical)) < 1e-8


def test_no_critical_half_width_when_nu1_non_negative() -> None:
    """A harsh dry season gives nu1 > 0, so lambda1 > 0 on every interval."""
    # --- setup ---
    params = harsh_dry_params()

    # --- execute ---
    critical = mod_eigen.critical_half_width(params)

    # --- verify ---
    assert mod_eigen.nu1(params).lambda1 > 0
    assert critical is None


def test_invalid_intervals_raise() -> None:
    """Reversed intervals and non-positive lengths are parameter errors."""
    # --- setup ---
    params = dry_season_params()

    # --- execute and verify ---
    with pytest.raises(mod_errors.ParameterError):
        mod_eigen.lambda1_interval(params, 1.0, -1.0)
    with pytest.raises(mod_errors.ParameterError):
        mod_eigen.kappa1(0.0)
    with pytest.raises(mod_errors.ParameterError):
        mod_eigen.lambda1_interval(params, -1.0, 1.0).profile(params.T + 1.0)


@pytest.mark.parametrize("theta", [0.9, 0.01], ids=["phi-limited", "psi-limited"])
def test_nu1_weak_coupling_limit(theta: float) -> None:
    """a12, f'(0) -> 0+ leaves the smaller of the two scalar Floquet rates."""
    # --- setup ---
    weak = 1e-9
    base = ladder_params(theta=theta)
    params = base.with_overrides(
        a12=weak, growth=mod_model.GrowthFunction.beverton_holt(weak, 1.0)
    )
    wet = params.T - params.tau
    phi_rate = (
        params.delta1 * params.tau + params.a11 * wet - math.log(theta)
    ) / params.T
    psi_rate = (params.delta2 * params.tau + params.a22 * wet) / params.T

    # --- execute ---
    limit = mod_eigen.nu1(params).lambda1

    # --- verify ---
    assert limit == pytest.approx(min(phi_rate, psi_rate), abs=1e-6)


def test_profile_solves_the_dry_season_system() -> None:
    """Phi' = (lambda1 - delta1) Phi, Psi' = (lambda1 - delta2 - d2 kappa1) Psi."""
    # --- setup ---
    params = dry_season_params(tau=4.7)
    sol = mod_eigen.lambda1_interval(params, -3.1, 3.1)
    k1 = sol.coeffs.kappa1
    step = 1e-4
    ts = np.linspace(0.1, params.tau - 0.1, 50)

    # --- execute ---
    phi_p, psi_p = sol.profile(ts + step)
    phi_m, psi_m = sol.profile(ts - step)
    phi, psi = sol.profile(ts)

    # --- verify ---
    np.testing.assert_allclose(
        (phi_p - phi_m) / (2.0 * step),
        (sol.lambda1 - params.delta1) * phi,
        rtol=1e-6,
    )
    np.testing.assert_allclose(
        (psi_p - psi_m) / (2.0 * step),
        (sol.lambda1 - params.delta2 - params.d2 * k1) * psi,
        rtol=1e-6,
    )
