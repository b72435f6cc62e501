# tests/30_eigen_analytic/test_lambda1_golden.py
"""Golden eigenvalues of the published scenarios (three-decimal values)."""

import pytest

import impulsive_fronts.eigen_analytic as mod_eigen
import impulsive_fronts.model as mod_model
from tests.utils import (
    GOLDEN_DISINFECTION_IDENTITY_45,
    GOLDEN_DISINFECTION_SATURATING_265,
    GOLDEN_DRY_SEASON_TAU3_50,
    GOLDEN_DRY_SEASON_TAU47_31,
    GOLDEN_TOL,
    disinfection_params,
    dry_season_params,
)


@pytest.mark.parametrize(
    ("params", "half_width", "expected"),
    [
        (disinfection_params(), 45.0, GOLDEN_DISINFECTION_IDENTITY_45),
        (
            disinfection_params(saturating=True),
            2.65,
            GOLDEN_DISINFECTION_SATURATING_265,
        ),
        (dry_season_params(tau=3.0), 50.0, GOLDEN_DRY_SEASON_TAU3_50),
        (dry_season_params(tau=4.7), 3.1, GOLDEN_DRY_SEASON_TAU47_31),
    ],
    ids=["identity-45", "saturating-2.65", "tau3-50", "tau4.7-3.1"],
)
def test_golden_lambda1(
    params: mod_model.ModelParams, half_width: float, expected: float
) -> None:
    """lambda1 on (-l, l) matches the published value within 0.01."""
    # --- execute ---
    sol = mod_eigen.lambda1_interval(params, -half_width, half_width)

    # --- verify ---
    assert sol.lambda1 == pytest.approx(expected, abs=GOLDEN_TOL)
    assert sol.length == pytest.approx(2.0 * half_width)
    assert sol.y > 0


@pytest.mark.parametrize(
    ("params", "half_width"),
    [
        (disinfection_params(), 45.0),
        (disinfection_params(saturating=True), 2.65),
        (dry_season_params(tau=3.0), 50.0),
        (dry_season_params(tau=4.7), 3.1),
        (dry_season_params(tau=4.7), 0.5),
    ],
)
def test_lambda1_agrees_with_floquet_exponent(
    params: mod_model.ModelParams, half_width: float
) -> None:
    """The mixing-coordinate root equals -ln(Perron root)/T of the period map."""
    # --- setup ---
    k1 = mod_eigen.kappa1(2.0 * half_width)

    # --- execute ---
    analytic = mod_eigen.lambda1_interval(params, -half_width, half_width).lambda1
    floquet = mod_eigen.lambda1_floquet(params, k1)

    # --- verify ---
    assert analytic == pytest.approx(floquet, abs=1e-8)


def test_only_the_interval_length_matters() -> None:
    """Shifting the interval leaves lambda1 unchanged."""
    # --- setup ---
    params = dry_season_params(tau=4.7)

    # --- execute ---
    centred = mod_eigen.lambda1_interval(params, -3.1, 3.1).lambda1
    shifted = mod_eigen.lambda1_interval(params, 10.0, 16.2).lambda1

    # --- verify ---
    assert shifted == pytest.approx(centred, abs=1e-12)


def test_nu1_is_the_homogeneous_floquet_exponent() -> None:
    """nu1 uses kappa1 = 0."""
    # --- setup ---
    params = disinfection_params()

    # --- execute ---
    limit = mod_eigen.nu1(params)

    # --- verify ---
    assert limit.coeffs.kappa1 == 0.0
    assert limit.length is None
    assert limit.lambda1 == pytest.approx(
        mod_eigen.lambda1_floquet(params, 0.0), abs=1e-8
    )
