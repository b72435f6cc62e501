# tests/40_eigen_discrete/test_diffusion.py
"""Tests for the tridiagonal theta scheme, sine modes and the block stepper."""

import numpy as np
import pytest

import impulsive_fronts.diffusion as mod_diffusion
import impulsive_fronts.errors as mod_errors


def test_sine_mode_is_a_laplacian_eigenvector() -> None:
    """Lap_h sin(j pi x / L) = -kappa_j sin(j pi x / L) on the grid."""
    # --- setup ---
    n, length = 31, 5.0
    h = length / (n + 1)
    mode = mod_diffusion.sine_mode(n, 2)
    kappa = mod_diffusion.dirichlet_eigenvalues(n, length)

    # --- execute ---
    image = mod_diffusion.apply_laplacian(mode, 1.0 / h**2)

    # --- verify ---
    np.testing.assert_allclose(image, -kappa[1] * mode, atol=1e-10)


def test_discrete_eigenvalues_converge_to_continuum() -> None:
    """kappa_1 approaches (pi / L)^2 as the grid refines."""
    # --- execute ---
    coarse = mod_diffusion.dirichlet_eigenvalues(15, 2.0)[0]
    fine = mod_diffusion.dirichlet_eigenvalues(255, 2.0)[0]

    # --- verify ---
    exact = (np.pi / 2.0) ** 2
    assert abs(fine - exact) < abs(coarse - exact)
    assert fine == pytest.approx(exact, rel=1e-4)


def test_block_step_matches_separate_steps() -> None:
    """Stacked blocks advance exactly as independent single-block steps."""
    # --- setup ---
    n, dt = 12, 0.02
    weights = (3.0, 40.0)
    rng = np.random.default_rng(7)
    x = rng.random(2 * n)
    stepper = mod_diffusion.BlockDiffusion(n, weights, dt)

    # --- execute ---
    out = stepper.step(x)

    # --- verify ---
    for i, w in enumerate(weights):
        block = slice(i * n, (i + 1) * n)
        single = mod_diffusion.theta_step(x[block], w_new=w, w_old=w, dt=dt)
        np.testing.assert_allclose(out[block], single, rtol=1e-12, atol=1e-14)


def test_block_monotone_threshold() -> None:
    """Crank-Nicolson is monotone while dt times the largest weight is <= 1."""
    # --- execute ---
    small = mod_diffusion.BlockDiffusion(8, (1.0, 10.0), 0.02)
    large = mod_diffusion.BlockDiffusion(8, (1.0, 10.0), 0.2)

    # --- verify ---
    assert small.monotone
    assert not large.monotone


@pytest.mark.parametrize(
    "theta", [mod_diffusion.CRANK_NICOLSON, mod_diffusion.BACKWARD_EULER]
)
def test_theta_step_damps_the_first_mode(theta: float) -> None:
    """One step multiplies a sine mode by the scheme's amplification factor."""
    # --- setup ---
    n, w, dt, shift = 15, 4.0, 0.05, 0.3
    mode = mod_diffusion.sine_mode(n)
    lam = -w * (2.0 - 2.0 * np.cos(np.pi / (n + 1))) - shift
    factor = (1.0 + (1.0 - theta) * dt * lam) / (1.0 - theta * dt * lam)

    # --- execute ---
    out = mod_diffusion.theta_step(
        mode, w_new=w, w_old=w, dt=dt, shift=shift, theta=theta
    )

    # --- verify ---
    np.testing.assert_allclose(out, factor * mode, atol=1e-12)


def test_fixed_backward_euler_keeps_positive_data_positive() -> None:
    """Backward Euler is order preserving at any step size."""
    # --- setup ---
    stepper = mod_diffusion.FixedDiffusion(
        10, w=100.0, shift=1.0, dt=1.0, theta=mod_diffusion.BACKWARD_EULER
    )
    x = np.zeros(10)
    x[0] = 1.0

    # --- execute ---
    out = stepper.step(x, source=np.full(10, 0.1))

    # --- verify ---
    assert (out > 0).all()


def test_fixed_diffusion_rejects_bad_arguments() -> None:
    """A zero step or an empty grid is refused."""
    # --- execute and verify ---
    with pytest.raises(mod_errors.ParameterError):
        mod_diffusion.FixedDiffusion(10, w=1.0, shift=0.0, dt=0.0)


def test_block_diffusion_rejects_empty_blocks() -> None:
    """At least one block is required."""
    # --- execute and verify ---
    with pytest.raises(mod_errors.ParameterError):
        mod_diffusion.BlockDiffusion(10, (), 0.1)
