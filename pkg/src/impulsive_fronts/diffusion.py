# src/impulsive_fronts/diffusion.py
"""Tridiagonal theta-scheme machinery for 1D Dirichlet diffusion.

All grids here carry interior nodes only; the boundary values are zero. The
operator for one component is `w * (x[i-1] - 2 x[i] + x[i+1]) - shift * x[i]`
with `w = d / h**2`. A theta step solves

    (I - theta dt Op_new) x_new = (I + (1 - theta) dt Op_old) x_old + dt src

where the implicit and explicit weights may differ (moving domains rescale the
diffusion weight every step). theta = 0.5 is Crank-Nicolson, theta = 1 is
backward Euler.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np
from scipy.linalg import solve_banded

from .errors import ParameterError
from .model import FloatArray


CRANK_NICOLSON = 0.5
BACKWARD_EULER = 1.0


def apply_laplacian(x: FloatArray, w: float) -> FloatArray:
    """w * second difference of `x` with zero Dirichlet ends."""
    out = -2.0 * x
    out[1:] += x[:-1]
    out[:-1] += x[1:]
    return w * out


def implicit_bands(
    n: int, w: float, shift: float, dt: float, theta: float
) -> FloatArray:
    """Banded (1, 1) storage of I - theta*dt*(w*Lap - shift) for solve_banded."""
    ab = np.empty((3, n), dtype=np.float64)
    off = -theta * dt * w
    ab[0, :] = off
    ab[1, :] = 1.0 + theta * dt * (2.0 * w + shift)
    ab[2, :] = off
    ab[0, 0] = 0.0
    ab[2, -1] = 0.0
    return ab


def solve_tridiagonal(ab: FloatArray, rhs: FloatArray) -> FloatArray:
    return np.asarray(
        solve_banded((1, 1), ab, rhs, overwrite_b=False, check_finite=False),
        dtype=np.float64,
    )


def theta_step(  # noqa: PLR0913
    x: FloatArray,
    *,
    w_new: float,
    w_old: float,
    dt: float,
    shift: float = 0.0,
    theta: float = CRANK_NICOLSON,
    source: FloatArray | None = None,
) -> FloatArray:
    """One theta-scheme step with separate implicit/explicit diffusion weights."""
    rhs = x.copy()
    if theta < 1.0:
        rhs += (1.0 - theta) * dt * (apply_laplacian(x, w_old) - shift * x)
    if source is not None:
        rhs += dt * source
    return solve_tridiagonal(implicit_bands(x.size, w_new, shift, dt, theta), rhs)


@dataclass(frozen=True)
class FixedDiffusion:
    """Theta stepper for a fixed grid; the banded matrix is built once."""

    n: int
    w: float
    shift: float
    dt: float
    theta: float = CRANK_NICOLSON
    _bands: FloatArray = field(init=False, repr=False, compare=False)

    def __post_init__(self) -> None:
        if self.n < 1 or self.dt <= 0:
            msg = f"need n >= 1 and dt > 0 (got n={self.n}, dt={self.dt})"
            raise ParameterError(msg)
        bands = implicit_bands(self.n, self.w, self.shift, self.dt, self.theta)
        object.__setattr__(self, "_bands", bands)

    def step(self, x: FloatArray, source: FloatArray | None = None) -> FloatArray:
        rhs = x.copy()
        if self.theta < 1.0:
            rhs += (1.0 - self.theta) * self.dt * (
                apply_laplacian(x, self.w) - self.shift * x
            )
        if source is not None:
            rhs += self.dt * source
        return solve_tridiagonal(self._bands, rhs)


@dataclass(frozen=True)
class BlockDiffusion:
    """Theta stepper for independent components stacked end to end.

    Component i occupies x[i*n:(i+1)*n] with weight `weights[i]`; the blocks
    share one banded matrix, so a single solve advances all of them.
    """

    n: int
    weights: tuple[float, ...]
    dt: float
    theta: float = CRANK_NICOLSON
    _bands: FloatArray = field(init=False, repr=False, compare=False)

    def __post_init__(self) -> None:
        if self.n < 1 or self.dt <= 0 or not self.weights:
            msg = (
                f"need n >= 1, dt > 0 and at least one block "
                f"(got n={self.n}, dt={self.dt}, blocks={len(self.weights)})"
            )
            raise ParameterError(msg)
        bands = np.hstack(
            [implicit_bands(self.n, w, 0.0, self.dt, self.theta) for w in self.weights]
        )
        object.__setattr__(self, "_bands", bands)

    @property
    def monotone(self) -> bool:
        """Whether a step maps non-negative data to non-negative data."""
        return (1.0 - self.theta) * self.dt * 2.0 * max(self.weights) <= 1.0

    def step(self, x: FloatArray) -> FloatArray:
        rhs = x.copy()
        if self.theta < 1.0:
            blocks = x.reshape(len(self.weights), self.n)
            lap = [
                apply_laplacian(b, w) for b, w in zip(blocks, self.weights, strict=True)
            ]
            rhs += (1.0 - self.theta) * self.dt * np.concatenate(lap)
        return solve_tridiagonal(self._bands, rhs)

# --- Sine-mode representation -------------------------------------------------


def dirichlet_eigenvalues(n: int, length: float) -> FloatArray:
    """Eigenvalues kappa_j of -Lap_h on n interior nodes of an interval.

    kappa_j = (4 / h**2) * sin(j pi h / (2 L))**2 with h = L / (n + 1); these
    converge to (j pi / L)**2 at second order in h.
    """
    h = length / (n + 1)
    j = np.arange(1, n + 1, dtype=np.float64)
    return (4.0 / h**2) * np.sin(j * np.pi * h / (2.0 * length)) ** 2


def sine_mode(n: int, j: int = 1) -> FloatArray:
    """Grid samples of sin(j pi (x - l1) / L) at the interior nodes."""
    i = np.arange(1, n + 1, dtype=np.float64)
    return np.sin(j * np.pi * i / (n + 1))
