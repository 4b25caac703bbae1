"""
Characteristic functions and the inversion formula on the truncated Fock space

Batched evaluations share one frame: with (x, y) = t (cos theta, sin theta),
x q + y p = t e^{i theta N} q e^{-i theta N}, so

    W(z)_mn = e^{i theta (m - n)} sum_k V_mk V_nk e^{i t lambda_k}

where q = V diag(lambda) V^T. Sums over grid points are done in chunks of a
fixed size and a fixed order, so results are reproducible.
"""

import logging
from dataclasses import dataclass
from typing import Callable, Optional, Tuple

import numpy as np

from errors import OracleInputError
from .operators import FockOperator, polar, quadrature_frame, weyl

logger = logging.getLogger(__name__)

DEFAULT_CHUNK_SIZE = 4096
DEFAULT_MIN_EXTENT = 6.0
DEFAULT_MAX_STEP = 0.1
DEFAULT_TAIL_THRESHOLD = 0.05
NORMALIZATION_TOL = 1e-10


def _require_normalized(rho: FockOperator) -> None:
    trace = rho.trace()
    if abs(trace - 1.0) > NORMALIZATION_TOL:
        raise OracleInputError(f"operator is not trace-normalized (trace {trace:.12g})")


def char_fn(rho: FockOperator, z: np.ndarray) -> complex:
    """phi(z) = Tr rho W(z)"""
    _require_normalized(rho)
    return complex(np.sum(rho.matrix * weyl(z, rho.n_max).matrix.T))


def _offset_profiles(matrix: np.ndarray, V: np.ndarray) -> np.ndarray:
    """E[d, k] = sum_{m - n = d} matrix[n, m] V[m, k] V[n, k] for d = -n_max..n_max"""
    N = matrix.shape[0]
    E = np.zeros((2 * N - 1, N), dtype=complex)
    for d in range(-(N - 1), N):
        k = abs(d)
        diagonal = np.diagonal(matrix, offset=d)
        E[d + N - 1] = (diagonal[:, None] * V[k:] * V[:N - k]).sum(axis=0)
    return E


def trace_with_weyl(
    operator: FockOperator,
    points: np.ndarray,
    chunk_size: int = DEFAULT_CHUNK_SIZE,
) -> np.ndarray:
    """Tr(X W(z_g)) for every row z_g of points, no normalization requirement"""
    eigenvalues, V = quadrature_frame(operator.n_max)
    N = operator.dim
    offsets = np.arange(-(N - 1), N)
    E = _offset_profiles(operator.matrix, V)
    t, theta = polar(points)
    out = np.empty(t.shape[0], dtype=complex)
    for start in range(0, t.shape[0], chunk_size):
        stop = min(start + chunk_size, t.shape[0])
        P = np.exp(1j * theta[start:stop, None] * offsets[None, :])
        Q = np.exp(1j * t[start:stop, None] * eigenvalues[None, :])
        out[start:stop] = np.sum((P @ E) * Q, axis=1)
    return out


def char_fn_batch(
    rho: FockOperator,
    points: np.ndarray,
    chunk_size: int = DEFAULT_CHUNK_SIZE,
) -> np.ndarray:
    """phi(z_g) for a stack of points (shape (G, 2))"""
    _require_normalized(rho)
    return trace_with_weyl(rho, points, chunk_size)


def weyl_superposition(
    weights: np.ndarray,
    points: np.ndarray,
    n_max: int,
    chunk_size: int = DEFAULT_CHUNK_SIZE,
) -> FockOperator:
    """sum_g w_g W(z_g)"""
    eigenvalues, V = quadrature_frame(n_max)
    N = n_max + 1
    offsets = np.arange(-(N - 1), N)
    weights = np.asarray(weights, dtype=complex).reshape(-1)
    t, theta = polar(points)
    if weights.shape[0] != t.shape[0]:
        raise OracleInputError(f"{weights.shape[0]} weights for {t.shape[0]} points")

    C = np.zeros((2 * N - 1, N), dtype=complex)
    for start in range(0, t.shape[0], chunk_size):
        stop = min(start + chunk_size, t.shape[0])
        B = weights[start:stop, None] * np.exp(1j * theta[start:stop, None] * offsets[None, :])
        A = np.exp(1j * t[start:stop, None] * eigenvalues[None, :])
        C += B.T @ A

    out = np.zeros((N, N), dtype=complex)
    for d in range(-(N - 1), N):
        k = abs(d)
        values = (V[k:] * V[:N - k]) @ C[d + N - 1]
        index = np.arange(N - k)
        if d >= 0:
            out[index + d, index] = values
        else:
            out[index, index + k] = values
    return FockOperator(n_max, out)


def make_grid(
    extent: float,
    step: float,
    min_extent: float = DEFAULT_MIN_EXTENT,
    max_step: float = DEFAULT_MAX_STEP,
) -> Tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Uniform square grid on [-extent, extent]^2 with 2-D trapezoid weights.

    Returns (axis, points, weights); points are ordered x-major, weights include step^2.
    """
    if not extent >= min_extent:
        raise OracleInputError(f"grid extent {extent} is below the minimum {min_extent}")
    if not 0 < step <= max_step:
        raise OracleInputError(f"grid step {step} must lie in (0, {max_step}]")
    n = int(round(2.0 * extent / step)) + 1
    axis = np.linspace(-extent, extent, n)
    h = axis[1] - axis[0]
    w = np.full(n, h)
    w[[0, -1]] = 0.5 * h
    X, Y = np.meshgrid(axis, axis, indexing='ij')
    points = np.column_stack([X.ravel(), Y.ravel()])
    return axis, points, np.outer(w, w).ravel()


@dataclass
class CharFnGrid:
    """Samples of a characteristic function on the square grid of make_grid"""
    extent: float
    step: float
    values: np.ndarray

    @classmethod
    def from_function(
        cls,
        fn: Callable[[np.ndarray], np.ndarray],
        extent: float,
        step: float,
        min_extent: float = DEFAULT_MIN_EXTENT,
        max_step: float = DEFAULT_MAX_STEP,
    ) -> "CharFnGrid":
        axis, points, _ = make_grid(extent, step, min_extent, max_step)
        values = np.asarray(fn(points), dtype=complex).reshape(axis.size, axis.size)
        return cls(extent=extent, step=step, values=values)

    @classmethod
    def from_operator(
        cls,
        rho: FockOperator,
        extent: float,
        step: float,
        chunk_size: int = DEFAULT_CHUNK_SIZE,
        min_extent: float = DEFAULT_MIN_EXTENT,
        max_step: float = DEFAULT_MAX_STEP,
    ) -> "CharFnGrid":
        return cls.from_function(lambda pts: char_fn_batch(rho, pts, chunk_size), extent, step, min_extent, max_step)

    def boundary_max(self) -> float:
        v = np.abs(self.values)
        return float(max(v[0].max(), v[-1].max(), v[:, 0].max(), v[:, -1].max()))


def inverse_fourier(
    grid: CharFnGrid,
    n_max: int,
    chunk_size: int = DEFAULT_CHUNK_SIZE,
    min_extent: float = DEFAULT_MIN_EXTENT,
    max_step: float = DEFAULT_MAX_STEP,
    tail_threshold: Optional[float] = DEFAULT_TAIL_THRESHOLD,
) -> FockOperator:
    """tau = (2 pi)^{-1} sum_g w_g phi(z_g) W(-z_g), trapezoid weights w_g.

    Rejects grids that are too small or too coarse, and functions whose
    magnitude on the grid boundary exceeds tail_threshold.
    """
    axis, points, weights = make_grid(grid.extent, grid.step, min_extent, max_step)
    if grid.values.shape != (axis.size, axis.size):
        raise OracleInputError(f"grid values have shape {grid.values.shape}, expected {(axis.size, axis.size)}")
    if tail_threshold is not None and grid.boundary_max() > tail_threshold:
        raise OracleInputError(
            f"characteristic function is not negligible on the grid boundary "
            f"(max {grid.boundary_max():.3e} > {tail_threshold}); widen the grid"
        )
    coefficients = grid.values.ravel() * weights / (2.0 * np.pi)
    logger.debug(f"[FOURIER] n_max={n_max} points={points.shape[0]} boundary={grid.boundary_max():.2e}")
    return weyl_superposition(coefficients, -points, n_max, chunk_size)
