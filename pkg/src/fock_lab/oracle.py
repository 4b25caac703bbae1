"""
Brute-force checks of one-mode Gaussian channel identities in the Fock basis
"""

import logging
from typing import Callable, Optional, Tuple

import numpy as np
from scipy.linalg import eigvalsh

from errors import InvalidStateError, OracleInputError
from gaussian_channels import GaussianChannel, apply, dual
from gaussian_states import GaussianState
from .operators import FockOperator, levels_for, quadratures
from .states import gaussian_operator
from .transforms import (
    DEFAULT_CHUNK_SIZE,
    DEFAULT_MAX_STEP,
    DEFAULT_MIN_EXTENT,
    DEFAULT_TAIL_THRESHOLD,
    CharFnGrid,
    char_fn_batch,
    inverse_fourier,
    make_grid,
    trace_with_weyl,
    weyl_superposition,
)

logger = logging.getLogger(__name__)

MAX_SAMPLE_POINTS = 64
NEGLIGIBLE = 1e-15

DEFAULT_MARGIN = 5.0
DEFAULT_TAIL_MASS = 1e-9
DEFAULT_MAX_LEVELS = 800
DEFAULT_TRACE_TOL = 1e-7


def _require_one_mode(ch: GaussianChannel) -> None:
    if ch.s_A != 1 or ch.s_B != 1:
        raise OracleInputError(f"oracle is one-mode only (channel has s_A={ch.s_A}, s_B={ch.s_B})")


def disk_samples(n: int, radius: float, seed: Optional[int] = None) -> np.ndarray:
    """n points drawn uniformly from the disk |z| <= radius"""
    rng = np.random.default_rng(seed)
    r = radius * np.sqrt(rng.uniform(size=n))
    theta = rng.uniform(0.0, 2.0 * np.pi, size=n)
    return np.column_stack([r * np.cos(theta), r * np.sin(theta)])


def _gaussian_moments(tau: FockOperator) -> Optional[Tuple[np.ndarray, np.ndarray]]:
    """Mean and symmetrized covariance of tau / Tr(tau), or None when the trace vanishes"""
    n = tau.n_max + 1
    X = tau.embed(n).matrix
    trace = np.trace(X)
    if abs(trace) <= NEGLIGIBLE:
        return None
    ops = quadratures(n)
    mean = np.array([np.real(np.trace(X @ o) / trace) for o in ops])
    second = np.array([
        [np.real(np.trace(X @ (ops[i] @ ops[j] + ops[j] @ ops[i])) / (2.0 * trace)) for j in range(2)]
        for i in range(2)
    ])
    return mean, second - np.outer(mean, mean)


def image_levels(
    ch: GaussianChannel,
    tau: FockOperator,
    tail_mass: float = DEFAULT_TAIL_MASS,
    max_levels: int = DEFAULT_MAX_LEVELS,
) -> int:
    """Truncation holding all but tail_mass of Phi[tau] / Tr(Phi[tau]).

    The image is Gaussian-like with moments (K_d^T m + l_d, K_d^T alpha K_d + mu_d)
    under the dual channel; its tail is bounded by the thermal state with
    nbar = lambda_max - 1/2 + |m|^2 / 2.
    """
    if not 0 < tail_mass < 1:
        raise OracleInputError(f"tail_mass must lie in (0, 1), got {tail_mass}")
    moments = _gaussian_moments(tau)
    if moments is None:
        return tau.n_max
    mean, alpha = moments
    dual_channel = dual(ch).channel
    mean_out = dual_channel.K.T @ mean + dual_channel.l
    alpha_out = dual_channel.K.T @ alpha @ dual_channel.K + dual_channel.mu
    nbar = float(eigvalsh(0.5 * (alpha_out + alpha_out.T))[-1]) - 0.5 + 0.5 * float(mean_out @ mean_out)
    if nbar <= 0:
        return tau.n_max
    levels = np.log(tail_mass) / np.log(nbar / (nbar + 1.0))
    if not np.isfinite(levels) or levels > max_levels:
        raise OracleInputError(
            f"Heisenberg image needs about {levels:.0f} levels (nbar {nbar:.3g}), above max_levels={max_levels}"
        )
    return max(tau.n_max, int(np.ceil(levels)))


def _reach(points: np.ndarray, values: np.ndarray) -> float:
    """Largest |z| among points where |values| is not negligible"""
    magnitude = np.abs(values)
    peak = np.max(magnitude) if magnitude.size else 0.0
    if peak == 0:
        return 0.0
    significant = magnitude > NEGLIGIBLE * peak
    return float(np.max(np.hypot(points[significant, 0], points[significant, 1])))


def heisenberg_image(
    ch: GaussianChannel,
    tau: FockOperator,
    extent: float,
    step: float,
    n_max: Optional[int] = None,
    margin: float = DEFAULT_MARGIN,
    chunk_size: int = DEFAULT_CHUNK_SIZE,
    min_extent: float = DEFAULT_MIN_EXTENT,
    max_step: float = DEFAULT_MAX_STEP,
    tail_threshold: float = DEFAULT_TAIL_THRESHOLD,
) -> FockOperator:
    """Phi[tau] = (2 pi)^{-1} sum_g w_g Tr(tau W(z_g)) f(-z_g) W(-K z_g), kept on n_max levels.

    Both Weyl sums run at levels_for(..., reach, margin) so the truncated Weyl
    operators are faithful wherever the integrand is not negligible.
    """
    _require_one_mode(ch)
    if not margin > 0:
        raise OracleInputError(f"margin must be positive, got {margin}")
    n_keep = tau.n_max if n_max is None else int(n_max)
    if n_keep < 2:
        raise OracleInputError(f"n_max must be at least 2, got {n_max}")
    axis, points, weights = make_grid(extent, step, min_extent, max_step)

    noise = ch.noise_function(-points)
    tau_wide = tau.embed(levels_for(tau.n_max, _reach(points, noise), margin))
    integrand = trace_with_weyl(tau_wide, points, chunk_size) * noise
    boundary = CharFnGrid(extent, step, integrand.reshape(axis.size, axis.size)).boundary_max()
    if boundary > tail_threshold * max(1.0, abs(tau.trace())):
        raise OracleInputError(f"Heisenberg integrand is not negligible on the grid boundary ({boundary:.3e})")

    shifted = -(points @ ch.K.T)
    n_work = levels_for(n_keep, _reach(shifted, integrand), margin)
    logger.debug(f"[ORACLE] Heisenberg image: tau at {tau_wide.n_max}, sum at {n_work}, kept {n_keep}")
    image = weyl_superposition(integrand * weights / (2.0 * np.pi), shifted, n_work, chunk_size)
    return FockOperator(n_keep, image.block(n_keep + 1))


def verify_apply(
    ch: GaussianChannel,
    rho_in: FockOperator,
    extent: float,
    step: float,
    block_dim: int = 10,
    input_state: Optional[GaussianState] = None,
    expected: Optional[FockOperator] = None,
    chunk_size: int = DEFAULT_CHUNK_SIZE,
    min_extent: float = DEFAULT_MIN_EXTENT,
    max_step: float = DEFAULT_MAX_STEP,
    tail_threshold: float = DEFAULT_TAIL_THRESHOLD,
) -> float:
    """Reconstruct the output from phi_out(z) = phi_in(K z) f(z) and compare on the low block.

    With input_state the reference is the predicted output state built directly
    in the Fock basis (gaussian_operator); otherwise expected is compared.
    """
    _require_one_mode(ch)
    if input_state is None and expected is None:
        raise OracleInputError("verify_apply needs a Gaussian input description or an expected output")

    axis, points, _ = make_grid(extent, step, min_extent, max_step)
    phi_out = char_fn_batch(rho_in, points @ ch.K.T, chunk_size) * ch.noise_function(points)
    grid = CharFnGrid(extent, step, phi_out.reshape(axis.size, axis.size))
    rho_out = inverse_fourier(grid, rho_in.n_max, chunk_size, min_extent, max_step, tail_threshold)

    if input_state is not None:
        try:
            reference = gaussian_operator(apply(ch, input_state), rho_in.n_max)
        except InvalidStateError as e:
            raise OracleInputError(f"predicted output is not a Gaussian operator: {e}")
    else:
        reference = expected

    size = min(block_dim, rho_out.dim, reference.dim)
    residual = float(np.max(np.abs(rho_out.block(size) - reference.block(size))))
    logger.debug(f"[ORACLE] verify_apply residual={residual:.3e} on {size}x{size} block")
    return residual


def verify_duality(
    ch: GaussianChannel,
    tau: FockOperator,
    z_samples: np.ndarray,
    extent: float,
    step: float,
    margin: float = DEFAULT_MARGIN,
    tail_mass: float = DEFAULT_TAIL_MASS,
    max_levels: int = DEFAULT_MAX_LEVELS,
    trace_tol: float = DEFAULT_TRACE_TOL,
    chunk_size: int = DEFAULT_CHUNK_SIZE,
    min_extent: float = DEFAULT_MIN_EXTENT,
    max_step: float = DEFAULT_MAX_STEP,
    tail_threshold: float = DEFAULT_TAIL_THRESHOLD,
) -> float:
    """max_z |Tr(Phi[tau] W(z)) - |det K|^{-1} Tr(tau W(K^{-1} z)) f(-K^{-1} z)|.

    Phi[tau] is kept on image_levels(...) levels. Before any sample is compared
    its trace must match |det K|^{-1} Tr(tau) within trace_tol (relative);
    a shortfall raises OracleInputError instead of reporting a misleading error.
    """
    _require_one_mode(ch)
    if not margin > 0:
        raise OracleInputError(f"margin must be positive, got {margin}")
    dual_channel = dual(ch)
    z_samples = np.atleast_2d(np.asarray(z_samples, dtype=float))

    n_keep = image_levels(ch, tau, tail_mass, max_levels)
    image = heisenberg_image(
        ch, tau, extent, step, n_keep, margin, chunk_size, min_extent, max_step, tail_threshold
    )
    expected_trace = dual_channel.scale * tau.trace()
    shortfall = abs(image.trace() - expected_trace)
    if shortfall > trace_tol * max(1.0, abs(expected_trace)):
        raise OracleInputError(
            f"Heisenberg image on {n_keep + 1} levels has trace {image.trace().real:.10g}, "
            f"expected {expected_trace.real:.10g}; lower tail_mass or raise max_levels"
        )

    sample_reach = float(np.max(np.hypot(z_samples[:, 0], z_samples[:, 1])))
    lhs = trace_with_weyl(image.embed(levels_for(n_keep, sample_reach, margin)), z_samples, chunk_size)

    w = z_samples @ dual_channel.channel.K.T
    w_reach = float(np.max(np.hypot(w[:, 0], w[:, 1])))
    tau_wide = tau.embed(levels_for(tau.n_max, w_reach, margin))
    rhs = dual_channel.scale * trace_with_weyl(tau_wide, w, chunk_size) * ch.noise_function(-w)
    error = float(np.max(np.abs(lhs - rhs)))
    logger.debug(
        f"[ORACLE] verify_duality max error={error:.3e} over {z_samples.shape[0]} samples, image on {n_keep + 1} levels"
    )
    return error



def sample_nonneg_definite(
    f: Callable[[np.ndarray], np.ndarray],
    delta_K: np.ndarray,
    z_points: np.ndarray,
) -> float:
    """Minimum eigenvalue of M_rs = f(z_r - z_s) exp((i/2) z_r^T Delta_K z_s)"""
    z_points = np.atleast_2d(np.asarray(z_points, dtype=float))
    delta_K = np.asarray(delta_K, dtype=float)
    n, dim = z_points.shape
    if not 1 <= n <= MAX_SAMPLE_POINTS:
        raise OracleInputError(f"sampling needs between 1 and {MAX_SAMPLE_POINTS} points, got {n}")
    if delta_K.shape != (dim, dim):
        raise OracleInputError(f"Delta_K of shape {delta_K.shape} does not match {dim}-dimensional points")
    differences = (z_points[:, None, :] - z_points[None, :, :]).reshape(-1, dim)
    values = np.asarray(f(differences), dtype=complex).reshape(n, n)
    M = values * np.exp(0.5j * (z_points @ delta_K @ z_points.T))
    return float(eigvalsh(0.5 * (M + M.conj().T))[0])


def search_negativity(
    f: Callable[[np.ndarray], np.ndarray],
    delta_K: np.ndarray,
    n_points: int = 16,
    attempts: int = 100,
    radius: float = 1.5,
    seed: Optional[int] = 0,
) -> Tuple[float, int]:
    """Most negative sample_nonneg_definite value over seeded random point sets, with its attempt index"""
    rng = np.random.default_rng(seed)
    dim = np.asarray(delta_K).shape[0]
    worst, worst_attempt = np.inf, -1
    for attempt in range(attempts):
        points = rng.uniform(-radius, radius, size=(n_points, dim))
        value = sample_nonneg_definite(f, delta_K, points)
        if value < worst:
            worst, worst_attempt = value, attempt
    logger.debug(f"[ORACLE] negativity search: min eigenvalue {worst:.3e} at attempt {worst_attempt}")
    return worst, worst_attempt
