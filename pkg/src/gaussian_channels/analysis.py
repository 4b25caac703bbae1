"""
Channel analysis: noise commutator, complete positivity, environment state, extremality
"""

import logging

import numpy as np
from scipy.linalg import eigvalsh

from errors import (
    DegenerateNoiseError,
    InvalidStateError,
    NotCompletelyPositiveError,
    NotSymmetricError,
)
from gaussian_states import DEFAULT_RANK_TOL, GaussianState, purity_report, uncertainty_gap
from symplectic import DEFAULT_TOL, form_matrix, max_residual, skew_canonical_factor
from .models import (
    ChannelValidity,
    Environment,
    ExtremalityResult,
    GaussianChannel,
    NoiseForm,
    Verdict,
)

logger = logging.getLogger(__name__)


def noise_form(ch: GaussianChannel, tol: float = DEFAULT_TOL) -> NoiseForm:
    """Delta_K = Delta_B - K^T Delta_A K; nondegenerate when sigma_min > tol * ||Delta_K||_2"""
    delta_A = form_matrix(2 * ch.s_A)
    delta_B = form_matrix(2 * ch.s_B)
    delta_K = delta_B - ch.K.T @ delta_A @ ch.K
    singular_values = np.linalg.svd(delta_K, compute_uv=False)
    nondegenerate = bool(singular_values[0] > 0.0 and singular_values[-1] > tol * singular_values[0])
    return NoiseForm(
        delta_K=delta_K,
        nondegenerate=nondegenerate,
        smallest_singular_value=float(singular_values[-1]),
    )


def _checked_noise(ch: GaussianChannel, tol: float) -> np.ndarray:
    scale = max(1.0, float(np.max(np.abs(ch.mu))))
    if max_residual(ch.mu, ch.mu.T) > tol * scale:
        raise NotSymmetricError("noise matrix mu is not symmetric")
    return 0.5 * (ch.mu + ch.mu.T)


def validate_channel(ch: GaussianChannel, tol: float = DEFAULT_TOL) -> ChannelValidity:
    """Complete positivity: mu - (i/2) Delta_K >= 0 as a Hermitian matrix, to -tol"""
    mu = _checked_noise(ch, tol)
    form = noise_form(ch, tol)
    min_eigenvalue = float(eigvalsh(mu - 0.5j * form.delta_K)[0])
    return ChannelValidity(
        cp=min_eigenvalue >= -tol,
        nondegenerate=form.nondegenerate,
        min_eigenvalue=min_eigenvalue,
    )


def environment_state(ch: GaussianChannel, tol: float = DEFAULT_TOL) -> Environment:
    """Factor Delta_K = K_D^T Delta_D K_D and pull the noise back to an environment state.

    alpha_D = K_D^{-T} mu K_D^{-1}, l_D = K_D^{-T} l
    """
    form = noise_form(ch, tol)
    if not form.nondegenerate:
        raise DegenerateNoiseError(form.smallest_singular_value)
    validity = validate_channel(ch, tol)
    if not validity.cp:
        raise NotCompletelyPositiveError(
            f"mu >= (i/2) Delta_K fails (minimum eigenvalue {validity.min_eigenvalue:.3e})"
        )

    K_D = skew_canonical_factor(form.delta_K, tol).factor
    K_D_inv = np.linalg.inv(K_D)
    mu = _checked_noise(ch, tol)
    alpha_D = K_D_inv.T @ mu @ K_D_inv
    alpha_D = 0.5 * (alpha_D + alpha_D.T)
    l_D = K_D_inv.T @ ch.l

    delta_D = form_matrix(2 * ch.s_B)
    residual = max_residual(K_D.T @ delta_D @ K_D, form.delta_K)

    gap = uncertainty_gap(alpha_D)
    if gap < -tol * max(1.0, float(np.max(np.abs(alpha_D)))):
        raise InvalidStateError(f"environment covariance is not a valid state (minimum eigenvalue {gap:.3e})")

    logger.debug(f"[ENV] s_B={ch.s_B} K_D residual={residual:.2e} gap={gap:.2e}")
    return Environment(K_D=K_D, state=GaussianState(s=ch.s_B, l=l_D, alpha=alpha_D), residual=residual)


def is_extreme(
    ch: GaussianChannel,
    tol: float = DEFAULT_TOL,
    rank_tol: float = DEFAULT_RANK_TOL,
) -> ExtremalityResult:
    """A nondegenerate channel is extreme iff its environment state is pure"""
    try:
        env = environment_state(ch, tol)
    except DegenerateNoiseError as e:
        logger.warning(f"[EXTREMALITY] {e}")
        return ExtremalityResult(verdict=Verdict.INDETERMINATE, reason=str(e))

    report = purity_report(env.state, tol, rank_tol)
    if not report.consensus:
        logger.warning(f"[EXTREMALITY] purity conditions disagree: {report.verdicts}")
    verdict = Verdict.EXTREME if report.pure else Verdict.NOT_EXTREME
    reason = "environment state is pure" if report.pure else "environment state is mixed"
    return ExtremalityResult(verdict=verdict, evidence=report, reason=reason)
