"""
Unitary dilation of a Gaussian channel at the phase-space level

The channel matrix K is completed to a block symplectic map

    T = [[K,   L  ],
         [K_D, L_D]]  : (B + E) -> (A + D)

with T^T (Delta_A + Delta_D) T = Delta_B + Delta_E, where D carries the
environment state and E (same size as A) is the complementary output.
"""

import logging
from typing import Optional

import numpy as np

from errors import DilationInvariantError
from gaussian_states import DEFAULT_RANK_TOL, purity_report, uncertainty_gap
from symplectic import DEFAULT_TOL, direct_sum, form_matrix, max_residual, skew_canonical_factor
from .analysis import environment_state, noise_form
from .models import Dilation, GaussianChannel

logger = logging.getLogger(__name__)

DEFAULT_RESIDUAL_TOL = 1e-8


def _check(residuals: dict, name: str, value: float, bound: float) -> None:
    residuals[name] = float(value)
    if value > bound:
        logger.error(f"[DILATION] {name} residual {value:.3e} exceeds {bound:.3e}")
        raise DilationInvariantError(name, float(value), bound)


def dilate(
    ch: GaussianChannel,
    tol: float = DEFAULT_TOL,
    residual_tol: Optional[float] = None,
) -> Dilation:
    """Build K_D, L, L_D and T, asserting every block identity.

    M = Delta_A + Delta_A K K_D^{-1} Delta_D^{-1} K_D^{-T} K^T Delta_A is
    factored as G^T Delta_E G, L = G^{-1}, and
    L_D = -(K_D^T Delta_D)^{-1} K^T Delta_A L.

    Raises:
        DegenerateNoiseError: Delta_K is degenerate
        NotCompletelyPositiveError: the channel is not completely positive
        DilationInvariantError: an identity exceeds its residual bound
    """
    residual_tol = DEFAULT_RESIDUAL_TOL if residual_tol is None else residual_tol
    env = environment_state(ch, tol)
    K, K_D = ch.K, env.K_D
    delta_A = form_matrix(2 * ch.s_A)
    delta_D = form_matrix(2 * ch.s_B)
    delta_K = noise_form(ch, tol).delta_K

    K_D_inv = np.linalg.inv(K_D)
    delta_K_inv = K_D_inv @ np.linalg.inv(delta_D) @ K_D_inv.T
    M = delta_A + delta_A @ K @ delta_K_inv @ K.T @ delta_A
    M = 0.5 * (M - M.T)

    G = skew_canonical_factor(M, tol).factor
    L = np.linalg.inv(G)
    L_D = -np.linalg.solve(K_D.T @ delta_D, K.T @ delta_A @ L)
    T = np.block([[K, L], [K_D, L_D]])

    scale = max(1.0, float(np.max(np.abs(T)))) ** 2
    bound = residual_tol * scale
    residuals = {}
    _check(residuals, 'environment_form', max_residual(K_D.T @ delta_D @ K_D, delta_K), bound)
    _check(
        residuals, 'commutator_balance',
        max_residual(form_matrix(2 * ch.s_B), K.T @ delta_A @ K + K_D.T @ delta_D @ K_D), bound,
    )
    _check(
        residuals, 'block_symplectic',
        max_residual(T.T @ direct_sum(delta_A, delta_D) @ T, direct_sum(form_matrix(2 * ch.s_B), delta_A)), bound,
    )

    det_L = float(abs(np.linalg.det(L)))
    residuals['det_L'] = det_L
    if det_L <= tol:
        logger.error(f"[DILATION] |det L| = {det_L:.3e} is not bounded away from zero")
        raise DilationInvariantError('det_L', det_L, tol)

    gap = uncertainty_gap(env.state.alpha)
    _check(residuals, 'environment_validity', max(0.0, -gap), tol * max(1.0, float(np.max(np.abs(env.state.alpha)))))

    logger.debug(f"[DILATION] s_A={ch.s_A} s_B={ch.s_B} residuals={residuals}")
    return Dilation(K_D=K_D, L=L, L_D=L_D, T=T, env_state=env.state, residuals=residuals)


def complementary(ch: GaussianChannel, tol: float = DEFAULT_TOL) -> GaussianChannel:
    """Channel to the complementary output E: (L, L_D^T l_D, L_D^T alpha_D L_D)"""
    dilation = dilate(ch, tol)
    env = dilation.env_state
    mu = dilation.L_D.T @ env.alpha @ dilation.L_D
    return GaussianChannel(
        s_A=ch.s_A,
        s_B=ch.s_A,
        K=dilation.L,
        l=dilation.L_D.T @ env.l,
        mu=0.5 * (mu + mu.T),
    )


def environment_is_pure(
    ch: GaussianChannel,
    tol: float = DEFAULT_TOL,
    rank_tol: float = DEFAULT_RANK_TOL,
) -> bool:
    """True when the dilation environment is pure (the complement is then the weak complement)"""
    return purity_report(environment_state(ch, tol).state, tol, rank_tol).pure
