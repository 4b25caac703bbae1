"""
Channel algebra: duality, action on states, composition, standard families
"""

import logging
from typing import Optional, Union

import numpy as np

from errors import (
    DegenerateNoiseError,
    DimensionMismatchError,
    DualityUndefinedError,
    GaussianAnalysisError,
    InvalidParameterError,
    InvalidStateError,
)
from gaussian_states import GaussianState, random_state, uncertainty_gap, validate_state
from symplectic import DEFAULT_TOL, form_matrix, skew_canonical_factor
from .analysis import noise_form, validate_channel
from .models import ChannelKind, DualChannel, GaussianChannel

logger = logging.getLogger(__name__)


def dual(ch: GaussianChannel, tol: float = DEFAULT_TOL) -> DualChannel:
    """(K^{-1}, -K^{-T} l, K^{-T} mu K^{-1}) with scale |det K|^{-1}"""
    if ch.s_A != ch.s_B:
        raise DualityUndefinedError(f"duality undefined: K is {ch.K.shape[0]}x{ch.K.shape[1]}, not square")
    singular_values = np.linalg.svd(ch.K, compute_uv=False)
    if singular_values[-1] <= tol * max(1.0, singular_values[0]):
        raise DualityUndefinedError(
            f"duality undefined: K is singular (smallest singular value {singular_values[-1]:.3e})"
        )
    K_hat = np.linalg.inv(ch.K)
    mu_hat = K_hat.T @ ch.mu @ K_hat
    channel = GaussianChannel(
        s_A=ch.s_A,
        s_B=ch.s_B,
        K=K_hat,
        l=-K_hat.T @ ch.l,
        mu=0.5 * (mu_hat + mu_hat.T),
    )
    return DualChannel(channel=channel, scale=float(1.0 / abs(np.linalg.det(ch.K))))


def apply(ch: GaussianChannel, state: GaussianState, tol: float = DEFAULT_TOL) -> GaussianState:
    """Schroedinger action: l -> K^T l + l_ch, alpha -> K^T alpha K + mu"""
    if state.s != ch.s_A:
        raise DimensionMismatchError(f"channel expects {ch.s_A} input modes, state has {state.s}")
    alpha = ch.K.T @ state.alpha @ ch.K + ch.mu
    out = GaussianState(s=ch.s_B, l=ch.K.T @ state.l + ch.l, alpha=0.5 * (alpha + alpha.T))

    if validate_state(state.l, state.alpha, tol) and validate_channel(ch, tol).cp:
        gap = uncertainty_gap(out.alpha)
        if gap < -tol * max(1.0, float(np.max(np.abs(out.alpha)))):
            raise InvalidStateError(f"cp channel produced an invalid state (minimum eigenvalue {gap:.3e})")
    return out


def compose(ch_AB: GaussianChannel, ch_BC: GaussianChannel) -> GaussianChannel:
    """Channel A -> C: states pass through ch_AB, then ch_BC.

    In the Heisenberg picture this is Phi_AB o Phi_BC:
    K = K_AB K_BC, l = K_BC^T l_AB + l_BC, mu = K_BC^T mu_AB K_BC + mu_BC.
    """
    if ch_AB.s_B != ch_BC.s_A:
        raise DimensionMismatchError(
            f"cannot chain: first channel outputs {ch_AB.s_B} modes, second expects {ch_BC.s_A}"
        )
    mu = ch_BC.K.T @ ch_AB.mu @ ch_BC.K + ch_BC.mu
    return GaussianChannel(
        s_A=ch_AB.s_A,
        s_B=ch_BC.s_B,
        K=ch_AB.K @ ch_BC.K,
        l=ch_BC.K.T @ ch_AB.l + ch_BC.l,
        mu=0.5 * (mu + mu.T),
    )


def catalog(kind: Union[str, ChannelKind], **params) -> GaussianChannel:
    """One-mode families.

    attenuator(eta, nbar=0):  K = sqrt(eta) I, mu = (1 - eta)(nbar + 1/2) I, 0 < eta < 1
    amplifier(g, nbar=0):     K = sqrt(g) I,   mu = (g - 1)(nbar + 1/2) I,   g > 1
    classical_noise(nu):      K = I,           mu = nu I,                    nu >= 0
    """
    try:
        kind = ChannelKind(kind)
    except ValueError:
        raise InvalidParameterError(f"unknown channel kind: {kind!r}")

    try:
        values = {key: float(value) for key, value in params.items()}
    except (TypeError, ValueError):
        raise InvalidParameterError(f"channel parameters must be real numbers, got {params!r}")
    if not all(np.isfinite(v) for v in values.values()):
        raise InvalidParameterError(f"channel parameters must be finite, got {params!r}")

    nbar = values.get('nbar', 0.0)
    if nbar < 0:
        raise InvalidParameterError(f"nbar must be >= 0, got {nbar}")
    eye = np.eye(2)

    if kind is ChannelKind.ATTENUATOR:
        eta = values.get('eta')
        if eta is None or not 0.0 < eta < 1.0:
            raise InvalidParameterError(f"attenuator needs 0 < eta < 1, got {eta}")
        return GaussianChannel(1, 1, np.sqrt(eta) * eye, np.zeros(2), (1.0 - eta) * (nbar + 0.5) * eye)

    if kind is ChannelKind.AMPLIFIER:
        g = values.get('g')
        if g is None or not g > 1.0:
            raise InvalidParameterError(f"amplifier needs g > 1, got {g}")
        return GaussianChannel(1, 1, np.sqrt(g) * eye, np.zeros(2), (g - 1.0) * (nbar + 0.5) * eye)

    nu = values.get('nu')
    if nu is None or nu < 0:
        raise InvalidParameterError(f"classical noise needs nu >= 0, got {nu}")
    return GaussianChannel(1, 1, eye.copy(), np.zeros(2), nu * eye)


def identity_channel(s: int) -> GaussianChannel:
    return GaussianChannel(s, s, np.eye(2 * s), np.zeros(2 * s), np.zeros((2 * s, 2 * s)))


def minimal_noise(K: np.ndarray, tol: float = DEFAULT_TOL) -> np.ndarray:
    """mu_min = K_D^T K_D / 2, the noise of a pure environment for this K"""
    K = np.atleast_2d(np.asarray(K, dtype=float))
    bare = GaussianChannel(K.shape[0] // 2, K.shape[1] // 2, K, np.zeros(K.shape[1]), np.zeros((K.shape[1],) * 2))
    form = noise_form(bare, tol)
    if not form.nondegenerate:
        raise DegenerateNoiseError(form.smallest_singular_value)
    K_D = skew_canonical_factor(form.delta_K, tol).factor
    return 0.5 * K_D.T @ K_D


def conjugate(ch: GaussianChannel, S_A: np.ndarray, S_B: np.ndarray) -> GaussianChannel:
    """K -> S_A K S_B, l -> S_B^T l, mu -> S_B^T mu S_B"""
    S_A = np.asarray(S_A, dtype=float)
    S_B = np.asarray(S_B, dtype=float)
    if S_A.shape != (2 * ch.s_A,) * 2 or S_B.shape != (2 * ch.s_B,) * 2:
        raise DimensionMismatchError(f"conjugating matrices must be {2 * ch.s_A} and {2 * ch.s_B} square")
    mu = S_B.T @ ch.mu @ S_B
    return GaussianChannel(ch.s_A, ch.s_B, S_A @ ch.K @ S_B, S_B.T @ ch.l, 0.5 * (mu + mu.T))


def random_channel(
    s_A: int,
    s_B: int,
    seed: Optional[int] = None,
    pure_environment: bool = False,
    scale: float = 0.7,
    min_pair_value: float = 0.2,
    max_attempts: int = 1000,
) -> GaussianChannel:
    """Nondegenerate cp channel mu = K_D^T alpha_D K_D built from a random environment state"""
    rng = np.random.default_rng(seed)
    delta_A = form_matrix(2 * s_A)
    delta_B = form_matrix(2 * s_B)
    for _ in range(max_attempts):
        K = rng.normal(scale=scale, size=(2 * s_A, 2 * s_B))
        delta_K = delta_B - K.T @ delta_A @ K
        try:
            factorization = skew_canonical_factor(delta_K)
        except GaussianAnalysisError:
            continue
        if factorization.pair_values[0] < min_pair_value:
            continue
        K_D = factorization.factor
        env = random_state(s_B, seed=int(rng.integers(2**31)), pure=pure_environment)
        mu = K_D.T @ env.alpha @ K_D
        return GaussianChannel(s_A, s_B, K, K_D.T @ env.l, 0.5 * (mu + mu.T))
    raise GaussianAnalysisError(f"no well-conditioned channel found in {max_attempts} draws")
