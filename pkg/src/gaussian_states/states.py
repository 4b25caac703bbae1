"""
Gaussian states at the covariance level: validity, purity, standard catalog
"""

import logging
from typing import Optional, Sequence, Union

import numpy as np
from scipy.linalg import eigvalsh

from errors import (
    DimensionMismatchError,
    GaussianAnalysisError,
    InvalidParameterError,
    InvalidStateError,
    NotSymmetricError,
)
from symplectic import DEFAULT_TOL, direct_sum, form_matrix, max_residual, random_symplectic, symplectic_eigenvalues
from .models import GaussianState, PurityReport, StateKind

logger = logging.getLogger(__name__)

DEFAULT_RANK_TOL = 1e-7


def _checked_covariance(l: np.ndarray, alpha: np.ndarray, tol: float) -> np.ndarray:
    alpha = np.atleast_2d(np.asarray(alpha, dtype=float))
    l = np.asarray(l, dtype=float).reshape(-1)
    if alpha.ndim != 2 or alpha.shape[0] != alpha.shape[1] or alpha.shape[0] % 2 != 0:
        raise DimensionMismatchError(f"covariance must be square of even size, got {alpha.shape}")
    if l.shape != (alpha.shape[0],):
        raise DimensionMismatchError(f"mean vector length {l.shape} does not match covariance {alpha.shape}")
    if max_residual(alpha, alpha.T) > tol * max(1.0, float(np.max(np.abs(alpha)))):
        raise NotSymmetricError("covariance matrix is not symmetric")
    return 0.5 * (alpha + alpha.T)


def uncertainty_gap(alpha: np.ndarray) -> float:
    """Minimum eigenvalue of the Hermitian matrix alpha - (i/2) Delta"""
    alpha = np.asarray(alpha, dtype=float)
    return float(eigvalsh(alpha - 0.5j * form_matrix(alpha.shape[0]))[0])


def validate_state(l: np.ndarray, alpha: np.ndarray, tol: float = DEFAULT_TOL) -> bool:
    """True iff alpha >= (i/2) Delta as Hermitian matrices, to -tol"""
    alpha = _checked_covariance(l, alpha, tol)
    return uncertainty_gap(alpha) >= -tol


def purity_report(
    state: GaussianState,
    tol: float = DEFAULT_TOL,
    rank_tol: float = DEFAULT_RANK_TOL,
) -> PurityReport:
    """Evaluate the five purity conditions independently and report their consensus.

    1. minimality of alpha (evaluated through its equivalence with 2)
    2. every symplectic eigenvalue equals 1/2
    3. rank of alpha - (i/2) Delta equals s
    4. alpha + Delta alpha^{-1} Delta / 4 = 0
    5. J = 2 Delta alpha is a complex structure (J^2 = -I), i.e. alpha = -Delta J / 2
    """
    alpha = _checked_covariance(state.l, state.alpha, tol)
    if uncertainty_gap(alpha) < -tol:
        raise InvalidStateError(
            f"covariance violates alpha >= (i/2) Delta (minimum eigenvalue {uncertainty_gap(alpha):.3e})"
        )
    s = state.s
    delta = form_matrix(2 * s)
    scale = max(1.0, float(np.max(np.abs(alpha))))
    residuals = {}

    d = symplectic_eigenvalues(alpha, tol)
    residuals['symplectic_eigenvalue_gap'] = float(max(abs(v - 0.5) for v in d))
    minimal_eigenvalues = residuals['symplectic_eigenvalue_gap'] <= tol * scale

    spectrum = eigvalsh(alpha - 0.5j * delta)
    rank = int(np.sum(spectrum > rank_tol * spectrum[-1]))
    residuals['rank'] = float(rank)
    rank_s = rank == s

    inverse_term = 0.25 * delta @ np.linalg.solve(alpha, delta)
    residuals['inverse_identity'] = max_residual(alpha, -inverse_term)
    inverse_identity = residuals['inverse_identity'] <= tol * float(np.max(np.abs(alpha)))

    J = 2.0 * delta @ alpha
    residuals['complex_structure'] = max_residual(J @ J, -np.eye(2 * s))
    complex_structure = residuals['complex_structure'] <= tol * max(1.0, float(np.max(np.abs(J))) ** 2)

    verdicts = {
        1: minimal_eigenvalues,
        2: minimal_eigenvalues,
        3: rank_s,
        4: inverse_identity,
        5: complex_structure,
    }
    consensus = len(set(verdicts.values())) == 1
    if not consensus:
        logger.warning(f"[PURITY] conditions disagree: {verdicts} residuals={residuals}")

    return PurityReport(
        verdicts=verdicts,
        consensus=consensus,
        symplectic_eigenvalues=d,
        residuals=residuals,
        J=J if complex_structure else None,
        notes={1: "via equivalence"},
    )


def make_state(kind: Union[str, StateKind], **params) -> GaussianState:
    """One-mode standard states: vacuum, coherent(l), thermal(nbar), squeezed(r)"""
    try:
        kind = StateKind(kind)
    except ValueError:
        raise InvalidParameterError(f"unknown state kind: {kind!r}")

    half = 0.5 * np.eye(2)
    if kind is StateKind.VACUUM:
        return GaussianState(s=1, l=np.zeros(2), alpha=half)

    if kind is StateKind.COHERENT:
        l = np.asarray(params.get('l', (0.0, 0.0)), dtype=float).reshape(-1)
        if l.shape != (2,) or not np.all(np.isfinite(l)):
            raise InvalidParameterError(f"coherent displacement must be a real 2-vector, got {params.get('l')!r}")
        return GaussianState(s=1, l=l, alpha=half)

    if kind is StateKind.THERMAL:
        nbar = float(params.get('nbar', 0.0))
        if not np.isfinite(nbar) or nbar < 0:
            raise InvalidParameterError(f"thermal occupation must be >= 0, got {nbar}")
        return GaussianState(s=1, l=np.zeros(2), alpha=(nbar + 0.5) * np.eye(2))

    r = float(params.get('r', 0.0))
    if not np.isfinite(r):
        raise InvalidParameterError(f"squeezing must be a finite real, got {r}")
    return GaussianState(s=1, l=np.zeros(2), alpha=0.5 * np.diag([np.exp(2 * r), np.exp(-2 * r)]))


def direct_sum_states(*states: GaussianState) -> GaussianState:
    """Product state of the given modes"""
    if not states:
        raise GaussianAnalysisError("direct sum needs at least one state")
    return GaussianState(
        s=sum(st.s for st in states),
        l=np.concatenate([st.l for st in states]),
        alpha=direct_sum(*[st.alpha for st in states]),
    )


def random_state(
    s: int,
    seed: Optional[int] = None,
    pure: bool = False,
    scale: float = 0.3,
    d_range: Sequence[float] = (0.6, 2.0),
    noise_range: Sequence[float] = (0.0, 0.1),
) -> GaussianState:
    """alpha = S^T D S + eps I with random symplectic S (pure: d = 1/2, eps = 0)"""
    rng = np.random.default_rng(seed)
    S = random_symplectic(s, seed=int(rng.integers(2**31)), scale=scale)
    if pure:
        d = np.full(s, 0.5)
        eps = 0.0
    else:
        d = rng.uniform(*d_range, size=s)
        eps = rng.uniform(*noise_range)
    alpha = S.T @ np.diag(np.repeat(d, 2)) @ S + eps * np.eye(2 * s)
    return GaussianState(s=s, l=rng.normal(size=2 * s), alpha=0.5 * (alpha + alpha.T))
