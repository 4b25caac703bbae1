"""
Standard symplectic forms and symplectic matrices
Ordering is interleaved (q1, p1, ..., qs, ps) everywhere in the toolkit
"""

import logging
from dataclasses import dataclass
from typing import Optional, Union

import numpy as np
from scipy.linalg import block_diag, expm

from errors import DimensionMismatchError, GaussianAnalysisError, NotSymmetricError

logger = logging.getLogger(__name__)

DEFAULT_TOL = 1e-9

_UNIT_BLOCK = np.array([[0.0, -1.0], [1.0, 0.0]])


@dataclass(frozen=True)
class SymplecticForm:
    """Standard form Delta on s modes: s copies of [[0,-1],[1,0]] on the diagonal"""
    s: int
    matrix: np.ndarray

    @property
    def dim(self) -> int:
        return 2 * self.s


def standard_form(s: int) -> SymplecticForm:
    """Return the 2s x 2s commutator matrix of the canonical observables"""
    if not isinstance(s, (int, np.integer)) or s < 1:
        raise GaussianAnalysisError(f"mode count must be a positive integer, got {s!r}")
    matrix = np.kron(np.eye(int(s)), _UNIT_BLOCK)
    return SymplecticForm(s=int(s), matrix=matrix)


def form_matrix(dim: int) -> np.ndarray:
    """Standard form for an even dimension (convenience for block layouts)"""
    if dim % 2 != 0:
        raise DimensionMismatchError(f"symplectic dimension must be even, got {dim}")
    return standard_form(dim // 2).matrix


def max_residual(x: np.ndarray, y: np.ndarray) -> float:
    """Max-norm of x - y; the residual measure used by every check"""
    x = np.asarray(x)
    y = np.asarray(y)
    if x.shape != y.shape:
        raise DimensionMismatchError(f"cannot compare shapes {x.shape} and {y.shape}")
    if x.size == 0:
        return 0.0
    return float(np.max(np.abs(x - y)))


def direct_sum(*matrices: np.ndarray) -> np.ndarray:
    """Block-diagonal direct sum"""
    return block_diag(*[np.atleast_2d(np.asarray(m, dtype=float)) for m in matrices])


def _as_form_matrix(form: Union[SymplecticForm, np.ndarray, None], dim: int) -> np.ndarray:
    if form is None:
        return form_matrix(dim)
    if isinstance(form, SymplecticForm):
        return form.matrix
    return np.asarray(form, dtype=float)


def symplectic_residual(
    T: np.ndarray,
    form_in: Union[SymplecticForm, np.ndarray, None] = None,
    form_out: Union[SymplecticForm, np.ndarray, None] = None,
) -> float:
    """Residual ||T^T Delta_in T - Delta_out||_max"""
    T = np.asarray(T, dtype=float)
    if T.ndim != 2:
        raise DimensionMismatchError(f"expected a matrix, got shape {T.shape}")
    rows, cols = T.shape
    delta_in = _as_form_matrix(form_in, rows)
    delta_out = _as_form_matrix(form_out, cols)
    if delta_in.shape != (rows, rows) or delta_out.shape != (cols, cols):
        raise DimensionMismatchError(
            f"matrix {T.shape} does not conform to forms {delta_in.shape} and {delta_out.shape}"
        )
    return max_residual(T.T @ delta_in @ T, delta_out)


def is_symplectic(
    T: np.ndarray,
    form_in: Union[SymplecticForm, np.ndarray, None] = None,
    form_out: Union[SymplecticForm, np.ndarray, None] = None,
    tol: float = DEFAULT_TOL,
) -> bool:
    """True iff T^T Delta_in T equals Delta_out to `tol` in max-norm"""
    return symplectic_residual(T, form_in, form_out) <= tol


def symplectic_from_hamiltonian(H: np.ndarray, tol: float = DEFAULT_TOL) -> np.ndarray:
    """exp(Delta H) for a real symmetric H"""
    H = np.asarray(H, dtype=float)
    if H.ndim != 2 or H.shape[0] != H.shape[1] or H.shape[0] % 2 != 0:
        raise DimensionMismatchError(f"generator must be square of even size, got {H.shape}")
    if max_residual(H, H.T) > tol * max(1.0, float(np.max(np.abs(H)))):
        raise NotSymmetricError("generator of a symplectic one-parameter group must be symmetric")
    return expm(form_matrix(H.shape[0]) @ H)


def random_symplectic(s: int, seed: Optional[int] = None, scale: float = 0.5) -> np.ndarray:
    """Deterministic random symplectic matrix exp(Delta H), H symmetric Gaussian with std `scale`"""
    dim = standard_form(s).dim
    rng = np.random.default_rng(seed)
    G = rng.normal(scale=scale, size=(dim, dim))
    H = 0.5 * (G + G.T)
    S = symplectic_from_hamiltonian(H)
    logger.debug(f"random_symplectic(s={s}, seed={seed}): residual {symplectic_residual(S):.2e}")
    return S
