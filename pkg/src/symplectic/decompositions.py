"""
Canonical factorizations on symplectic spaces: skew canonical factor and Williamson form
"""

import logging
from dataclasses import dataclass
from typing import List

import numpy as np
from scipy.linalg import eigh, eigvalsh, schur

from errors import (
    DimensionMismatchError,
    NotAntisymmetricError,
    NotPositiveDefiniteError,
    NotSymmetricError,
    SingularMatrixError,
)
from .forms import DEFAULT_TOL, form_matrix, max_residual

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class SkewFactorization:
    """F with F^T Delta F = A, plus the canonical pair magnitudes (ascending)"""
    factor: np.ndarray
    pair_values: np.ndarray


@dataclass(frozen=True)
class WilliamsonDecomposition:
    """S symplectic with S^T D S = alpha, D = diag(d1, d1, ..., ds, ds)"""
    S: np.ndarray
    d: np.ndarray

    @property
    def D(self) -> np.ndarray:
        return np.diag(np.repeat(self.d, 2))


def _check_square_even(A: np.ndarray, what: str) -> np.ndarray:
    A = np.asarray(A, dtype=float)
    if A.ndim != 2 or A.shape[0] != A.shape[1]:
        raise DimensionMismatchError(f"{what} must be square, got shape {A.shape}")
    if A.shape[0] == 0 or A.shape[0] % 2 != 0:
        raise DimensionMismatchError(f"{what} must have even positive size, got {A.shape[0]}")
    return A


def skew_canonical_factor(A: np.ndarray, tol: float = DEFAULT_TOL) -> SkewFactorization:
    """F = diag(sqrt a_j) Q^T with F^T Delta F = A, via the real Schur form (a_j ascending)"""
    A = _check_square_even(A, "antisymmetric matrix")
    scale = float(np.max(np.abs(A)))
    if max_residual(A, -A.T) > tol * max(1.0, scale):
        raise NotAntisymmetricError(f"matrix is not antisymmetric (residual {max_residual(A, -A.T):.3e})")

    singular_values = np.linalg.svd(A, compute_uv=False)
    if singular_values[-1] <= tol * singular_values[0] or singular_values[0] == 0.0:
        raise SingularMatrixError(
            f"antisymmetric matrix is degenerate (smallest singular value {singular_values[-1]:.3e})"
        )

    A = 0.5 * (A - A.T)
    T, Z = schur(A, output="real")
    m = A.shape[0] // 2

    Q = Z.copy()
    values = np.empty(m)
    for j in range(m):
        i0, i1 = 2 * j, 2 * j + 1
        lower = T[i1, i0]
        upper = T[i0, i1]
        if lower == 0.0 or upper == 0.0:
            raise SingularMatrixError(f"real Schur form has a 1x1 block at position {i0}")
        if lower < 0.0:
            # [[0, b], [-b, 0]] with b > 0: swap the pair to flip orientation
            Q[:, [i0, i1]] = Q[:, [i1, i0]]
        values[j] = 0.5 * (abs(lower) + abs(upper))

    order = np.argsort(values, kind="stable")
    columns = np.concatenate([[2 * j, 2 * j + 1] for j in order])
    Q = Q[:, columns]
    values = values[order]

    F = np.repeat(np.sqrt(values), 2)[:, None] * Q.T
    logger.debug(
        f"skew_canonical_factor: dim={A.shape[0]} pairs={values} "
        f"residual={max_residual(F.T @ form_matrix(A.shape[0]) @ F, A):.2e}"
    )
    return SkewFactorization(factor=F, pair_values=values)


def _symmetric_sqrt(alpha: np.ndarray, tol: float) -> np.ndarray:
    alpha = _check_square_even(alpha, "covariance matrix")
    scale = float(np.max(np.abs(alpha)))
    if max_residual(alpha, alpha.T) > tol * max(1.0, scale):
        raise NotSymmetricError("covariance matrix is not symmetric")
    w, V = eigh(0.5 * (alpha + alpha.T))
    if w[0] <= tol * max(1.0, abs(w[-1])):
        raise NotPositiveDefiniteError(f"matrix is not positive definite (minimum eigenvalue {w[0]:.3e})")
    return (V * np.sqrt(w)) @ V.T


def williamson(alpha: np.ndarray, tol: float = DEFAULT_TOL) -> WilliamsonDecomposition:
    """S^T D S = alpha via the skew factor F of alpha^{1/2} Delta alpha^{1/2}: S = D^{-1} F alpha^{1/2}"""
    root = _symmetric_sqrt(alpha, tol)
    delta = form_matrix(root.shape[0])
    B = root @ delta @ root
    factorization = skew_canonical_factor(0.5 * (B - B.T), tol)
    d = factorization.pair_values
    S = (1.0 / np.repeat(d, 2))[:, None] * (factorization.factor @ root)
    return WilliamsonDecomposition(S=S, d=d)


def symplectic_eigenvalues(alpha: np.ndarray, tol: float = DEFAULT_TOL) -> List[float]:
    """Moduli of the eigenvalues of Delta alpha, one per pair, ascending.

    Computed from the Hermitian matrix i alpha^{1/2} Delta alpha^{1/2}, which is
    similar to i Delta alpha and has spectrum {+d_j, -d_j}.
    """
    root = _symmetric_sqrt(alpha, tol)
    s = root.shape[0] // 2
    B = root @ form_matrix(root.shape[0]) @ root
    spectrum = eigvalsh(1j * 0.5 * (B - B.T))
    return [float(v) for v in np.sort(spectrum)[s:]]
