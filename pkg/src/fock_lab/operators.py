"""
Truncated one-mode Fock space: ladder operators, quadratures, Weyl operators
"""

import logging
from dataclasses import dataclass
from functools import lru_cache
from typing import Tuple

import numpy as np
from scipy.linalg import eigh, eigh_tridiagonal

from errors import DimensionMismatchError, OracleInputError

logger = logging.getLogger(__name__)

MIN_NMAX = 2


@dataclass(frozen=True)
class FockOperator:
    """Dense operator on span{|0>, ..., |n_max>}"""
    n_max: int
    matrix: np.ndarray

    def __post_init__(self):
        matrix = np.asarray(self.matrix, dtype=complex)
        if matrix.shape != (self.n_max + 1, self.n_max + 1):
            raise DimensionMismatchError(f"operator at n_max={self.n_max} must be {self.n_max + 1} square, got {matrix.shape}")
        object.__setattr__(self, 'matrix', matrix)

    @property
    def dim(self) -> int:
        return self.n_max + 1

    def trace(self) -> complex:
        return complex(np.trace(self.matrix))

    def dagger(self) -> "FockOperator":
        return FockOperator(self.n_max, self.matrix.conj().T)

    def block(self, size: int) -> np.ndarray:
        return self.matrix[:size, :size]

    def embed(self, n_max: int) -> "FockOperator":
        """Zero-pad into a larger truncation"""
        if n_max < self.n_max:
            raise DimensionMismatchError(f"cannot embed n_max={self.n_max} into smaller n_max={n_max}")
        out = np.zeros((n_max + 1, n_max + 1), dtype=complex)
        out[:self.dim, :self.dim] = self.matrix
        return FockOperator(n_max, out)

    def is_hermitian(self, tol: float = 1e-10) -> bool:
        return bool(np.max(np.abs(self.matrix - self.matrix.conj().T)) <= tol)


def _check_nmax(n_max: int) -> int:
    if int(n_max) != n_max or n_max < MIN_NMAX:
        raise OracleInputError(f"n_max must be an integer >= {MIN_NMAX}, got {n_max}")
    return int(n_max)


def ladder(n_max: int) -> Tuple[FockOperator, FockOperator, FockOperator]:
    """Truncated a, a^dagger and N = a^dagger a"""
    n_max = _check_nmax(n_max)
    a = np.diag(np.sqrt(np.arange(1, n_max + 1, dtype=float)), k=1)
    return (
        FockOperator(n_max, a),
        FockOperator(n_max, a.T),
        FockOperator(n_max, np.diag(np.arange(n_max + 1, dtype=float))),
    )


def quadratures(n_max: int) -> Tuple[np.ndarray, np.ndarray]:
    """q = (a + a^dagger)/sqrt(2), p = i(a^dagger - a)/sqrt(2)"""
    a, a_dag, _ = ladder(n_max)
    q = (a.matrix + a_dag.matrix) / np.sqrt(2.0)
    p = 1j * (a_dag.matrix - a.matrix) / np.sqrt(2.0)
    return q, p


@lru_cache(maxsize=16)
def quadrature_frame(n_max: int) -> Tuple[np.ndarray, np.ndarray]:
    """Eigenvalues and real orthonormal eigenvectors of the truncated q (tridiagonal)"""
    n_max = _check_nmax(n_max)
    off_diagonal = np.sqrt(np.arange(1, n_max + 1, dtype=float) / 2.0)
    eigenvalues, eigenvectors = eigh_tridiagonal(np.zeros(n_max + 1), off_diagonal)
    eigenvalues.setflags(write=False)
    eigenvectors.setflags(write=False)
    return eigenvalues, eigenvectors


def polar(points: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
    """(t, theta) with x q + y p = t e^{i theta N} q e^{-i theta N}"""
    points = np.atleast_2d(np.asarray(points, dtype=float))
    if points.shape[-1] != 2:
        raise OracleInputError(f"phase-space points must be 2-vectors, got shape {points.shape}")
    return np.hypot(points[:, 0], points[:, 1]), np.arctan2(points[:, 1], points[:, 0])


def weyl(z: np.ndarray, n_max: int) -> FockOperator:
    """W(z) = exp(i(xq + yp)) through the eigendecomposition of the generator"""
    z = np.asarray(z, dtype=float).reshape(-1)
    if z.shape != (2,):
        raise OracleInputError(f"weyl expects a real 2-vector, got shape {z.shape}")
    q, p = quadratures(n_max)
    eigenvalues, eigenvectors = eigh(z[0] * q + z[1] * p)
    return FockOperator(n_max, (eigenvectors * np.exp(1j * eigenvalues)) @ eigenvectors.conj().T)


def levels_for(n_max: int, reach: float, margin: float) -> int:
    """Smallest truncation whose phase-space disc covers the n_max disc pushed out by reach + margin.

    Truncated Weyl operators W(z) act faithfully on levels m with
    sqrt(2m + 1) + |z| + margin <= sqrt(2N + 1).
    """
    radius = np.sqrt(2.0 * n_max + 1.0) + max(float(reach), 0.0) + float(margin)
    return max(int(n_max), int(np.ceil(0.5 * (radius ** 2 - 1.0))))
