"""
Gaussian state data structures
"""

from dataclasses import dataclass, field
from enum import Enum
from typing import Dict, List, Optional

import numpy as np

from errors import DimensionMismatchError


class StateKind(Enum):
    """Catalog of standard one-mode states"""
    VACUUM = "vacuum"
    COHERENT = "coherent"
    THERMAL = "thermal"
    SQUEEZED = "squeezed"


@dataclass(frozen=True)
class GaussianState:
    """Mean vector l and covariance alpha on s modes (interleaved q, p ordering)"""
    s: int
    l: np.ndarray
    alpha: np.ndarray

    def __post_init__(self):
        l = np.asarray(self.l, dtype=float).reshape(-1)
        alpha = np.atleast_2d(np.asarray(self.alpha, dtype=float))
        dim = 2 * self.s
        if self.s < 1:
            raise DimensionMismatchError(f"mode count must be positive, got {self.s}")
        if l.shape != (dim,):
            raise DimensionMismatchError(f"mean vector must have length {dim}, got {l.shape}")
        if alpha.shape != (dim, dim):
            raise DimensionMismatchError(f"covariance must be {dim}x{dim}, got {alpha.shape}")
        object.__setattr__(self, 'l', l)
        object.__setattr__(self, 'alpha', alpha)

    @classmethod
    def from_covariance(cls, alpha: np.ndarray, l: Optional[np.ndarray] = None) -> "GaussianState":
        alpha = np.atleast_2d(np.asarray(alpha, dtype=float))
        s = alpha.shape[0] // 2
        return cls(s=s, l=np.zeros(2 * s) if l is None else l, alpha=alpha)

    def characteristic(self, z: np.ndarray) -> np.ndarray:
        """phi(z) = exp(i l^T z - z^T alpha z / 2) for one point or a stack of points"""
        z = np.asarray(z, dtype=float)
        points = np.atleast_2d(z)
        quad = np.einsum('gi,ij,gj->g', points, self.alpha, points)
        values = np.exp(1j * points @ self.l - 0.5 * quad)
        return values[0] if z.ndim == 1 else values


@dataclass
class PurityReport:
    """Verdicts of the five equivalent purity conditions, keyed 1..5"""
    verdicts: Dict[int, bool]
    consensus: bool
    symplectic_eigenvalues: List[float]
    residuals: Dict[str, float] = field(default_factory=dict)
    J: Optional[np.ndarray] = None
    notes: Dict[int, str] = field(default_factory=dict)

    @property
    def pure(self) -> bool:
        return self.consensus and all(self.verdicts.values())
