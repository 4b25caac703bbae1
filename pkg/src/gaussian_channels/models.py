"""
Gaussian channel data structures
"""

from dataclasses import dataclass, field
from enum import Enum
from typing import Dict, Optional

import numpy as np

from errors import DimensionMismatchError
from gaussian_states import GaussianState, PurityReport


class ChannelKind(Enum):
    """Standard one-mode channel families"""
    ATTENUATOR = "attenuator"
    AMPLIFIER = "amplifier"
    CLASSICAL_NOISE = "classical_noise"


class Verdict(Enum):
    """Extremality verdict"""
    EXTREME = "extreme"
    NOT_EXTREME = "not_extreme"
    INDETERMINATE = "indeterminate"


@dataclass(frozen=True)
class GaussianChannel:
    """Linear bosonic channel W(z) -> W(K z) exp(i l^T z - z^T mu z / 2).

    K maps output phase space (2 s_B) into input phase space (2 s_A).
    Only shapes are checked here; validity is checked by validate_channel.
    """
    s_A: int
    s_B: int
    K: np.ndarray
    l: np.ndarray
    mu: np.ndarray

    def __post_init__(self):
        if self.s_A < 1 or self.s_B < 1:
            raise DimensionMismatchError(f"mode counts must be positive, got s_A={self.s_A}, s_B={self.s_B}")
        K = np.atleast_2d(np.asarray(self.K, dtype=float))
        l = np.asarray(self.l, dtype=float).reshape(-1)
        mu = np.atleast_2d(np.asarray(self.mu, dtype=float))
        if K.shape != (2 * self.s_A, 2 * self.s_B):
            raise DimensionMismatchError(f"K must be {2 * self.s_A}x{2 * self.s_B}, got {K.shape}")
        if l.shape != (2 * self.s_B,):
            raise DimensionMismatchError(f"l must have length {2 * self.s_B}, got {l.shape}")
        if mu.shape != (2 * self.s_B, 2 * self.s_B):
            raise DimensionMismatchError(f"mu must be {2 * self.s_B}x{2 * self.s_B}, got {mu.shape}")
        object.__setattr__(self, 'K', K)
        object.__setattr__(self, 'l', l)
        object.__setattr__(self, 'mu', mu)

    def noise_function(self, z: np.ndarray) -> np.ndarray:
        """f(z) = exp(i l^T z - z^T mu z / 2) for one point or a stack of points"""
        z = np.asarray(z, dtype=float)
        points = np.atleast_2d(z)
        quad = np.einsum('gi,ij,gj->g', points, self.mu, points)
        values = np.exp(1j * points @ self.l - 0.5 * quad)
        return values[0] if z.ndim == 1 else values


@dataclass(frozen=True)
class NoiseForm:
    """Delta_K = Delta_B - K^T Delta_A K and its nondegeneracy"""
    delta_K: np.ndarray
    nondegenerate: bool
    smallest_singular_value: float


@dataclass(frozen=True)
class ChannelValidity:
    cp: bool
    nondegenerate: bool
    min_eigenvalue: float


@dataclass(frozen=True)
class Environment:
    """Environment mode matrix K_D with K_D^T Delta_D K_D = Delta_K, and state (l_D, alpha_D)"""
    K_D: np.ndarray
    state: GaussianState
    residual: float


@dataclass
class Dilation:
    """Block symplectic completion T = [[K, L], [K_D, L_D]] of a channel"""
    K_D: np.ndarray
    L: np.ndarray
    L_D: np.ndarray
    T: np.ndarray
    env_state: GaussianState
    residuals: Dict[str, float] = field(default_factory=dict)


@dataclass
class ExtremalityResult:
    verdict: Verdict
    evidence: Optional[PurityReport] = None
    reason: str = ""


@dataclass
class DualChannel:
    channel: GaussianChannel
    scale: float

