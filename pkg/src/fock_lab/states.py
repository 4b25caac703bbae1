"""
Reference density operators built directly in the Fock basis
"""

from enum import Enum
from typing import Optional, Union

import numpy as np
from scipy.linalg import eigh, expm

from errors import InvalidParameterError, InvalidStateError
from gaussian_states import GaussianState
from symplectic import form_matrix
from .operators import FockOperator, ladder, weyl


class FockStateKind(Enum):
    VACUUM = "vacuum"
    COHERENT = "coherent"
    THERMAL = "thermal"
    SQUEEZED = "squeezed"
    NUMBER = "number"


def _projector(n_max: int, psi: np.ndarray) -> FockOperator:
    psi = psi / np.linalg.norm(psi)
    return FockOperator(n_max, np.outer(psi, psi.conj()))


def reference_state(kind: Union[str, FockStateKind], n_max: int, **params) -> FockOperator:
    """vacuum, coherent(l), thermal(nbar), squeezed(r), number(n).

    thermal is the renormalized geometric distribution nbar^n / (nbar + 1)^(n+1);
    coherent is W(-Delta l)|0>; squeezed is exp((r/2)(a^dag^2 - a^2))|0>, whose
    covariance is diag(e^{2r}, e^{-2r}) / 2.
    """
    try:
        kind = FockStateKind(kind)
    except ValueError:
        raise InvalidParameterError(f"unknown reference state: {kind!r}")

    a, a_dag, _ = ladder(n_max)
    vacuum = np.zeros(n_max + 1, dtype=complex)
    vacuum[0] = 1.0

    if kind is FockStateKind.VACUUM:
        return _projector(n_max, vacuum)

    if kind is FockStateKind.COHERENT:
        l = np.asarray(params.get('l', (0.0, 0.0)), dtype=float).reshape(-1)
        if l.shape != (2,):
            raise InvalidParameterError(f"coherent displacement must be a real 2-vector, got {params.get('l')!r}")
        return _projector(n_max, weyl(-form_matrix(2) @ l, n_max).matrix @ vacuum)

    if kind is FockStateKind.THERMAL:
        nbar = float(params.get('nbar', 0.0))
        if nbar < 0:
            raise InvalidParameterError(f"thermal occupation must be >= 0, got {nbar}")
        levels = np.arange(n_max + 1)
        populations = nbar ** levels / (nbar + 1.0) ** (levels + 1)
        return FockOperator(n_max, np.diag(populations / populations.sum()))

    if kind is FockStateKind.SQUEEZED:
        r = float(params.get('r', 0.0))
        generator = 0.5 * r * (a_dag.matrix @ a_dag.matrix - a.matrix @ a.matrix)
        return _projector(n_max, expm(generator) @ vacuum)

    n = int(params.get('n', 0))
    if not 0 <= n <= n_max:
        raise InvalidParameterError(f"number state level must lie in [0, {n_max}], got {n}")
    psi = np.zeros(n_max + 1, dtype=complex)
    psi[n] = 1.0
    return _projector(n_max, psi)


def gaussian_operator(state: GaussianState, n_max: int, work_levels: Optional[int] = None) -> FockOperator:
    """Fock matrix of a one-mode Gaussian operator, truncated (not renormalized) to n_max.

    alpha = R(psi) diag(nu e^{2r}, nu e^{-2r}) R(psi)^T is realised as a thermal
    state of occupation nu - 1/2, squeezed by r, rotated by e^{i psi N} and
    displaced by W(-Delta l). Any positive definite alpha is accepted. The
    construction runs on work_levels so the kept block is free of truncation effects.
    """
    if state.s != 1:
        raise InvalidStateError(f"Fock construction is one-mode only, got s={state.s}")
    n_work = max(2 * n_max, n_max + 40) if work_levels is None else int(work_levels)
    if n_work < n_max:
        raise InvalidParameterError(f"work_levels={n_work} is below n_max={n_max}")

    variances, axes = eigh(0.5 * (state.alpha + state.alpha.T))
    if variances[0] <= 0:
        raise InvalidStateError(f"covariance is not positive definite (eigenvalues {variances})")
    # nu < 1/2 (no longer a state) still gives a trace-one Gaussian operator: ratio nbar / (nbar + 1) stays in (-1, 0)
    nbar = float(np.sqrt(variances[0] * variances[1])) - 0.5
    r = 0.25 * float(np.log(variances[1] / variances[0]))
    psi = float(np.arctan2(axes[1, 1], axes[0, 1]))

    a, a_dag, _ = ladder(n_work)
    levels = np.arange(n_work + 1)
    rho = np.diag(nbar ** levels / (nbar + 1.0) ** (levels + 1)).astype(complex)
    squeeze = expm(0.5 * r * (a_dag.matrix @ a_dag.matrix - a.matrix @ a.matrix))
    rotation = np.exp(1j * psi * levels)
    shift = weyl(-form_matrix(2) @ state.l, n_work).matrix
    unitary = shift @ (rotation[:, None] * squeeze)
    rho = unitary @ rho @ unitary.conj().T
    return FockOperator(n_max, rho[:n_max + 1, :n_max + 1])
