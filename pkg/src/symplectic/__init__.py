"""
Symplectic linear algebra: standard forms, canonical factorizations, Williamson
"""

from .forms import (
    DEFAULT_TOL,
    SymplecticForm,
    standard_form,
    form_matrix,
    max_residual,
    direct_sum,
    symplectic_residual,
    is_symplectic,
    symplectic_from_hamiltonian,
    random_symplectic,
)
from .decompositions import (
    SkewFactorization,
    WilliamsonDecomposition,
    skew_canonical_factor,
    williamson,
    symplectic_eigenvalues,
)

__all__ = [
    'DEFAULT_TOL', 'SymplecticForm', 'standard_form', 'form_matrix', 'max_residual',
    'direct_sum', 'symplectic_residual', 'is_symplectic', 'symplectic_from_hamiltonian',
    'random_symplectic', 'SkewFactorization', 'WilliamsonDecomposition',
    'skew_canonical_factor', 'williamson', 'symplectic_eigenvalues',
]
