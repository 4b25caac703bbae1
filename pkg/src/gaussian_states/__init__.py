"""
Gaussian states module: covariance-level validity and purity
"""

from .models import GaussianState, PurityReport, StateKind
from .states import (
    DEFAULT_RANK_TOL,
    uncertainty_gap,
    validate_state,
    purity_report,
    make_state,
    direct_sum_states,
    random_state,
)

__all__ = [
    'GaussianState', 'PurityReport', 'StateKind', 'DEFAULT_RANK_TOL', 'uncertainty_gap',
    'validate_state', 'purity_report', 'make_state', 'direct_sum_states', 'random_state',
]
