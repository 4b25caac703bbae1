"""
Fock laboratory: truncated one-mode oracle for Weyl operators and Gaussian channels
"""

from .operators import FockOperator, ladder, quadratures, quadrature_frame, polar, weyl, levels_for
from .transforms import (
    DEFAULT_CHUNK_SIZE,
    CharFnGrid,
    char_fn,
    char_fn_batch,
    trace_with_weyl,
    weyl_superposition,
    make_grid,
    inverse_fourier,
)
from .states import FockStateKind, reference_state, gaussian_operator
from .oracle import (
    disk_samples,
    heisenberg_image,
    image_levels,
    verify_apply,
    verify_duality,
    sample_nonneg_definite,
    search_negativity,
)

__all__ = [
    'FockOperator', 'ladder', 'quadratures', 'quadrature_frame', 'polar', 'weyl', 'levels_for',
    'DEFAULT_CHUNK_SIZE', 'CharFnGrid', 'char_fn', 'char_fn_batch', 'trace_with_weyl',
    'weyl_superposition', 'make_grid', 'inverse_fourier', 'FockStateKind', 'reference_state',
    'gaussian_operator',
    'disk_samples', 'heisenberg_image', 'image_levels', 'verify_apply', 'verify_duality',
    'sample_nonneg_definite', 'search_negativity',
]
