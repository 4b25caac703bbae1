"""
Exception hierarchy for the Gaussian channel toolkit
All errors derive from ValueError so plain `except ValueError` still works
"""

from typing import Optional


class GaussianAnalysisError(ValueError):
    """Base class for every analysis failure raised by the toolkit"""


class DimensionMismatchError(GaussianAnalysisError):
    """Matrix or vector shapes do not conform"""


class NotSymmetricError(GaussianAnalysisError):
    """A matrix required to be symmetric is not (to tolerance)"""


class NotAntisymmetricError(GaussianAnalysisError):
    """A matrix required to be antisymmetric is not (to tolerance)"""


class NotPositiveDefiniteError(GaussianAnalysisError):
    """A covariance-like matrix has a non-positive eigenvalue"""


class SingularMatrixError(GaussianAnalysisError):
    """Smallest singular value fell below the nondegeneracy threshold"""


class InvalidStateError(GaussianAnalysisError):
    """Covariance matrix violates alpha >= (i/2) Delta"""


class NotCompletelyPositiveError(GaussianAnalysisError):
    """Noise matrix violates mu >= (i/2) Delta_K"""


class DegenerateNoiseError(GaussianAnalysisError):
    """Delta_K is degenerate; environment construction is not available"""

    def __init__(self, smallest_singular_value: float):
        self.smallest_singular_value = smallest_singular_value
        super().__init__(
            "indeterminate: Delta_K is degenerate "
            f"(smallest singular value {smallest_singular_value:.3e}); "
            "environment construction requires det Delta_K != 0"
        )


class DilationInvariantError(GaussianAnalysisError):
    """A dilation identity failed its residual check"""

    def __init__(self, identity: str, residual: float, bound: float):
        self.identity = identity
        self.residual = residual
        self.bound = bound
        super().__init__(f"dilation identity '{identity}' failed: residual {residual:.3e} > {bound:.3e}")


class DualityUndefinedError(GaussianAnalysisError):
    """Dual channel requires square, nonsingular K"""


class OracleInputError(GaussianAnalysisError):
    """Fock-space oracle rejected its input (guard or mode count)"""


class DocumentError(GaussianAnalysisError):
    """JSON document failed to parse or validate"""

    def __init__(self, message: str, source: Optional[str] = None):
        self.source = source
        prefix = f"{source}: " if source else ""
        super().__init__(f"{prefix}{message}")


class InvalidParameterError(GaussianAnalysisError):
    """Catalog or construction parameter out of range"""
