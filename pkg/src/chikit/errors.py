"""Exception types shared across the package."""


class ChiKitError(Exception):
    """Base class for all chikit errors."""


class DimensionError(ChiKitError):
    """Operands have incompatible or invalid dimensions."""


class NotHermitianError(ChiKitError):
    """Matrix deviates from Hermitian symmetry beyond tolerance."""


class NotCompletelyPositiveError(ChiKitError):
    """Spectrum has a negative eigenvalue beyond tolerance."""


class ConventionError(ChiKitError):
    """Process-matrix tags do not match the requested basis or convention."""


class DomainError(ChiKitError):
    """Parameter outside the mathematically valid domain."""


class SizeCapError(ChiKitError):
    """Requested basis would exceed the configured size cap."""


class EnsembleExhaustedError(ChiKitError):
    """The rejection sampler could not produce an accepted draw.

    Raised either after ``max_rejections`` candidates were rejected or
    immediately when the requested (dim, rank, nnz) combination provably
    admits no trace-preserving draw.
    """

    def __init__(self, message, *, attempts=0, realization=None):
        super().__init__(message)
        self.attempts = attempts
        self.realization = realization


class FormatError(ChiKitError):
    """Unsupported export format."""


class SchemaError(ChiKitError):
    """Malformed JSON document."""
