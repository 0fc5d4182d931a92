"""Exception types shared across the package."""


class QpfError(Exception):
    """Base class for all package-specific errors."""


class PoleError(QpfError):
    """A q-shifted factorial or rising factorial hit a vanishing factor in a denominator."""


class NotAUnit(QpfError):
    """Inversion or division requested for a non-invertible element (zero constant term)."""


class NonTruncatable(QpfError):
    """A formal series expression has support in negative q-powers and cannot be truncated."""


class OrderMismatch(QpfError):
    """Binary operation between truncated series of different truncation orders."""


class PivotError(QpfError):
    """A leading minor / leading subpfaffian required by a decomposition vanishes."""

    def __init__(self, index, message=None):
        self.index = index
        super().__init__(message or f"vanishing pivot at block {index}")


class DomainError(QpfError):
    """A parameter lies outside the domain of the requested operation."""


class GuardError(QpfError):
    """An enumeration guard (matrix size, cell count, truncation order) was exceeded."""


class SkippedPoint(QpfError):
    """A guard denominator vanished at a sample point; the point must be resampled."""


class RetryBudgetError(QpfError):
    """Rejection sampling exhausted its retry budget."""
