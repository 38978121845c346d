"""Exception types shared across the package."""


class EllpfError(Exception):
    """Base class for all library errors."""


class DomainError(EllpfError, ValueError):
    """Input outside the documented domain of an operation."""


class TruncationError(EllpfError):
    """A series or product failed to converge within the term budget."""


class PoleError(EllpfError):
    """Evaluation requested at (or numerically indistinguishable from) a pole."""


class DegeneracyError(EllpfError):
    """A sampled or supplied configuration is too close to a degenerate locus."""


class RangeError(EllpfError, ValueError):
    """Index or order parameter outside the supported range."""


class NumericalLimitError(EllpfError):
    """A numerical limit (extrapolation) failed its internal consistency check."""


class ContourError(EllpfError):
    """Contour-integral differentiation could not find a safe radius."""
