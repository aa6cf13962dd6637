"""Exception hierarchy.

Errors split into two families so the command line can map them to exit
codes: bad inputs (``PreconditionError``, exit 2) and numerical failures
(``NumericalFailure``, exit 3).
"""


class GeoxformError(Exception):
    """Base class for every error raised by the package."""


class PreconditionError(GeoxformError, ValueError):
    """Inputs violate the documented preconditions of an operation."""


class NumericalFailure(GeoxformError, ArithmeticError):
    """A well-posed request could not be evaluated to tolerance."""


class PoleError(PreconditionError):
    """Gamma evaluated at a nonpositive integer."""


class DomainError(PreconditionError):
    """Argument outside the domain of the function."""


class TransformInapplicable(PreconditionError):
    """A hypergeometric transformation is not valid for these parameters."""


class CoefficientPole(PreconditionError):
    """An asymptotic coefficient involves Gamma at a pole."""


class OutsideSupport(PreconditionError):
    """Point lies where a closed form is declared to vanish."""


class DegenerateReference(PreconditionError):
    """Calibration point where the closed-form shape vanishes."""


class UnsupportedDimension(PreconditionError):
    """Sphere quadrature requested for a dimension that is not provided."""


class WeightPole(PreconditionError):
    """Power weight evaluated at a partition point with negative exponent."""


class DivergenceError(NumericalFailure):
    """Hypergeometric series requested at z = 1 where it diverges."""


class NonIntegrable(NumericalFailure):
    """Endpoint exponents make the integral divergent."""


class TruncationFailure(NumericalFailure):
    """An infinite tail did not pass the decay test."""


class DivergentNorm(NumericalFailure):
    """A weighted norm is infinite or failed its tail test."""
