"""Radial k-plane transforms and their weighted norm inequalities on
Euclidean, hyperbolic and spherical space."""

from .errors import DomainError, GeoxformError, NumericalFailure, PreconditionError
from .geometry import Space, flat, hyperbolic, spherical
from .quadrature import DEFAULT_QUAD, QuadratureSpec

__version__ = "0.1.0"

__all__ = [
    "DEFAULT_QUAD", "DomainError", "GeoxformError", "NumericalFailure", "PreconditionError",
    "QuadratureSpec", "Space", "flat", "hyperbolic", "spherical",
]
