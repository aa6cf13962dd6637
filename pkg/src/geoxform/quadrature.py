"""Quadrature settings and thin wrappers over ``scipy.integrate.quad``."""

import math
import warnings
from dataclasses import dataclass

import numpy as np
from scipy import integrate

from .errors import TruncationFailure


@dataclass(frozen=True)
class QuadratureSpec:
    """Tolerances shared by every integral in the package.

    ``max_depth`` bounds adaptive bisection; it is turned into the
    subinterval limit handed to QUADPACK.
    """

    rel_tol: float = 1e-8
    abs_tol: float = 1e-12
    max_depth: int = 40

    @property
    def limit(self):
        return max(50, 10 * int(self.max_depth))

    def tightened(self, factor=100.0):
        return QuadratureSpec(self.rel_tol / factor, self.abs_tol / factor, self.max_depth)


DEFAULT_QUAD = QuadratureSpec()

# tail test: three successive negligible octaves, at most this many octaves
TAIL_RUN = 3
TAIL_MAX_OCTAVES = 2000
# consecutive non-shrinking chunks past the last break that count as divergence
TAIL_GROWTH_RUN = 60


def quad(fn, lo, hi, spec=DEFAULT_QUAD, points=None, **kw):
    """Integrate ``fn`` over ``[lo, hi]``; returns ``(value, error)``."""
    if hi <= lo:
        return 0.0, 0.0
    if points is not None:
        points = sorted(p for p in points if lo < p < hi)
        if not points:
            points = None
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", integrate.IntegrationWarning)
        value, err = integrate.quad(
            fn, lo, hi, epsabs=spec.abs_tol, epsrel=spec.rel_tol,
            limit=spec.limit, points=points, **kw
        )
    return value, err


def quad_pieces(fn, breaks, spec=DEFAULT_QUAD):
    """Sum of ``quad`` over consecutive break intervals."""
    total = 0.0
    err = 0.0
    breaks = sorted(set(breaks))
    for lo, hi in zip(breaks[:-1], breaks[1:]):
        v, e = quad(fn, lo, hi, spec)
        total += v
        err += e
    return total, err


def quad_tail(fn, lo, spec=DEFAULT_QUAD, width=math.log(2.0), breaks=(), upper=math.inf,
              cap=math.inf, geometric=False):
    """Integrate over ``[lo, upper)`` chunk by chunk.

    Chunks have a fixed ``width``; integration stops once ``TAIL_RUN``
    successive chunks each contribute less than the tolerance relative to
    the running estimate, or when ``upper`` is reached.  Raises
    ``TruncationFailure`` if neither happens within ``TAIL_MAX_OCTAVES``
    chunks or before the variable passes ``cap``.  With ``geometric`` the
    chunks double in length (octaves of the variable itself).
    """
    total = 0.0
    err = 0.0
    quiet = 0
    growing = 0
    prev = None
    left = lo
    inner = sorted(b for b in breaks if b > lo)
    for _ in range(TAIL_MAX_OCTAVES):
        step = max(width, left) if geometric else width
        right = min(left + step, upper)
        pts = [left] + [b for b in inner if left < b < right] + [right]
        with np.errstate(over="ignore", invalid="ignore"):
            v, e = quad_pieces(fn, pts, spec)
        if not math.isfinite(v):
            raise TruncationFailure(f"tail chunk at {left:.3g} is not finite")
        total += v
        err += e
        if right >= upper:
            return total, err
        if right >= cap:
            raise TruncationFailure(f"tail did not decay before {cap}")
        past_breaks = not inner or right >= inner[-1]
        if past_breaks and prev is not None and abs(v) > spec.abs_tol and abs(v) >= abs(prev):
            growing += 1
            if growing >= TAIL_GROWTH_RUN:
                raise TruncationFailure(f"tail chunks stopped shrinking beyond {left:.3g}")
        else:
            growing = 0
        prev = v if past_breaks else None
        if past_breaks and abs(v) <= spec.rel_tol * abs(total) + spec.abs_tol:
            quiet += 1
            if quiet >= TAIL_RUN:
                return total, err
        else:
            quiet = 0
        left = right
    raise TruncationFailure(f"tail beyond {lo} did not decay after {TAIL_MAX_OCTAVES} chunks")


def kahan_sum(values):
    """Compensated sum, independent of evaluation order up to rounding."""
    return math.fsum(np.asarray(values, dtype=float).ravel())
