"""Gamma, Pochhammer and the Gauss hypergeometric function on real z < 1.

The evaluation strategy for ``hyp2f1``:

* ``|z| <= 0.5``: the power series.
* ``-1 <= z < -0.5``: Pfaff transformation, which maps z into [1/3, 1/2].
* ``z < -1``: Pfaff transformation into (1/2, 1), then the near-one path.
* ``0.5 < z < 1``: connection formula in ``1 - z``; when ``c - a - b`` is
  an integer the logarithmic variant is used.

``hyp2f1_euler`` is an independent route through the Euler integral and is
meant for cross-checks, not for production evaluation.
"""

import math
from dataclasses import dataclass
from typing import NamedTuple

from scipy import integrate
from scipy.special import digamma

from .errors import (
    CoefficientPole,
    DivergenceError,
    DomainError,
    PoleError,
    TransformInapplicable,
)

SERIES_REL = 1e-16
SERIES_RUN = 3
SERIES_CAP = 1_000_000
INT_TOL = 1e-12
# largest tolerated cancellation between the two inversion terms
INVERSION_COND = 1e5


class HypParams(NamedTuple):
    a: float
    b: float
    c: float
    z: float


def _near_int(x, tol=INT_TOL):
    return abs(x - round(x)) <= tol


def _nonpos_int(x, tol=INT_TOL):
    return x <= tol and _near_int(x, tol)


def gamma_fn(x):
    """Gamma function for real arguments away from the poles."""
    x = float(x)
    if _nonpos_int(x):
        raise PoleError(f"Gamma has a pole at {x}")
    return math.gamma(x)


def rgamma(x):
    """Reciprocal Gamma, zero at the poles."""
    x = float(x)
    if _nonpos_int(x):
        return 0.0
    return 1.0 / math.gamma(x)


def pochhammer(x, m):
    """Rising factorial (x)_m = x (x+1) ... (x+m-1)."""
    m = int(m)
    if m < 0:
        raise DomainError("pochhammer needs a nonnegative integer m")
    out = 1.0
    for j in range(m):
        out *= x + j
    return out


def _check(a, b, c, z):
    if _nonpos_int(c):
        raise PoleError(f"c = {c} is a nonpositive integer")
    if z > 1.0:
        raise DomainError(f"z = {z} outside z <= 1")


def _terminating_degree(a, b):
    """Degree of the polynomial when a or b is a nonpositive integer."""
    degs = [int(round(-x)) for x in (a, b) if _nonpos_int(x)]
    return min(degs) if degs else None


def hyp2f1_series(a, b, c, z):
    """Power series with the fixed stopping rule.

    Stops once three consecutive terms fall below 1e-16 of the running sum.
    Terminating series are summed exactly.
    """
    if _nonpos_int(c):
        raise PoleError(f"c = {c} is a nonpositive integer")
    degree = _terminating_degree(a, b)
    term = 1.0
    total = 1.0
    if degree is not None:
        for j in range(degree):
            term *= (a + j) * (b + j) / ((c + j) * (j + 1)) * z
            total += term
        return total
    if abs(z) >= 1.0:
        raise DomainError("series needs |z| < 1")
    quiet = 0
    for j in range(SERIES_CAP):
        term *= (a + j) * (b + j) / ((c + j) * (j + 1)) * z
        total += term
        if abs(term) < SERIES_REL * abs(total):
            quiet += 1
            if quiet >= SERIES_RUN:
                break
        else:
            quiet = 0
    return total


def _gauss_sum(a, b, c):
    return gamma_fn(c) * gamma_fn(c - a - b) * rgamma(c - a) * rgamma(c - b)


def _near_one(a, b, c, z):
    """Connection formula around z = 1, for 0 < z < 1."""
    w = 1.0 - z
    s = c - a - b
    if _near_int(s):
        m = int(round(s))
        if m < 0:
            # Euler: the new c - a - b equals -m > 0
            return w ** s * _near_one(c - a, c - b, c, z)
        return _log_case(a, b, m, w)
    first = gamma_fn(c) * gamma_fn(s) * rgamma(c - a) * rgamma(c - b)
    second = gamma_fn(c) * gamma_fn(-s) * rgamma(a) * rgamma(b)
    t1 = first * hyp2f1_series(a, b, 1.0 - s, w) if first else 0.0
    t2 = second * w ** s * hyp2f1_series(c - a, c - b, 1.0 + s, w) if second else 0.0
    value = t1 + t2
    # heavy cancellation when s is close to an integer; the plain series
    # is still accurate while z stays away from 1
    if abs(value) < 1e-6 * (abs(t1) + abs(t2)) and z <= 0.95:
        return hyp2f1_series(a, b, c, z)
    return value


def _log_case(a, b, m, w):
    """c = a + b + m with m a nonnegative integer (logarithmic case)."""
    c = a + b + m
    log_w = math.log(w)
    total = 0.0
    if m > 0:
        pre = math.factorial(m - 1) * gamma_fn(c) * rgamma(a + m) * rgamma(b + m)
        term = 1.0
        finite = 1.0
        for j in range(1, m):
            term *= (a + j - 1) * (b + j - 1) / (j * (1 - m + j - 1)) * w
            finite += term
        total += pre * finite
    coef = gamma_fn(c) * rgamma(a) * rgamma(b)
    if coef == 0.0:
        return total
    sign = (-1.0) ** (m + 1)
    term = 1.0 / math.factorial(m)
    tail = 0.0
    quiet = 0
    for j in range(SERIES_CAP):
        bracket = (log_w - digamma(j + 1) - digamma(j + m + 1)
                   + digamma(a + j + m) + digamma(b + j + m))
        piece = term * bracket
        tail += piece
        if abs(piece) < SERIES_REL * abs(tail):
            quiet += 1
            if quiet >= SERIES_RUN:
                break
        else:
            quiet = 0
        term *= (a + m + j) * (b + m + j) / ((j + 1) * (j + m + 1)) * w
    return total + sign * coef * w ** m * tail


def hyp2f1(a, b, c, z):
    """Gauss hypergeometric function 2F1(a, b; c; z) for real z <= 1.

    At z = 1 the Gauss sum is returned when c - a - b > 0; otherwise
    ``DivergenceError`` is raised and ``hyp2f1_near_one_class`` describes
    the singular behaviour.
    """
    a, b, c, z = float(a), float(b), float(c), float(z)
    _check(a, b, c, z)
    if z == 0.0:
        return 1.0
    if z == 1.0:
        if c - a - b > 0:
            return _gauss_sum(a, b, c)
        raise DivergenceError("2F1 diverges at z = 1 when c - a - b <= 0")
    if _terminating_degree(a, b) is not None:
        return hyp2f1_series(a, b, c, z)
    if abs(z) <= 0.5:
        return hyp2f1_series(a, b, c, z)
    if z < -0.5:
        w = z / (z - 1.0)
        # recurse so a terminating c - b is caught before the connection formula
        return (1.0 - z) ** (-a) * hyp2f1(a, c - b, c, w)
    return _near_one(a, b, c, z)


def hyp2f1_euler(a, b, c, z, rel_tol=1e-13):
    """Euler integral representation, valid for c > b > 0 and z < 1.

    The endpoint powers are handed to QUADPACK as algebraic weights.
    """
    if not c > b > 0:
        raise TransformInapplicable("Euler integral needs c > b > 0")
    if z >= 1.0:
        raise DomainError("Euler integral needs z < 1")
    norm = gamma_fn(c) * rgamma(b) * rgamma(c - b)
    val, _ = integrate.quad(
        lambda t: (1.0 - z * t) ** (-a), 0.0, 1.0,
        weight="alg", wvar=(b - 1.0, c - b - 1.0),
        epsabs=0.0, epsrel=rel_tol, limit=200,
    )
    return norm * val


TRANSFORMS = ("EulerA", "EulerB", "EulerC", "InversionZ")


def hyp2f1_transform(a, b, c, z, which):
    """Evaluate 2F1 through one of its linear transformations.

    ``EulerA``/``EulerB`` are the two Pfaff forms, ``EulerC`` is Euler's
    transformation, and ``InversionZ`` maps z < 0 to 1/z.
    """
    a, b, c, z = float(a), float(b), float(c), float(z)
    _check(a, b, c, z)
    if z >= 1.0:
        raise TransformInapplicable("transformations need z < 1")
    if which == "EulerA":
        return (1.0 - z) ** (-a) * hyp2f1(a, c - b, c, z / (z - 1.0))
    if which == "EulerB":
        return (1.0 - z) ** (-b) * hyp2f1(c - a, b, c, z / (z - 1.0))
    if which == "EulerC":
        return (1.0 - z) ** (c - a - b) * hyp2f1(c - a, c - b, c, z)
    if which == "InversionZ":
        if z == 0.0:
            return 1.0
        if z > 0.0:
            raise TransformInapplicable("inversion needs z < 0")
        if _near_int(b - a, 1e-8):
            raise TransformInapplicable("inversion needs b - a not an integer")
        mz = -z
        first = gamma_fn(c) * gamma_fn(b - a) * rgamma(b) * rgamma(c - a)
        second = gamma_fn(c) * gamma_fn(a - b) * rgamma(a) * rgamma(c - b)
        try:
            t1 = first * mz ** (-a) * hyp2f1(a, 1.0 - c + a, 1.0 - b + a, 1.0 / z) if first else 0.0
            t2 = second * mz ** (-b) * hyp2f1(b, 1.0 - c + b, 1.0 - a + b, 1.0 / z) if second else 0.0
        except (OverflowError, ZeroDivisionError, DivergenceError) as exc:
            raise TransformInapplicable("inversion overflows this close to z = 0") from exc
        out = t1 + t2
        if not math.isfinite(out) or (t1 == 0.0 and t2 == 0.0):
            raise TransformInapplicable("inversion terms overflow or underflow here")
        if abs(t1) + abs(t2) > INVERSION_COND * abs(out):
            raise TransformInapplicable("inversion is ill-conditioned here (terms cancel)")
        return out
    raise TransformInapplicable(f"unknown transformation {which!r}")


def applicable_transforms(a, b, c, z):
    """Names of the transformations valid at these parameters."""
    names = ["EulerA", "EulerB", "EulerC"]
    if z < 0 and not _near_int(b - a, 1e-8):
        try:
            hyp2f1_transform(a, b, c, z, "InversionZ")
            names.append("InversionZ")
        except TransformInapplicable:
            pass
    return names


@dataclass(frozen=True)
class AsymptoticClass:
    """Behaviour of 2F1(a, b; c; z) as z approaches 1 from below.

    ``kind`` is one of ``ConstantAtOne`` (finite limit ``value``),
    ``LogDivergent`` (``coefficient * -log(1 - z)``) or ``PowerDivergent``
    (``coefficient * (1 - z) ** exponent``).
    """

    kind: str
    value: float = math.nan
    coefficient: float = math.nan
    exponent: float = math.nan

    def leading(self, z):
        if self.kind == "ConstantAtOne":
            return self.value
        if self.kind == "LogDivergent":
            return -self.coefficient * math.log1p(-z)
        return self.coefficient * (1.0 - z) ** self.exponent


def _strict_gamma(x):
    try:
        return gamma_fn(x)
    except PoleError as exc:
        raise CoefficientPole(str(exc)) from exc


def hyp2f1_near_one_class(a, b, c):
    """Classify 2F1 near z = 1 and return the limit or leading coefficient."""
    s = c - a - b
    if abs(s) <= INT_TOL:
        coef = _strict_gamma(a + b) / (_strict_gamma(a) * _strict_gamma(b))
        return AsymptoticClass("LogDivergent", coefficient=coef)
    if s > 0:
        value = _strict_gamma(c) * _strict_gamma(s) / (_strict_gamma(c - a) * _strict_gamma(c - b))
        return AsymptoticClass("ConstantAtOne", value=value)
    coef = _strict_gamma(c) * _strict_gamma(-s) / (_strict_gamma(a) * _strict_gamma(b))
    return AsymptoticClass("PowerDivergent", coefficient=coef, exponent=s)
