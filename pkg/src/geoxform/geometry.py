"""Constant-curvature model spaces: curvature function, polar weights and
k-plane coordinates.

Radial functions are handed around through a *canonical argument* of the
geodesic distance t: t, cosh t or cos t on the point side, and t, sinh t or
sin t on the k-plane side.
"""

import enum
import math
from dataclasses import dataclass, field

import numpy as np

from .errors import DomainError


class Curvature(enum.Enum):
    FLAT = 0
    HYPERBOLIC = -1
    SPHERICAL = 1


_ALIASES = {
    "rn": Curvature.FLAT, "flat": Curvature.FLAT, "euclidean": Curvature.FLAT,
    "hn": Curvature.HYPERBOLIC, "hyperbolic": Curvature.HYPERBOLIC,
    "sn": Curvature.SPHERICAL, "spherical": Curvature.SPHERICAL, "sphere": Curvature.SPHERICAL,
}


@dataclass(frozen=True)
class Space:
    """A model space of constant curvature and dimension ``dim`` >= 2."""

    curvature: Curvature
    dim: int

    def __post_init__(self):
        if isinstance(self.curvature, str):
            key = self.curvature.lower()
            if key not in _ALIASES:
                raise DomainError(f"unknown space {self.curvature!r}")
            object.__setattr__(self, "curvature", _ALIASES[key])
        if int(self.dim) != self.dim or self.dim < 2:
            raise DomainError("dimension must be an integer >= 2")
        object.__setattr__(self, "dim", int(self.dim))

    @property
    def tag(self):
        return {Curvature.FLAT: "rn", Curvature.HYPERBOLIC: "hn", Curvature.SPHERICAL: "sn"}[self.curvature]

    @property
    def flat(self):
        return self.curvature is Curvature.FLAT

    @property
    def hyperbolic(self):
        return self.curvature is Curvature.HYPERBOLIC

    @property
    def spherical(self):
        return self.curvature is Curvature.SPHERICAL

    @property
    def max_distance(self):
        return math.pi if self.spherical else math.inf

    @property
    def radial_limit(self):
        """Upper end of the distance range for radial (even) profiles."""
        return math.pi / 2 if self.spherical else math.inf


def flat(n):
    return Space(Curvature.FLAT, n)


def hyperbolic(n):
    return Space(Curvature.HYPERBOLIC, n)


def spherical(n):
    return Space(Curvature.SPHERICAL, n)


def _check_distance(space, t):
    arr = np.asarray(t, dtype=float)
    if np.any(arr < 0) or np.any(arr > space.max_distance) or np.any(np.isnan(arr)):
        raise DomainError(f"distance {t} outside [0, {space.max_distance}]")
    return arr


def _out(x):
    return float(x) if np.ndim(x) == 0 else x


def sphere_area(m):
    """Surface measure |S^m| = 2 pi^((m+1)/2) / Gamma((m+1)/2)."""
    if m < 0:
        raise DomainError("sphere dimension must be >= 0")
    return 2.0 * math.pi ** ((m + 1) / 2.0) / math.gamma((m + 1) / 2.0)


def s_c(space, t):
    """Curvature function: t, sinh t or sin t."""
    t = _check_distance(space, t)
    if space.flat:
        return _out(t)
    if space.hyperbolic:
        return _out(np.sinh(t))
    return _out(np.sin(t))


def s_c_prime(space, t):
    """Derivative of the curvature function: 1, cosh t or cos t."""
    t = _check_distance(space, t)
    if space.flat:
        return _out(np.ones_like(t))
    if space.hyperbolic:
        return _out(np.cosh(t))
    return _out(np.cos(t))


def polar_weight_x(space, t):
    """Radial density s_c(t)^(n-1) of the volume form."""
    return _out(np.asarray(s_c(space, t)) ** (space.dim - 1))


def _check_k(space, k):
    if int(k) != k or not 1 <= k <= space.dim - 1:
        raise DomainError(f"k = {k} must be an integer in [1, {space.dim - 1}]")
    return int(k)


def polar_weight_xi(space, k, h):
    """Density of the k-plane measure in the distance h of the plane."""
    k = _check_k(space, k)
    h = _check_distance(space, h)
    m = space.dim - k - 1
    if space.flat:
        return _out(h ** m)
    if space.hyperbolic:
        return _out(np.cosh(h) ** k * np.sinh(h) ** m)
    return _out(np.cos(h) ** k * np.sin(h) ** m)


def xi_constant(space, k):
    """Constant in front of the k-plane polar measure: |S^(n-k-1)|."""
    k = _check_k(space, k)
    return sphere_area(space.dim - k - 1)


def canonical_arg(space, t, side="x"):
    """Argument consumed by radial profiles.

    ``side="x"`` gives t, cosh t, cos t; ``side="xi"`` gives t, sinh t, sin t.
    """
    t = _check_distance(space, t)
    if space.flat:
        return _out(t)
    if side == "x":
        return _out(np.cosh(t) if space.hyperbolic else np.cos(t))
    if side == "xi":
        return _out(np.sinh(t) if space.hyperbolic else np.sin(t))
    raise DomainError(f"side must be 'x' or 'xi', got {side!r}")


def distance_from_canonical(space, u, side="x"):
    """Inverse of ``canonical_arg`` on the radial range."""
    u = np.asarray(u, dtype=float)
    if space.flat:
        return _out(u)
    if space.hyperbolic:
        return _out(np.arccosh(np.maximum(u, 1.0)) if side == "x" else np.arcsinh(u))
    if side == "x":
        return _out(np.arccos(np.clip(u, -1.0, 1.0)))
    return _out(np.arcsin(np.clip(u, -1.0, 1.0)))


@dataclass(frozen=True)
class SubmanifoldCoord:
    """A totally geodesic k-plane given by an orthonormal frame and distance h.

    ``frame`` has k + 1 rows in R^n: the first k span the plane's direction,
    the last is the unit vector towards the foot of the perpendicular.
    """

    k: int
    h: float
    frame: np.ndarray = field(repr=False)
    space: Space = None

    def __post_init__(self):
        frame = np.atleast_2d(np.asarray(self.frame, dtype=float))
        object.__setattr__(self, "frame", frame)
        if frame.shape[0] != self.k + 1:
            raise DomainError("frame must have k + 1 rows")
        n = frame.shape[1]
        if not 1 <= self.k <= n - 1:
            raise DomainError("need 1 <= k <= n - 1")
        gram = frame @ frame.T
        if np.max(np.abs(gram - np.eye(self.k + 1))) > 1e-12:
            raise DomainError("frame is not orthonormal")
        if self.h < 0:
            raise DomainError("h must be >= 0")
        if self.space is not None:
            if self.space.dim != n:
                raise DomainError("frame dimension does not match the space")
            if self.space.spherical and self.h >= math.pi / 2:
                raise DomainError("spherical k-planes need h < pi/2")

    @property
    def tangent(self):
        return self.frame[: self.k]

    @property
    def normal(self):
        return self.frame[self.k]

    def rotated(self, rotation):
        return SubmanifoldCoord(self.k, self.h, self.frame @ np.asarray(rotation).T, self.space)


def random_rotation(n, rng):
    """Haar-random element of SO(n)."""
    q, r = np.linalg.qr(rng.standard_normal((n, n)))
    q = q * np.sign(np.diag(r))
    if np.linalg.det(q) < 0:
        q[:, 0] = -q[:, 0]
    return q


def random_coord(space, k, h, rng):
    """k-plane at distance h with a random orientation."""
    q = random_rotation(space.dim, rng)
    frame = q[: k + 1]
    # re-orthonormalize to kill rounding from the QR step
    frame, _ = np.linalg.qr(frame.T)
    return SubmanifoldCoord(k, h, frame.T[: k + 1], space)
