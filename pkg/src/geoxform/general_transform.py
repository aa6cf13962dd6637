"""k-plane transform of general (non-radial) functions through cap integrals.

A k-plane at distance h with unit normal u is seen from the origin under a
cap of directions omega on the unit k-sphere of span(plane, u).  Each
direction hits the plane once, at a geodesic radius fixed by <omega, u>,
and the plane's volume pulls back to a kernel on the cap:

* flat:        h^k / c^(k+1),                              radius h / c
* hyperbolic:  (coth^2 h c^2 - 1)^(-(k+1)/2) / sinh h,     radius mu_bar(tanh h / c) / 2
* spherical:   (cot^2 h c^2 + 1)^(-(k+1)/2) / sin h,       radius atan(tan h / c)

with c = <omega, u>.  The hyperbolic cap is c > tanh h, the others c > 0.
On the sphere the cap only sees half of the great k-sphere; the other half
is the antipodal image, so even functions give twice the cap integral.

The colatitude of the cap is integrated in the in-plane distance w of the
hit point from the foot of the perpendicular.  That moves the boundary of
the hyperbolic and flat caps to w = infinity, where the tail test applies.
"""

import math
import warnings
from dataclasses import dataclass
from typing import Callable

import numpy as np

from .errors import DomainError, NonIntegrable, TruncationFailure, UnsupportedDimension
from .geometry import Space, SubmanifoldCoord, canonical_arg
from .quadrature import DEFAULT_QUAD, quad_pieces, quad_tail
from .radial_transform import RadialProfile

MAX_K = 4
DEFAULT_CIRCLE_NODES = 32
DEFAULT_LEGENDRE_NODES = 20
EVEN_TOL = 1e-10
# kernel overflows for radii beyond roughly 700 / (k + 1)
HYPERBOLIC_TAIL_CAP = 160.0
FLAT_TAIL_CAP = 1e150


@dataclass(frozen=True)
class AmbientFunction:
    """A function on the model space in polar form f(direction, radius).

    ``evaluator(directions, t)`` receives an (m, n) array of unit vectors
    and an (m,) array of geodesic radii and returns m values.
    ``breaks`` lists radii where f is not smooth; they become quadrature
    breakpoints.
    """

    evaluator: Callable
    max_radius: float = math.inf
    smoothness: str = "Smooth"
    breaks: tuple = ()

    def __post_init__(self):
        if self.smoothness not in ("Smooth", "PiecewiseSmooth"):
            raise DomainError(f"unknown smoothness hint {self.smoothness!r}")

    def __call__(self, directions, t):
        directions = np.atleast_2d(np.asarray(directions, dtype=float))
        t = np.broadcast_to(np.asarray(t, dtype=float), directions.shape[:1])
        out = np.zeros(t.shape)
        inside = t <= self.max_radius
        if np.any(inside):
            out[inside] = np.asarray(self.evaluator(directions[inside], t[inside]), dtype=float)
        return out

    @classmethod
    def from_profile(cls, space: Space, profile: RadialProfile):
        """Radial function seen as an ambient function (even on the sphere)."""
        lo, hi = profile.support
        ev = profile.evaluator

        def evaluator(directions, t):
            if space.spherical:
                # even extension: distance pi - t behaves like t
                t = np.minimum(t, math.pi - t)
            # cap nodes share one radius per call, so evaluate per distinct radius
            radii, where = np.unique(t, return_inverse=True)
            vals = np.array([ev(canonical_arg(space, float(r), profile.side)) if lo <= r <= hi else 0.0
                             for r in radii])
            return vals[where]

        breaks = tuple(b for b in (lo, hi, *profile.breakpoints) if 0 < b < math.inf)
        if space.spherical:
            breaks = breaks + tuple(math.pi - b for b in breaks)
        smooth = "PiecewiseSmooth" if breaks else "Smooth"
        return cls(evaluator, math.inf, smooth, breaks)


def zero_function():
    return AmbientFunction(lambda d, t: np.zeros(len(t)))


def mu_bar(x):
    """ln((1 + x) / (1 - x)) = 2 atanh x, the hyperbolic distance of a
    Klein-model point at Euclidean radius x, doubled."""
    x = float(x)
    if not 0.0 < x < 1.0:
        raise DomainError(f"mu_bar needs 0 < x < 1, got {x}")
    return 2.0 * math.atanh(x)


# ------------------------------------------------------------ sphere rules


def sphere_rule(m, circle_nodes=DEFAULT_CIRCLE_NODES, legendre_nodes=DEFAULT_LEGENDRE_NODES):
    """Nodes (N, m+1) and weights on S^m for m = 0..3; weights sum to |S^m|."""
    if m == 0:
        return np.array([[1.0], [-1.0]]), np.ones(2)
    phi = 2.0 * math.pi * np.arange(circle_nodes) / circle_nodes
    circle = np.column_stack([np.cos(phi), np.sin(phi)])
    circle_w = np.full(circle_nodes, 2.0 * math.pi / circle_nodes)
    if m == 1:
        return circle, circle_w
    x, wx = np.polynomial.legendre.leggauss(legendre_nodes)
    if m == 2:
        # z = cos(colatitude) is uniform for the area measure
        r = np.sqrt(1.0 - x * x)
        pts = np.concatenate([np.column_stack([ri * circle, np.full(circle_nodes, zi)])
                              for ri, zi in zip(r, x)])
        wts = np.concatenate([wi * circle_w for wi in wx])
        return pts, wts
    if m == 3:
        # Hopf coordinates (cos chi a, sin chi b); u = sin^2 chi is uniform, density 1/2
        u = 0.5 * (x + 1.0)
        wu = 0.5 * wx
        pts, wts = [], []
        for ui, wi in zip(u, wu):
            ca, sa = math.sqrt(1.0 - ui), math.sqrt(ui)
            a = np.repeat(circle, circle_nodes, axis=0)
            b = np.tile(circle, (circle_nodes, 1))
            pts.append(np.column_stack([ca * a, sa * b]))
            wts.append(0.5 * wi * np.outer(circle_w, circle_w).ravel())
        return np.concatenate(pts), np.concatenate(wts)
    raise UnsupportedDimension(f"sphere rules exist for S^0..S^3, not S^{m}")


# ---------------------------------------------------------- cap quadrature


@dataclass(frozen=True)
class ColatitudeMap:
    """Colatitude theta(s) as a function of an integration variable s.

    ``hi`` may be infinite; then the tail is integrated until negligible.
    """

    theta: Callable[[float], float]
    dtheta: Callable[[float], float]
    lo: float
    hi: float
    breaks: tuple = ()
    tail_geometric: bool = False
    tail_cap: float = math.inf

    @classmethod
    def identity(cls, tau):
        return cls(lambda s: s, lambda s: 1.0, 0.0, math.acos(tau))


def cap_quadrature(k, tau, integrand, quad=DEFAULT_QUAD, substitution=None,
                   circle_nodes=DEFAULT_CIRCLE_NODES, legendre_nodes=DEFAULT_LEGENDRE_NODES):
    """Integrate over the cap {omega in S^k : omega_(k+1) > tau}.

    ``integrand(omega, s)`` takes an (N, k+1) array of cap points sharing
    the colatitude theta(s) and returns N values.  The colatitude is
    integrated adaptively, the S^(k-1) factor with a fixed product rule.
    """
    if int(k) != k or k < 1:
        raise DomainError("cap dimension k must be a positive integer")
    if k > MAX_K:
        raise UnsupportedDimension(f"cap rules support k <= {MAX_K}")
    if not 0.0 <= tau < 1.0:
        raise DomainError(f"tau = {tau} outside [0, 1)")
    sub = substitution or ColatitudeMap.identity(tau)
    nodes, weights = sphere_rule(k - 1, circle_nodes, legendre_nodes)

    def line(s):
        theta = sub.theta(s)
        st, ct = math.sin(theta), math.cos(theta)
        omega = np.column_stack([st * nodes, np.full(len(nodes), ct)])
        vals = np.asarray(integrand(omega, s), dtype=float)
        if not np.all(np.isfinite(vals)):
            raise NonIntegrable(f"integrand not finite at colatitude {theta}")
        return st ** (k - 1) * sub.dtheta(s) * float(np.dot(weights, vals))

    inner = sorted(b for b in sub.breaks if sub.lo < b < sub.hi)
    try:
        if math.isinf(sub.hi):
            val, err = quad_tail(line, sub.lo, quad, width=1.0, breaks=inner,
                                 cap=sub.tail_cap, geometric=sub.tail_geometric)
        else:
            val, err = quad_pieces(line, [sub.lo, *inner, sub.hi], quad)
    except TruncationFailure as exc:
        raise NonIntegrable(f"cap integral does not converge at the boundary: {exc}") from exc
    if not math.isfinite(val) or err > 1e3 * (quad.rel_tol * abs(val) + quad.abs_tol) + 1e-6 * abs(val):
        raise NonIntegrable(f"cap integral unstable near the boundary (value {val}, error {err})")
    return val


# --------------------------------------------------------- k-plane formula


def cap_kernel(space: Space, k, h, c):
    """Pull-back of the k-plane volume to the cap, as a function of c = <omega, u>."""
    c = np.asarray(c, dtype=float)
    if space.flat:
        return h ** k / c ** (k + 1)
    if space.hyperbolic:
        gap = (c / math.tanh(h)) ** 2 - 1.0
        with np.errstate(divide="ignore", invalid="ignore"):
            return np.where(gap > 0, gap ** (-(k + 1) / 2.0), np.inf) / math.sinh(h)
    return ((c / math.tan(h)) ** 2 + 1.0) ** (-(k + 1) / 2.0) / math.sin(h)


def radius_from_cosine(space: Space, h, c):
    """Geodesic radius of the point where direction omega meets the plane."""
    if space.flat:
        return h / c
    if space.hyperbolic:
        return 0.5 * mu_bar(math.tanh(h) / c)
    return math.atan(math.tan(h) / c)


def _log_cosh(x):
    return x + math.log1p(math.exp(-2.0 * x)) - math.log(2.0)


def _in_plane(space, h):
    """Functions of the in-plane distance w: colatitude, its derivative, radius."""
    if space.flat:
        def theta(w):
            return math.atan2(w, h)

        def dtheta(w):
            return h / (h * h + w * w)

        def radius(w):
            return math.hypot(h, w)

        def w_of(t):
            return math.sqrt(max(t * t - h * h, 0.0))

        return theta, dtheta, radius, w_of, math.inf

    if space.hyperbolic:
        s = math.sinh(h)

        def theta(w):
            return math.atan2(math.tanh(w), s)

        def dtheta(w):
            return s / (s * s * math.cosh(w) ** 2 + math.sinh(w) ** 2) if w < 350 else 0.0

        def radius(w):
            if h + w < 20.0:
                return math.acosh(math.cosh(h) * math.cosh(w))
            log_x = _log_cosh(h) + _log_cosh(w)
            return log_x + math.log1p(math.sqrt(-math.expm1(-2.0 * log_x)))

        def w_of(t):
            return math.acosh(max(math.cosh(t) / math.cosh(h), 1.0))

        return theta, dtheta, radius, w_of, math.inf

    s = math.sin(h)

    def theta(w):
        return math.atan2(math.sin(w), s * math.cos(w))

    def dtheta(w):
        return s / (s * s * math.cos(w) ** 2 + math.sin(w) ** 2)

    def radius(w):
        return math.acos(math.cos(h) * math.cos(w))

    def w_of(t):
        t = min(t, math.pi - t)
        return math.acos(min(math.cos(t) / math.cos(h), 1.0))

    return theta, dtheta, radius, w_of, math.pi / 2


def _evenness_warning(space, f, rng_seed=0):
    rng = np.random.default_rng(rng_seed)
    d = rng.standard_normal((8, space.dim))
    d /= np.linalg.norm(d, axis=1, keepdims=True)
    t = rng.uniform(0.0, math.pi, 8)
    a, b = f(d, t), f(-d, math.pi - t)
    if np.max(np.abs(a - b) / (1.0 + np.abs(a))) > EVEN_TOL:
        warnings.warn("function on the sphere is not even; its odd part is annihilated",
                      stacklevel=3)


def kplane_general(space: Space, coord: SubmanifoldCoord, f: AmbientFunction, quad=DEFAULT_QUAD,
                   circle_nodes=DEFAULT_CIRCLE_NODES, legendre_nodes=DEFAULT_LEGENDRE_NODES):
    """Integral of f over the k-plane described by ``coord``."""
    k, h = coord.k, float(coord.h)
    if coord.frame.shape[1] != space.dim:
        raise DomainError("frame dimension does not match the space")
    if h <= 0.0:
        raise DomainError("the cap formula needs h > 0")
    if space.spherical and h >= math.pi / 2:
        raise DomainError("spherical k-planes need h < pi/2")
    if k > MAX_K:
        raise UnsupportedDimension(f"k <= {MAX_K} supported")

    theta, dtheta, radius, w_of, w_max = _in_plane(space, h)
    frame = coord.frame
    tau = math.tanh(h) if space.hyperbolic else 0.0

    if space.spherical:
        _evenness_warning(space, f)

    def integrand(omega, w):
        t = radius(w)
        dirs = omega @ frame
        vals = f(dirs, np.full(len(dirs), t))
        if space.spherical:
            vals = vals + f(-dirs, np.full(len(dirs), math.pi - t))
        nz = vals != 0.0
        out = np.zeros(len(vals))
        if np.any(nz):
            out[nz] = vals[nz] * cap_kernel(space, k, h, omega[nz, k])
        return out

    breaks = []
    for b in f.breaks:
        if space.spherical or b > h:
            wb = w_of(b)
            if 0.0 < wb < w_max:
                breaks.append(wb)
    hi = w_max
    if not space.spherical and math.isfinite(f.max_radius):
        hi = w_of(f.max_radius) if f.max_radius > h else 0.0
    sub = ColatitudeMap(theta, dtheta, 0.0, hi, tuple(breaks),
                        tail_geometric=space.flat,
                        tail_cap=FLAT_TAIL_CAP if space.flat else HYPERBOLIC_TAIL_CAP)
    if hi == 0.0:
        return 0.0
    val = cap_quadrature(k, tau, integrand, quad, sub, circle_nodes, legendre_nodes)
    # the spherical integrand already carries both antipodal halves
    return val
