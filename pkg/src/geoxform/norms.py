"""Weighted Lebesgue and Lorentz norms of radial data, and the duality
pairing between the k-plane transform and its dual.

The point-side weight is s_c(d)^alpha1 * s_c'(d)^alpha2 against the volume
form; the plane-side weight is s_c(h)^beta1 * s_c'(h)^beta2 against the
k-plane measure |S^(n-k-1)| * polar_weight_xi(h) dh.  On the sphere the
point side integrates over the full sphere (twice the hemisphere) since
radial profiles are even.
"""

import math
from dataclasses import dataclass

from .errors import DivergentNorm, DomainError, NonIntegrable, TruncationFailure
from .geometry import polar_weight_xi, sphere_area
from .quadrature import DEFAULT_QUAD, quad, quad_pieces, quad_tail
from .radial_transform import (
    RadialProfile,
    dual_kplane_radial,
    kplane_radial,
)

EDGE_TOL = 1e-12


@dataclass(frozen=True)
class WeightConfig:
    """Exponents of a weighted L^p space: weight s_c^alpha1 * s_c'^alpha2."""

    alpha1: float = 0.0
    alpha2: float = 0.0
    p: float = 1.0

    def __post_init__(self):
        if not self.p >= 1.0:
            raise DomainError("p must be >= 1")


@dataclass(frozen=True)
class LayeredRadialSet:
    """Union of disjoint closed annuli given by geodesic radii (a_i, b_i)."""

    layers: tuple = ()

    def __post_init__(self):
        layers = tuple(sorted((float(a), float(b)) for a, b in self.layers))
        for a, b in layers:
            if not 0.0 <= a < b:
                raise DomainError(f"bad layer ({a}, {b})")
        for (a0, b0), (a1, b1) in zip(layers[:-1], layers[1:]):
            if a1 < b0:
                raise DomainError("layers overlap")
        object.__setattr__(self, "layers", layers)

    @property
    def empty(self):
        return not self.layers


def point_constant(space):
    """Surface factor in front of radial integrals over the space."""
    c = sphere_area(space.dim - 1)
    return 2.0 * c if space.spherical else c


def _point_density(space, t, alpha1, alpha2):
    n = space.dim
    if space.flat:
        return t ** (alpha1 + n - 1)
    if space.hyperbolic:
        return math.sinh(t) ** (alpha1 + n - 1) * math.cosh(t) ** alpha2
    return math.sin(t) ** (alpha1 + n - 1) * math.cos(t) ** alpha2


def _plane_density(space, k, h, beta1, beta2):
    base = polar_weight_xi(space, k, h)
    if space.flat:
        return base * h ** beta1 if beta1 else base
    if space.hyperbolic:
        return base * math.sinh(h) ** beta1 * math.cosh(h) ** beta2
    return base * math.sin(h) ** beta1 * math.cos(h) ** beta2


def _integrate_radial(space, fn, lo, hi, breaks, quad_spec):
    """Integral of fn(t) dt over [lo, hi] with tails for infinite hi."""
    hi = min(hi, space.radial_limit)
    if hi <= lo:
        return 0.0
    breaks = sorted(b for b in breaks if lo < b < hi)
    try:
        if math.isinf(hi):
            geometric = space.flat
            val, _ = quad_tail(fn, lo, quad_spec, width=1.0 if geometric else math.log(2.0),
                               breaks=breaks, geometric=geometric,
                               cap=700.0 if space.hyperbolic else 1e150)
        else:
            val, _ = quad_pieces(fn, [lo] + breaks + [hi], quad_spec)
    except (TruncationFailure, OverflowError) as exc:
        raise DivergentNorm(str(exc)) from exc
    if not math.isfinite(val):
        raise DivergentNorm("norm integral is not finite")
    return val


def lp_norm_power(space, f: RadialProfile, w: WeightConfig, quad_spec=DEFAULT_QUAD):
    """The p-th power of the weighted norm (no root taken)."""
    n = space.dim
    lo, hi = f.support
    e_lo, e_hi = f.singularity_exponents
    if lo <= EDGE_TOL and w.alpha1 + n - 1 + w.p * e_lo <= -1.0:
        raise NonIntegrable("norm integrand not integrable at the origin")
    if space.spherical and hi >= math.pi / 2 and w.alpha2 + w.p * e_hi <= -1.0:
        raise NonIntegrable("norm integrand not integrable at the equator")

    def integrand(t):
        val = f.at_distance(space, t)
        if val == 0.0:
            return 0.0
        return abs(val) ** w.p * _point_density(space, t, w.alpha1, w.alpha2)

    return point_constant(space) * _integrate_radial(space, integrand, lo, hi, f.breakpoints, quad_spec)


def lp_norm_radial(space, f: RadialProfile, w: WeightConfig, quad_spec=DEFAULT_QUAD):
    """Weighted L^p norm of a radial function, surface factor included."""
    return lp_norm_power(space, f, w, quad_spec) ** (1.0 / w.p)


def _alg_quad(fn, lo, hi, e_lo, e_hi, spec):
    """int fn(x) (x-lo)^e_lo (hi-x)^e_hi dx via QUADPACK's algebraic weight."""
    val, _ = quad(fn, lo, hi, spec, weight="alg", wvar=(e_lo, e_hi))
    return val


def _alg_pieces(fn, lo, hi, e_lo, e_hi, cuts, spec):
    """Same integral split at interior ``cuts`` (jumps of fn).

    The end pieces keep their algebraic weight; interior pieces carry the
    weight explicitly.  ``hi`` may be infinite when ``e_hi`` is 0.
    """
    cuts = set(cuts) | ({lo + 1.0} if math.isinf(hi) else set())
    pts = [lo] + sorted(c for c in cuts if lo < c < hi) + [hi]
    total = 0.0
    for i, (a, b) in enumerate(zip(pts[:-1], pts[1:])):
        first, last = i == 0, i == len(pts) - 2
        if math.isinf(b):
            val, _ = quad(lambda x: fn(x) * (x - lo) ** e_lo, a, b, spec)
        elif first and last:
            val = _alg_quad(fn, a, b, e_lo, e_hi, spec)
        elif first:
            val = _alg_quad(lambda x: fn(x) * (hi - x) ** e_hi, a, b, e_lo, 0.0, spec)
        elif last:
            val = _alg_quad(lambda x: fn(x) * (x - lo) ** e_lo, a, b, 0.0, e_hi, spec)
        else:
            val, _ = quad(lambda x: fn(x) * (x - lo) ** e_lo * (hi - x) ** e_hi, a, b, spec)
        total += val
    return total


def norm_variants(space, f: RadialProfile, w: WeightConfig, quad_spec=DEFAULT_QUAD):
    """The radial norm integral (p-th power, without the surface factor)
    written in several substituted variables.

    Hyperbolic: ``t`` (geodesic), ``x = cosh t`` and ``y = cosh^2 t - 1``.
    Spherical: ``t``, ``x = cos^2 t``, ``x = sin^2 t`` and ``x = tan^2 t``.
    All entries must agree; they are a self-consistency check.
    """
    if space.flat:
        raise DomainError("substitution variants exist only for curved spaces")
    n = space.dim
    a1, a2, p = w.alpha1, w.alpha2, w.p
    ev = f.evaluator
    u_lo, u_hi = f.canonical_support(space)
    # distances where the integrand may jump
    jumps = [t for t in (*f.support, *f.breakpoints) if 0.0 < t < space.radial_limit]

    def g(u):
        if u < u_lo or u > u_hi:
            return 0.0
        try:
            return abs(ev(u)) ** p
        except ZeroDivisionError:
            # a profile singular at an end sampled exactly there; a null set
            return 0.0

    out = {"t": lp_norm_power(space, f, w, quad_spec) / point_constant(space)}
    e1 = (a1 + n) / 2.0 - 1.0
    if space.hyperbolic:
        # x = cosh t on [1, inf): (x - 1)^e1 (x + 1)^e1 x^a2
        cuts = [math.cosh(t) for t in jumps]
        out["x=cosh t"] = _alg_pieces(lambda x: g(x) * (x + 1.0) ** e1 * x ** a2,
                                      1.0, math.inf, e1, 0.0, cuts, quad_spec)
        # y = cosh^2 t - 1 on [0, inf): y^e1 (y + 1)^((a2 - 1)/2) / 2
        e2 = (a2 - 1.0) / 2.0
        cuts = [math.sinh(t) ** 2 for t in jumps]
        out["y=sinh^2 t"] = 0.5 * _alg_pieces(lambda y: g(math.sqrt(y + 1.0)) * (y + 1.0) ** e2,
                                              0.0, math.inf, e1, 0.0, cuts, quad_spec)
        return out
    e2 = (a2 - 1.0) / 2.0
    out["x=cos^2 t"] = 0.5 * _alg_pieces(lambda x: g(math.sqrt(x)), 0.0, 1.0, e2, e1,
                                         [math.cos(t) ** 2 for t in jumps], quad_spec)
    out["x=sin^2 t"] = 0.5 * _alg_pieces(lambda x: g(math.sqrt(1.0 - x)), 0.0, 1.0, e1, e2,
                                         [math.sin(t) ** 2 for t in jumps], quad_spec)
    e3 = -(a1 + a2 + n + 1) / 2.0
    out["x=tan^2 t"] = 0.5 * _alg_pieces(lambda x: g(1.0 / math.sqrt(1.0 + x)) * (1.0 + x) ** e3,
                                         0.0, math.inf, e1, 0.0, [math.tan(t) ** 2 for t in jumps], quad_spec)
    return out


def lr_norm_transform_power(space, k, f: RadialProfile, w_xi: WeightConfig, quad_spec=DEFAULT_QUAD):
    """r-th power of the weighted norm of R_k f on the k-plane space."""
    r = w_xi.p
    inner = quad_spec.tightened(100.0)
    lo, hi = 0.0, f.support[1]
    if space.spherical:
        hi = math.pi / 2

    def integrand(h):
        val = kplane_radial(space, k, f, h, inner)
        if val == 0.0:
            return 0.0
        return abs(val) ** r * _plane_density(space, k, h, w_xi.alpha1, w_xi.alpha2)

    breaks = list(f.breakpoints) + [f.support[0]] if f.support[0] > 0 else list(f.breakpoints)
    val = _integrate_radial(space, integrand, lo, hi, breaks, quad_spec)
    return sphere_area(space.dim - k - 1) * val


def lr_norm_transform(space, k, f: RadialProfile, w_xi: WeightConfig, quad_spec=DEFAULT_QUAD):
    """Weighted L^r norm of R_k f; ``w_xi`` carries (beta1, beta2, r)."""
    return lr_norm_transform_power(space, k, f, w_xi, quad_spec) ** (1.0 / w_xi.p)


def lr_norm_transform_substituted(space, k, f, w_xi, quad_spec=DEFAULT_QUAD):
    """Same integral in s = cosh h (hyperbolic) or s = cos h (spherical).

    Hyperbolic weight: s^(beta2+k) (s^2-1)^((beta1+n-k)/2-1) ds on (1, inf).
    Spherical weight:  s^(beta2+k) (1-s^2)^((beta1+n-k)/2-1) ds on (0, 1).
    """
    n = space.dim
    r, b1, b2 = w_xi.p, w_xi.alpha1, w_xi.alpha2
    inner = quad_spec.tightened(100.0)
    e = (b1 + n - k) / 2.0 - 1.0
    if space.flat:
        return lr_norm_transform_power(space, k, f, w_xi, quad_spec)
    if space.hyperbolic:
        top = math.cosh(f.support[1]) if math.isfinite(f.support[1]) else math.inf

        def fn(s):
            val = kplane_radial(space, k, f, math.acosh(s), inner)
            return abs(val) ** r * s ** (b2 + k) * (s + 1.0) ** e

        if math.isinf(top):
            head = _alg_quad(fn, 1.0, 2.0, e, 0.0, quad_spec)
            tail, _ = quad(lambda s: fn(s) * (s - 1.0) ** e, 2.0, math.inf, quad_spec)
            return sphere_area(n - k - 1) * (head + tail)
        return sphere_area(n - k - 1) * _alg_quad(fn, 1.0, top, e, 0.0, quad_spec)

    def fn(s):
        val = kplane_radial(space, k, f, math.acos(s), inner)
        return abs(val) ** r * s ** (b2 + k) * (1.0 + s) ** e

    return sphere_area(n - k - 1) * _alg_quad(fn, 0.0, 1.0, 0.0, e, quad_spec)


def layer_measure(space, a, b, w: WeightConfig, quad_spec=DEFAULT_QUAD):
    """Weighted measure of the annulus a <= d <= b."""
    hi = min(b, space.radial_limit)
    val, _ = quad(lambda t: _point_density(space, t, w.alpha1, w.alpha2), a, hi, quad_spec)
    return point_constant(space) * val


def set_measure(space, layered: LayeredRadialSet, w: WeightConfig, quad_spec=DEFAULT_QUAD):
    return math.fsum(layer_measure(space, a, b, w, quad_spec) for a, b in layered.layers)


def lorentz_p1_norm(space, layered: LayeredRadialSet, w: WeightConfig, quad_spec=DEFAULT_QUAD,
                    normalization="indicator"):
    """L^{p,1} norm of the indicator of a layered radial set.

    The distribution function of an indicator is mu(E) on [0, 1) and 0
    after, so the defining integral p * int_0^inf lambda(s)^(1/p) ds equals
    p * mu(E)^(1/p).  The default ``"indicator"`` normalization returns
    mu(E)^(1/p), which agrees with the L^p norm of the same indicator;
    ``"definition"`` returns the raw integral.
    """
    if layered.empty:
        return 0.0
    mu = set_measure(space, layered, w, quad_spec)
    base = mu ** (1.0 / w.p)
    if normalization == "indicator":
        return base
    if normalization == "definition":
        return w.p * base
    raise DomainError(f"unknown normalization {normalization!r}")


def duality_pairing(space, k, f: RadialProfile, phi: RadialProfile, quad_spec=DEFAULT_QUAD):
    """Both sides of  int_Xi R_k f * phi  =  int_X f * R_k^* phi."""
    n = space.dim
    inner = quad_spec.tightened(100.0)

    def lhs_integrand(h):
        val = kplane_radial(space, k, f, h, inner)
        if val == 0.0:
            return 0.0
        ph = phi.at_distance(space, h)
        return val * ph * polar_weight_xi(space, k, h)

    h_hi = min(f.support[1], phi.support[1])
    if space.spherical:
        h_hi = min(h_hi, math.pi / 2)
    h_lo = phi.support[0]
    breaks = list(phi.breakpoints) + list(f.breakpoints) + [f.support[0]]
    lhs = sphere_area(n - k - 1) * _integrate_radial(space, lhs_integrand, h_lo, h_hi, breaks, quad_spec)

    def rhs_integrand(t):
        val = f.at_distance(space, t)
        if val == 0.0:
            return 0.0
        return val * dual_kplane_radial(space, k, phi, t, inner, origin_limit=True) \
            * _point_density(space, t, 0.0, 0.0)

    lo, hi = f.support
    breaks = list(f.breakpoints) + list(phi.breakpoints) + [phi.support[0]]
    rhs = point_constant(space) * _integrate_radial(space, rhs_integrand, lo, hi, breaks, quad_spec)
    return lhs, rhs


def xi_measure_total(space, k, beta1=0.0, beta2=0.0, quad_spec=DEFAULT_QUAD):
    """Total weighted measure of the spherical k-plane space."""
    if not space.spherical:
        raise DomainError("only the sphere has finite k-plane measure")
    val, _ = quad(lambda h: _plane_density(space, k, h, beta1, beta2), 0.0, math.pi / 2, quad_spec)
    return sphere_area(space.dim - k - 1) * val

