"""k-plane transform and its dual for radial functions.

Two independent routes are provided: direct quadrature of the radial
formulas (``kplane_radial``, ``dual_kplane_radial``) and a catalog of
closed forms built from 2F1 (``closed_form_eval``).  The catalog states
each formula up to a multiplicative constant; ``calibrate_constant`` pins
that constant against the quadrature route.

Quadrature works in desingularized variables.  With C the canonical
argument of h (C = h, cosh h or cos h):

* flat:        t = sqrt(h^2 + w^2),      R f = |S^(k-1)| int f(t) w^(k-1) dw
* hyperbolic:  cosh t = C cosh v,        R f = |S^(k-1)| int f(C cosh v) sinh^(k-1) v dv
* spherical:   cos t = C sin phi,        R f = 2 |S^(k-1)| int f(C sin phi) cos^(k-1) phi dphi

and for the dual, with S = r, sinh r or sin r and s = S sin theta,

    R* phi(r) = K int_0^(pi/2) phi(S sin theta) cos^(k-1) theta sin^(n-k-1) theta dtheta,

where K = |S^(k-1)| |S^(n-k-1)| / |S^(n-1)|.  None of these integrands has
a kernel singularity, whatever k is.
"""

import math
import threading
from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from .errors import (
    DegenerateReference,
    DomainError,
    NonIntegrable,
)
from .geometry import (
    Space,
    canonical_arg,
    distance_from_canonical,
    sphere_area,
)
from .hyperfunc import gamma_fn, hyp2f1
from .quadrature import DEFAULT_QUAD, quad_pieces, quad_tail

TAIL_CAP_HYPERBOLIC = 700.0
TAIL_CAP_FLAT = 1e150
EDGE_TOL = 1e-12


@dataclass(frozen=True)
class RadialProfile:
    """A radial function given through its canonical argument.

    ``support`` and ``breakpoints`` are geodesic distances.  The evaluator
    is only ever called with arguments that come from the open support.
    ``singularity_exponents`` bound the behaviour at the support ends:
    f(t) = O((t - t_lo)^e_lo) and O((t_hi - t)^e_hi).
    ``side`` is ``"x"`` for functions on the space and ``"xi"`` for
    functions on k-planes.
    """

    evaluator: Callable[[float], float]
    support: tuple = (0.0, math.inf)
    singularity_exponents: tuple = (0.0, 0.0)
    breakpoints: tuple = ()
    side: str = "x"
    label: str = ""

    def at_distance(self, space, t):
        """Value at geodesic distance t (zero off the support)."""
        lo, hi = self.support
        if t < lo or t > hi:
            return 0.0
        return float(self.evaluator(canonical_arg(space, t, self.side)))

    def canonical_support(self, space):
        """Support as an interval of the canonical argument (sorted)."""
        lo, hi = self.support
        hi = min(hi, space.radial_limit)
        ends = []
        for t in (lo, hi):
            if math.isinf(t):
                ends.append(math.inf)
            else:
                ends.append(float(canonical_arg(space, t, self.side)))
        return min(ends), max(ends)

    def canonical_breaks(self, space):
        out = []
        for t in self.breakpoints:
            if t <= space.radial_limit:
                out.append(float(canonical_arg(space, t, self.side)))
        return out


# ---------------------------------------------------------------- profiles


def _sc_from_u(space, u, side="x"):
    """s_c(t) written in the canonical argument."""
    if space.flat:
        return u
    if side == "xi":
        return u
    if space.hyperbolic:
        return math.sqrt(max(u * u - 1.0, 0.0))
    return math.sqrt(max(1.0 - u * u, 0.0))


def _scp_from_u(space, u, side="x"):
    """s_c'(t) written in the canonical argument."""
    if space.flat:
        return 1.0
    if side == "x":
        return u
    if space.hyperbolic:
        return math.sqrt(1.0 + u * u)
    return math.sqrt(max(1.0 - u * u, 0.0))


def parse_density(space, text, side="x"):
    """Density factors joined by ``*``.

    ``cosh`` and ``cos`` stand for s_c'(d); ``sinhpow:e`` is s_c(d)^e and
    ``cospow:e`` is s_c'(d)^e.  Returns (function of u, exponent of s_c,
    exponent of s_c').
    """
    powers = [0.0, 0.0]
    if text:
        for token in text.split("*"):
            token = token.strip()
            if token in ("cosh", "cos"):
                powers[1] += 1.0
            elif token.startswith(("sinhpow:", "sinpow:")):
                powers[0] += float(token.split(":", 1)[1])
            elif token.startswith(("coshpow:", "cospow:")):
                powers[1] += float(token.split(":", 1)[1])
            else:
                raise DomainError(f"unknown density {token!r}")
    e_sc, e_scp = powers

    def density(u):
        out = 1.0
        if e_sc:
            out *= _sc_from_u(space, u, side) ** e_sc
        if e_scp:
            out *= _scp_from_u(space, u, side) ** e_scp
        return out

    return density, e_sc, e_scp


def _exponents(space, lo, hi, e_sc, e_scp):
    """Endpoint exponents produced by the power density on [lo, hi]."""
    e_lo = e_sc if lo == 0.0 else 0.0
    e_hi = 0.0
    if space.spherical and hi >= math.pi / 2:
        e_hi = e_scp
    return (min(e_lo, 0.0), min(e_hi, 0.0))


def constant_profile(space, value=1.0, side="x"):
    return RadialProfile(lambda u: value, (0.0, space.radial_limit), side=side,
                         label=f"const:{value}")


def zero_profile(space, side="x"):
    return constant_profile(space, 0.0, side)


def annulus_profile(space, a, b, density=None, side="x"):
    """Indicator of a <= d(0, x) <= b times an optional density."""
    b = min(b, space.radial_limit)
    if not 0.0 <= a < b:
        raise DomainError("annulus needs 0 <= a < b")
    dens, e_sc, e_scp = parse_density(space, density, side)
    return RadialProfile(dens, (float(a), float(b)), _exponents(space, a, b, e_sc, e_scp),
                         side=side, label=f"annulus:{a},{b}" + (f",density={density}" if density else ""))


def ball_profile(space, lam, density=None, side="x"):
    """Indicator of the ball d(0, x) < lam times an optional density."""
    prof = annulus_profile(space, 0.0, lam, density, side)
    return RadialProfile(prof.evaluator, prof.support, prof.singularity_exponents,
                         side=side, label=f"ball:{lam}" + (f",density={density}" if density else ""))


def equator_profile(space, lam, density=None, side="x"):
    """Indicator of d(0, x) > lam, up to pi/2 on the sphere."""
    hi = space.radial_limit
    prof = annulus_profile(space, lam, hi, density, side) if not math.isinf(hi) else None
    if prof is None:
        dens, e_sc, e_scp = parse_density(space, density, side)
        return RadialProfile(dens, (float(lam), math.inf), (0.0, 0.0), side=side,
                             label=f"equator:{lam}")
    return RadialProfile(prof.evaluator, prof.support, prof.singularity_exponents,
                         side=side, label=f"equator:{lam}" + (f",density={density}" if density else ""))


def power_profile(space, e_sc, e_scp=0.0, side="x", support=None):
    """s_c(d)^e_sc * s_c'(d)^e_scp on the whole radial range."""
    lo, hi = support if support else (0.0, space.radial_limit)
    text = "*".join(t for t in (f"sinhpow:{e_sc}" if e_sc else "", f"cospow:{e_scp}" if e_scp else "") if t)
    dens, _, _ = parse_density(space, text, side)
    return RadialProfile(dens, (lo, hi), _exponents(space, lo, hi, e_sc, e_scp), side=side,
                         label=f"power:{e_sc},{e_scp}")


def table_profile(space, distances, values, side="x"):
    """Piecewise linear interpolation of sampled values in geodesic distance."""
    d = np.asarray(distances, dtype=float)
    v = np.asarray(values, dtype=float)
    if d.ndim != 1 or d.shape != v.shape or d.size < 2 or np.any(np.diff(d) <= 0):
        raise DomainError("table needs increasing distances and matching values")

    def evaluator(u):
        t = float(distance_from_canonical(space, u, side))
        return float(np.interp(t, d, v))

    return RadialProfile(evaluator, (float(d[0]), float(d[-1])), side=side, label="table")


def layered_profile(space, layers, side="x"):
    """Indicator of a union of disjoint annuli [(a_1, b_1), ...]."""
    layers = sorted((float(a), float(b)) for a, b in layers)
    if not layers:
        return zero_profile(space, side)
    canon = [tuple(sorted(canonical_arg(space, t, side) for t in pair)) for pair in layers]

    def evaluator(u):
        for lo, hi in canon:
            if lo <= u <= hi:
                return 1.0
        return 0.0

    edges = tuple(sorted({t for pair in layers for t in pair}))
    return RadialProfile(evaluator, (layers[0][0], layers[-1][1]), breakpoints=edges[1:-1],
                         side=side, label="layers")


# -------------------------------------------------------------- transforms


def _endpoint_check(space, k, f, h):
    lo, hi = f.support
    e_lo, e_hi = f.singularity_exponents
    if hi <= h:
        return
    if lo < h - EDGE_TOL:
        total = 0.0
    elif lo > h + EDGE_TOL:
        total = e_lo
    elif h <= EDGE_TOL:
        total = e_lo + k - 1
    else:
        total = e_lo + k / 2.0 - 1.0
    if total <= -1.0:
        raise NonIntegrable(f"endpoint exponent {total} <= -1 at the lower support edge")
    if not math.isinf(hi) and e_hi <= -1.0:
        raise NonIntegrable(f"endpoint exponent {e_hi} <= -1 at the upper support edge")


def _check_k(space, k):
    if int(k) != k or not 1 <= k <= space.dim - 1:
        raise DomainError(f"k = {k} must be an integer in [1, {space.dim - 1}]")
    return int(k)


def kplane_radial(space: Space, k, f: RadialProfile, h, quad=DEFAULT_QUAD):
    """k-plane transform of a radial function at a plane at distance h."""
    k = _check_k(space, k)
    h = float(h)
    if h < 0 or (space.spherical and h >= math.pi / 2):
        raise DomainError(f"h = {h} outside the k-plane distance range")
    lo, hi = f.support
    hi = min(hi, space.radial_limit)
    if hi <= h:
        return 0.0
    _endpoint_check(space, k, f, h)
    surface = sphere_area(k - 1)
    ev = f.evaluator
    breaks = [t for t in f.breakpoints if max(lo, h) < t < hi]

    if space.flat:
        def w_of(t):
            return math.sqrt(max(t * t - h * h, 0.0))

        def integrand(w):
            return ev(math.sqrt(h * h + w * w)) * w ** (k - 1)

        pts = [w_of(max(lo, h))] + [w_of(t) for t in breaks]
        if math.isinf(hi):
            val, _ = quad_tail(integrand, pts[0], quad, width=1.0, breaks=pts[1:],
                               cap=TAIL_CAP_FLAT, geometric=True)
        else:
            val, _ = quad_pieces(integrand, pts + [w_of(hi)], quad)
        return surface * val

    if space.hyperbolic:
        ch = math.cosh(h)

        def v_of(t):
            return math.acosh(max(math.cosh(t) / ch, 1.0))

        def integrand(v):
            return ev(ch * math.cosh(v)) * math.sinh(v) ** (k - 1)

        pts = [v_of(max(lo, h))] + [v_of(t) for t in breaks]
        if math.isinf(hi):
            val, _ = quad_tail(integrand, pts[0], quad, breaks=pts[1:], cap=TAIL_CAP_HYPERBOLIC)
        else:
            val, _ = quad_pieces(integrand, pts + [v_of(hi)], quad)
        return surface * val

    ch = math.cos(h)

    def phi_of(t):
        return math.asin(min(math.cos(t) / ch, 1.0))

    def integrand(phi):
        return ev(ch * math.sin(phi)) * math.cos(phi) ** (k - 1)

    pts = [phi_of(hi)] + [phi_of(t) for t in breaks] + [phi_of(max(lo, h))]
    val, _ = quad_pieces(integrand, pts, quad)
    return 2.0 * surface * val


def dual_constant(space, k):
    """|S^(k-1)| |S^(n-k-1)| / |S^(n-1)|."""
    n = space.dim
    return sphere_area(k - 1) * sphere_area(n - k - 1) / sphere_area(n - 1)


def dual_kplane_radial(space: Space, k, phi: RadialProfile, r, quad=DEFAULT_QUAD,
                       origin_limit=False):
    """Dual transform of a radial function on k-planes, at distance r.

    ``phi`` consumes the k-plane canonical argument (h, sinh h or sin h).
    At r = 0 the formula has a removable singularity; it is evaluated only
    when ``origin_limit`` is set.
    """
    k = _check_k(space, k)
    n = space.dim
    r = float(r)
    if r < 0 or r > space.radial_limit:
        raise DomainError(f"r = {r} outside the radial range")
    if r == 0.0 and not origin_limit:
        raise DomainError("r = 0 needs origin_limit=True")
    top = canonical_arg(space, r, "xi")
    lo, hi = phi.support
    e_lo, e_hi = phi.singularity_exponents
    m = n - k - 1
    if lo <= EDGE_TOL and e_lo + m <= -1.0:
        raise NonIntegrable("dual integrand not integrable at the origin")
    if lo > EDGE_TOL and e_lo <= -1.0:
        raise NonIntegrable("dual integrand not integrable at the support edge")
    if r == 0.0:
        return phi.evaluator(0.0) if lo <= EDGE_TOL else 0.0
    s_lo, s_hi = phi.canonical_support(space)
    if s_lo >= top:
        return 0.0
    ev = phi.evaluator

    def integrand(theta):
        return ev(top * math.sin(theta)) * math.cos(theta) ** (k - 1) * math.sin(theta) ** m

    def theta_of(s):
        return math.asin(min(max(s / top, 0.0), 1.0))

    pts = [theta_of(s_lo), theta_of(min(s_hi, top))]
    pts += [theta_of(s) for s in phi.canonical_breaks(space) if s_lo < s < min(s_hi, top)]
    val, _ = quad_pieces(integrand, pts, quad)
    return dual_constant(space, k) * val


# ------------------------------------------------------------ closed forms

FAMILIES = {
    "EuclideanBall": "rn",
    "HnBall": "hn",
    "HnBallCosh": "hn",
    "HnBallSinhCosh": "hn",
    "SnBallPlain": "sn",
    "SnBallCos": "sn",
    "SnBallCosSinPow": "sn",
    "SnEquatorPlain": "sn",
    "SnEquatorCos": "sn",
    "SnEquatorCosPow": "sn",
    "DualHnMixed": "hn",
    "DualSnMixed": "sn",
}

DUAL_FAMILIES = ("DualHnMixed", "DualSnMixed")


@dataclass
class ClosedFormFamily:
    """One closed form of the catalog with its parameters.

    ``params`` uses the keys ``lam`` (radius), ``alpha`` and ``p`` (power
    -alpha/p), ``gamma1`` and ``gamma2`` (dual weights).  The calibration
    constant is filled in once by ``calibrate_constant``; later readers see
    the stored value.
    """

    family_id: str
    params: dict = field(default_factory=dict)
    calibration_constant: float = None
    _lock: threading.Lock = field(default_factory=threading.Lock, repr=False, compare=False)

    def __post_init__(self):
        if self.family_id not in FAMILIES:
            raise DomainError(f"unknown family {self.family_id!r}")
        self.params = {key: float(v) for key, v in self.params.items()}
        self._validate()

    @property
    def space_tag(self):
        return FAMILIES[self.family_id]

    @property
    def is_dual(self):
        return self.family_id in DUAL_FAMILIES

    @property
    def power(self):
        return self.params["alpha"] / self.params["p"]

    def _validate(self):
        need = {"gamma1", "gamma2"} if self.is_dual else {"lam"}
        if self.family_id in ("HnBallSinhCosh", "SnBallCosSinPow", "SnEquatorCosPow"):
            need |= {"alpha", "p"}
        missing = need - set(self.params)
        if missing:
            raise DomainError(f"{self.family_id} needs parameters {sorted(missing)}")
        if not self.is_dual:
            lam = self.params["lam"]
            if lam <= 0 or (self.space_tag == "sn" and lam >= math.pi / 2):
                raise DomainError("radius outside the admissible range")
        if self.family_id == "SnEquatorCosPow" and not self.power < 2.0:
            raise DomainError("SnEquatorCosPow needs alpha < 2p")
        if self.family_id in ("HnBallSinhCosh", "SnBallCosSinPow") and self.params["p"] < 1:
            raise DomainError("p must be >= 1")


def family_profile(space, fam: ClosedFormFamily):
    """The radial function the family transforms."""
    _check_family_space(space, fam)
    par = fam.params
    fid = fam.family_id
    if fam.is_dual:
        return power_profile(space, par["gamma1"], par["gamma2"], side="xi",
                             support=(0.0, space.radial_limit))
    lam = par["lam"]
    if fid in ("EuclideanBall", "HnBall", "SnBallPlain"):
        return ball_profile(space, lam)
    if fid in ("HnBallCosh", "SnBallCos"):
        return ball_profile(space, lam, "cos")
    if fid in ("HnBallSinhCosh", "SnBallCosSinPow"):
        return ball_profile(space, lam, f"sinhpow:{-fam.power}*cos")
    if fid == "SnEquatorPlain":
        return equator_profile(space, lam)
    if fid == "SnEquatorCos":
        return equator_profile(space, lam, "cos")
    return equator_profile(space, lam, f"cospow:{1.0 - fam.power}")


def _check_family_space(space, fam):
    if space.tag != fam.space_tag:
        raise DomainError(f"{fam.family_id} lives on {fam.space_tag}, not {space.tag}")


def closed_form_shape(space, k, fam: ClosedFormFamily, x):
    """Closed form without its leading constant.

    ``x`` is the plane distance h (or the point distance r for the dual
    families).  Returns 0 where the transform vanishes identically.
    """
    _check_family_space(space, fam)
    k = _check_k(space, k)
    n = space.dim
    par = fam.params
    fid = fam.family_id
    x = float(x)
    if fid == "DualHnMixed":
        g1, g2 = par["gamma1"], par["gamma2"]
        return (math.sinh(x) ** g1 * math.cosh(x) ** g2
                * hyp2f1(-g2 / 2.0, k / 2.0, (g1 + n) / 2.0, math.tanh(x) ** 2))
    if fid == "DualSnMixed":
        g1, g2 = par["gamma1"], par["gamma2"]
        return (math.sin(x) ** g1 * math.cos(x) ** g2
                * hyp2f1(-g2 / 2.0, k / 2.0, (g1 + n) / 2.0, -math.tan(x) ** 2))

    lam = par["lam"]
    if fid == "EuclideanBall":
        return (lam * lam - x * x) ** (k / 2.0) if x < lam else 0.0

    if fid.startswith("Hn"):
        if x >= lam:
            return 0.0
        ratio = math.sinh(x) ** 2 / math.sinh(lam) ** 2
        if fid == "HnBall":
            z = 1.0 - math.cosh(x) ** 2 / math.cosh(lam) ** 2
            return (math.tanh(lam) ** k * (1.0 - ratio) ** (k / 2.0)
                    * hyp2f1((k + 1) / 2.0, k / 2.0, 1.0 + k / 2.0, z))
        if fid == "HnBallCosh":
            return (math.cosh(lam) ** 2 - math.cosh(x) ** 2) ** (k / 2.0) / math.cosh(x) ** (k - 1)
        q = fam.power
        return (math.sinh(lam) ** (k - q) / math.cosh(x) ** (k - 1) * (1.0 - ratio) ** (k / 2.0)
                * hyp2f1(q / 2.0, 1.0, 1.0 + k / 2.0, 1.0 - ratio))

    c_h, c_l = math.cos(x), math.cos(lam)
    if fid.startswith("SnBall"):
        if x >= lam:
            return 0.0
        ratio = math.sin(x) ** 2 / math.sin(lam) ** 2
        if fid == "SnBallPlain":
            return ((math.sin(lam) ** 2 - math.sin(x) ** 2) ** (k / 2.0) / c_h ** k
                    * hyp2f1(0.5, k / 2.0, 1.0 + k / 2.0, 1.0 - c_l ** 2 / c_h ** 2))
        if fid == "SnBallCos":
            return (math.sin(lam) ** 2 - math.sin(x) ** 2) ** (k / 2.0) / c_h ** (k - 1)
        q = fam.power
        return (math.sin(lam) ** (k - q) / c_h ** (k - 1) * (1.0 - ratio) ** (k / 2.0)
                * hyp2f1(q / 2.0, 1.0, 1.0 + k / 2.0, 1.0 - ratio))

    low = min(c_h, c_l)
    z = (low / c_h) ** 2
    if fid == "SnEquatorPlain":
        # normalized so that the plane lying inside the region gives 1
        return (low / c_h * hyp2f1(1.0 - k / 2.0, 0.5, 1.5, z)
                / hyp2f1(1.0 - k / 2.0, 0.5, 1.5, 1.0))
    if fid == "SnEquatorCos":
        gap = max(math.sin(x) ** 2, math.sin(lam) ** 2) - math.sin(x) ** 2
        return (c_h ** k - gap ** (k / 2.0)) / c_h ** (k - 1)
    q = fam.power
    return low ** (2.0 - q) / c_h * hyp2f1(1.0 - k / 2.0, 1.0 - q / 2.0, 2.0 - q / 2.0, z)


def exact_constant(space, k, fam: ClosedFormFamily):
    """Leading constant of the closed form, derived by hand."""
    _check_family_space(space, fam)
    n = space.dim
    surf = sphere_area(k - 1)
    fid = fam.family_id
    if fam.is_dual:
        g1 = fam.params["gamma1"]
        a, b = (g1 + n - k) / 2.0, k / 2.0
        beta = gamma_fn(a) * gamma_fn(b) / gamma_fn(a + b)
        return dual_constant(space, k) * beta / 2.0
    if fid in ("EuclideanBall", "HnBall", "HnBallCosh", "HnBallSinhCosh"):
        return surf / k
    if fid in ("SnBallPlain", "SnBallCos", "SnBallCosSinPow", "SnEquatorCos"):
        return 2.0 * surf / k
    if fid == "SnEquatorPlain":
        return sphere_area(k)
    return 2.0 * surf / (2.0 - fam.power)


def closed_form_eval(space, k, fam: ClosedFormFamily, x, constant=None):
    """Closed form times the family's constant.

    The constant is, in order of preference: the ``constant`` argument, the
    stored calibration constant, the hand-derived exact constant.
    """
    shape = closed_form_shape(space, k, fam, x)
    if constant is None:
        constant = fam.calibration_constant
    if constant is None:
        constant = exact_constant(space, k, fam)
    return constant * shape


def family_quadrature(space, k, fam, x, quad=DEFAULT_QUAD):
    """Quadrature route for the family at h (or r for the dual families)."""
    prof = family_profile(space, fam)
    if fam.is_dual:
        return dual_kplane_radial(space, k, prof, x, quad)
    return kplane_radial(space, k, prof, x, quad)


def calibrate_constant(space, k, fam: ClosedFormFamily, reference_point, quad=DEFAULT_QUAD):
    """Ratio of quadrature to closed-form shape at one reference point.

    The first successful call stores the constant on ``fam``; later calls
    return the stored value without recomputing.
    """
    if fam.calibration_constant is not None:
        return fam.calibration_constant
    with fam._lock:
        if fam.calibration_constant is not None:
            return fam.calibration_constant
        shape = closed_form_shape(space, k, fam, reference_point)
        if shape == 0.0 or not math.isfinite(shape):
            raise DegenerateReference(f"shape vanishes at {reference_point}")
        value = family_quadrature(space, k, fam, reference_point, quad) / shape
        fam.calibration_constant = value
        return value
