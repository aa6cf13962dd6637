"""Riemann-Liouville fractional integrals with multi-point power weights.

Conventions:

    I^alpha_{a+} phi(x) = 1/Gamma(alpha) int_a^x phi(y) (x - y)^(alpha - 1) dy
    I^alpha_-    phi(x) = 1/Gamma(alpha) int_x^inf phi(y) (y - x)^(alpha - 1) dy

For alpha = 1/2 the kernel singularity is removed exactly by y = x -+ w^2;
other orders hand the endpoint power to QUADPACK as an algebraic weight.

The counterexample functions psi concentrate a non-L^2 singularity at the
point a/2.  Their probes run in the logarithmic coordinate
x = a/2 + e^(-v), which keeps distances down to e^(-1000) representable.
"""

import math
from dataclasses import dataclass
from typing import Callable, Optional

import numpy as np

from .errors import DomainError, NonIntegrable, WeightPole
from .quadrature import DEFAULT_QUAD, quad, quad_pieces, quad_tail

# divergence verdict: growth of at least 5% on each of the last 3 refinements
GROWTH_THRESHOLD = 0.05
GROWTH_RUN = 3
CONVERGED_CHANGE = 1e-6
MIN_GRID = 6
POLE_TOL = 1e-14

SQRT_PI = math.sqrt(math.pi)


# ------------------------------------------------------------- integrals


def _check_alpha(alpha):
    if not alpha > 0:
        raise DomainError(f"order alpha = {alpha} must be positive")


def rl_lower(alpha, a, phi, x, quad_spec=DEFAULT_QUAD, breaks=()):
    """Left-sided integral I^alpha_{a+} phi(x) for x > a."""
    _check_alpha(alpha)
    if not x > a:
        raise DomainError("rl_lower needs x > a")
    inner = sorted(b for b in breaks if a < b < x)
    if alpha == 0.5:
        span = math.sqrt(x - a)
        pts = [0.0] + sorted(math.sqrt(x - b) for b in inner) + [span]
        val, err = quad_pieces(lambda w: phi(x - w * w), pts, quad_spec)
        val *= 2.0
    elif alpha == 1.0:
        val, err = quad_pieces(phi, [a, *inner, x], quad_spec)
    else:
        pts = [a, *inner, x]
        val = err = 0.0
        for lo, hi in zip(pts[:-1], pts[1:]):
            # only the last piece touches the kernel singularity at y = x
            if hi == x:
                v, e = quad(phi, lo, hi, quad_spec, weight="alg", wvar=(0.0, alpha - 1.0))
            else:
                v, e = quad(lambda y: phi(y) * (x - y) ** (alpha - 1.0), lo, hi, quad_spec)
            val += v
            err += e
    if not math.isfinite(val):
        raise NonIntegrable("fractional integral is not finite")
    return val / math.gamma(alpha)


def rl_upper_inf(alpha, phi, x, quad_spec=DEFAULT_QUAD, breaks=()):
    """Right-sided integral I^alpha_- phi(x) over (x, infinity)."""
    _check_alpha(alpha)
    if x < 0:
        raise DomainError("rl_upper_inf needs x >= 0")
    inner = sorted(b for b in breaks if b > x)
    if alpha == 0.5:
        pts = [math.sqrt(b - x) for b in inner]
        val, _ = quad_tail(lambda w: phi(x + w * w), 0.0, quad_spec, width=1.0, breaks=pts,
                           cap=1e150, geometric=True)
        return 2.0 * val / SQRT_PI
    head, _ = _alg_pieces(phi, x, x + 1.0, alpha, inner, quad_spec)
    tail, _ = quad_tail(lambda y: phi(y) * (y - x) ** (alpha - 1.0), x + 1.0, quad_spec,
                        width=1.0, breaks=[b for b in inner if b > x + 1.0],
                        cap=1e150, geometric=True)
    return (head + tail) / math.gamma(alpha)


def _alg_pieces(phi, x, right, alpha, inner, quad_spec):
    pts = [x] + [b for b in inner if b < right] + [right]
    v, e = quad(phi, pts[0], pts[1], quad_spec, weight="alg", wvar=(alpha - 1.0, 0.0))
    for lo, hi in zip(pts[1:-1], pts[2:]):
        dv, de = quad(lambda y: phi(y) * (y - x) ** (alpha - 1.0), lo, hi, quad_spec)
        v += dv
        e += de
    return v, e


def xray_via_fracint(profile, h, quad_spec=DEFAULT_QUAD, breaks=()):
    """Flat X-ray transform of a radial f at distance h through
    sqrt(pi) * I^(1/2)_- phi (h^2), where phi(y) = f(sqrt(y))."""
    return SQRT_PI * rl_upper_inf(0.5, lambda y: profile(math.sqrt(y)), h * h, quad_spec,
                                  breaks=tuple(b * b for b in breaks))


# --------------------------------------------------------------- weights


@dataclass(frozen=True)
class FracWeightSpec:
    """Power weights attached to a partition 0 = a_1 < ... < a_l.

    ``domain`` is ``"HalfLine"`` ([0, inf], a_l finite) or ``"Interval"``
    ([0, a] with a_l = a).  ``q`` follows from alpha - m = 1/p - 1/q;
    alpha = m + 1/p gives q = inf.
    """

    domain: str
    partition: tuple
    exponents: tuple
    alpha: float
    p: float
    m: float = 0.0
    gamma_inf: float = 0.0
    epsilons: Optional[tuple] = None

    def __post_init__(self):
        if self.domain not in ("HalfLine", "Interval"):
            raise DomainError(f"unknown domain {self.domain!r}")
        pts = tuple(float(x) for x in self.partition)
        if not pts or pts[0] != 0.0 or any(b <= a for a, b in zip(pts, pts[1:])):
            raise DomainError("partition must start at 0 and increase strictly")
        if self.domain == "Interval" and len(pts) < 2:
            raise DomainError("an interval partition needs its right end point")
        if len(self.exponents) != len(pts):
            raise DomainError("one exponent per partition point")
        eps = self.epsilons if self.epsilons is not None else (0.1,) * len(pts)
        if len(eps) != len(pts) or min(eps) <= 0:
            raise DomainError("epsilons must be positive, one per point")
        if not self.p > 1:
            raise DomainError("p must exceed 1")
        if not 0 <= self.m <= self.alpha:
            raise DomainError("need 0 <= m <= alpha")
        if not 0 < self.alpha <= self.m + 1.0 / self.p + 1e-15:
            raise DomainError("need 0 < alpha <= m + 1/p")
        object.__setattr__(self, "partition", pts)
        object.__setattr__(self, "exponents", tuple(float(g) for g in self.exponents))
        object.__setattr__(self, "epsilons", tuple(float(e) for e in eps))

    @property
    def q(self):
        inv = 1.0 / self.p - (self.alpha - self.m)
        return math.inf if inv <= 1e-15 else 1.0 / inv

    @property
    def right_end(self):
        return self.partition[-1] if self.domain == "Interval" else math.inf

    @property
    def deltas(self):
        """delta_j: gamma_j above the threshold alpha - 1/p, else just below it."""
        thr = self.alpha - 1.0 / self.p
        return tuple(g if g > thr else thr - self.m - e
                     for g, e in zip(self.exponents, self.epsilons))

    @property
    def delta_inf(self):
        total = self.gamma_inf + sum(self.exponents)
        return total - self.m - sum(self.deltas)


def _product(points, exps, x):
    out = 1.0
    for a, g in zip(points, exps):
        d = abs(x - a)
        if d <= POLE_TOL:
            if g < 0:
                raise WeightPole(f"weight has a pole at partition point {a}")
            out *= 0.0 if g > 0 else 1.0
        else:
            out *= d ** g
    return out


def weight_eval(spec: FracWeightSpec, which, x):
    """rho, rho_minus (half line) or rho_plus (interval) at x."""
    x = float(x)
    if x < 0 or x > spec.right_end:
        raise DomainError(f"x = {x} outside the domain")
    if which == "Rho":
        val = _product(spec.partition, spec.exponents, x)
        if spec.domain == "HalfLine":
            val *= (1.0 + x) ** spec.gamma_inf
        return val
    if which == "RhoMinus":
        return (1.0 + x) ** spec.delta_inf * _product(spec.partition, spec.deltas, x)
    if which == "RhoPlus":
        head = _product((0.0,), (spec.exponents[0] - spec.m,), x)
        return head * _product(spec.partition[1:], spec.deltas[1:], x)
    raise DomainError(f"unknown weight {which!r}")


def boundedness_predicate(spec: FracWeightSpec):
    """Hypothesis of the weighted L^p -> L^q bound on the weight's domain."""
    if spec.domain == "Interval":
        return True
    return spec.gamma_inf + sum(spec.exponents) > spec.alpha - 1.0 / spec.p


def boundedness_ratio(spec: FracWeightSpec, phi, support, grid_points, quad_spec=DEFAULT_QUAD,
                      breaks=()):
    """||rho_- I^alpha_- phi||_inf / ||rho phi||_p sampled on a grid.

    ``phi`` vanishes outside ``support``; the sup is taken over
    ``grid_points`` evenly spaced midpoints of [0, support end].
    """
    if spec.domain != "HalfLine":
        raise DomainError("boundedness_ratio covers the half-line operator")
    lo, hi = support
    pts = [lo, *sorted(b for b in breaks if lo < b < hi), hi]
    src, _ = quad_pieces(lambda y: abs(weight_eval(spec, "Rho", y) * phi(y)) ** spec.p, pts, quad_spec)
    src = src ** (1.0 / spec.p)
    xs = (np.arange(grid_points) + 0.5) * hi / grid_points
    tgt = 0.0
    for x in xs:
        val = _upper_compact(spec.alpha, phi, x, hi, breaks, quad_spec)
        tgt = max(tgt, abs(weight_eval(spec, "RhoMinus", x) * val))
    return tgt / src


def _upper_compact(alpha, phi, x, hi, breaks, quad_spec):
    if x >= hi:
        return 0.0
    inner = [b for b in breaks if x < b < hi]
    if alpha == 0.5:
        pts = [0.0] + [math.sqrt(b - x) for b in inner] + [math.sqrt(hi - x)]
        v, _ = quad_pieces(lambda w: phi(x + w * w), pts, quad_spec)
        return 2.0 * v / SQRT_PI
    v, _ = _alg_pieces(phi, x, hi, alpha, inner, quad_spec)
    return v / math.gamma(alpha)


# -------------------------------------------------------- counterexamples


def interior_point(partition_1, partition_2, domain="HalfLine"):
    """The point a: the first interior partition point of either weight (1 if none)."""
    seconds = [p[1] for p in (partition_1, partition_2) if len(p) >= 2]
    if domain == "Interval":
        if len(seconds) < 2:
            raise DomainError("interval partitions contain at least 0 and 1")
        return min(seconds)
    return min(seconds) if seconds else 1.0


def _check_psi(a, gamma):
    if not 1.0 < gamma <= 1.5:
        raise DomainError(f"gamma = {gamma} outside (1, 3/2]")
    if not 0.0 < a < 4.0:
        raise DomainError("the logarithm in psi needs 0 < a < 4")


def counterexample_psi(domain_choice, a, gamma, rho1, x):
    """The function psi with a logarithmically weighted 1/s singularity.

    ``HalfLinePlus`` lives on (a/2, 3a/4) with s = x - a/2;
    ``IntervalMinus`` lives on (a/4, a/2) with s = a/2 - x.
    """
    _check_psi(a, gamma)
    if domain_choice == "HalfLinePlus":
        if not a / 2 < x < 3 * a / 4:
            return 0.0
        s = x - a / 2
    elif domain_choice == "IntervalMinus":
        if not a / 4 < x < a / 2:
            return 0.0
        s = a / 2 - x
    else:
        raise DomainError(f"unknown psi domain {domain_choice!r}")
    return (1.0 / s) * math.log(1.0 / s) ** (-gamma) / rho1(x)


def psi_l1_closed_form(a, gamma):
    """||psi||_{L^1(rho_1)} = int_{ln(4/a)}^inf u^(-gamma) du."""
    _check_psi(a, gamma)
    return math.log(4.0 / a) ** (1.0 - gamma) / (gamma - 1.0)


@dataclass(frozen=True)
class PsiParams:
    domain_choice: str = "HalfLinePlus"
    a: float = 1.0
    gamma: float = 1.25
    rho1: Callable[[float], float] = lambda x: 1.0
    rho2: Callable[[float], float] = lambda x: 1.0

    def __post_init__(self):
        _check_psi(self.a, self.gamma)
        if self.domain_choice not in ("HalfLinePlus", "IntervalMinus"):
            raise DomainError(f"unknown psi domain {self.domain_choice!r}")

    def point(self, u):
        """Point at log-distance u from a/2, on the side where psi lives."""
        side = 1.0 if self.domain_choice == "HalfLinePlus" else -1.0
        return self.a / 2 + side * math.exp(-u)

    @property
    def u_start(self):
        return math.log(4.0 / self.a)


def psi_source_norm(params: PsiParams, quad_spec=DEFAULT_QUAD):
    """||psi||_{L^1(rho_1)} by quadrature in u (x - a/2 = +-e^(-u))."""
    def fn(u):
        return u ** (-params.gamma)
    val, _ = quad(fn, params.u_start, math.inf, quad_spec)
    return val


def _scaled_half_integral(params: PsiParams, v, quad_spec):
    """e^(-v/2) times the half-order integral of psi at the point of log-distance v.

    With t at log-distance u >= v, t - x = e^(-v)(1 - e^(v-u)).
    """
    g = params.gamma

    def fn(r):
        u = v + r * r
        gap = -math.expm1(-r * r)
        return u ** (-g) / params.rho1(params.point(u)) * 2.0 * r / math.sqrt(gap) if r > 0 else \
            2.0 * v ** (-g) / params.rho1(params.point(v))

    near, _ = quad(fn, 0.0, 6.0, quad_spec)
    # beyond r = 6 the gap factor equals 1 to double precision
    far, _ = quad(lambda u: u ** (-g) / params.rho1(params.point(u)), v + 36.0, math.inf, quad_spec)
    return (near + far) / SQRT_PI


def psi_target_norms(params: PsiParams, truncation_grid, quad_spec=DEFAULT_QUAD):
    """Truncated ||I^(1/2) psi||_{L^2(rho_2)} over the psi window minus
    (a/2 - e^(-V), a/2 + e^(-V)), one value per V in the grid."""
    grid = list(truncation_grid)
    start = params.u_start

    def fn(v):
        j = _scaled_half_integral(params, v, quad_spec)
        return j * j * params.rho2(params.point(v))

    out = []
    total = 0.0
    left = start
    for right in grid:
        if right <= left:
            raise DomainError("truncation grid must increase and start above ln(4/a)")
        piece, _ = quad_tail(fn, left, quad_spec, width=max(1.0, (right - left) / 8), upper=right)
        total += piece
        out.append(math.sqrt(total))
        left = right
    return out


def _generic_target_norms(phi, operator, a, truncation_grid, quad_spec, breaks):
    """Same truncated norm for a bounded phi, integrated directly in x."""
    out = []
    total = 0.0
    left = math.log(4.0 / a)

    def value(v):
        if operator == "IHalfPlus_L2":
            x = a / 2 + math.exp(-v)
            return rl_lower(0.5, 0.0, phi, x, quad_spec, breaks)
        x = a / 2 - math.exp(-v)
        return _upper_compact(0.5, phi, x, 1.0, breaks, quad_spec)

    def fn(v):
        return value(v) ** 2 * math.exp(-v)

    for right in truncation_grid:
        piece, _ = quad_tail(fn, left, quad_spec, width=max(1.0, (right - left) / 8), upper=right)
        total += piece
        out.append(math.sqrt(total))
        left = right
    return out


@dataclass(frozen=True)
class ProbeResult:
    values: tuple
    verdict: str
    source_norm: float
    source_change: float


def growth_verdict(values, threshold=GROWTH_THRESHOLD, run=GROWTH_RUN, converged=CONVERGED_CHANGE):
    """Divergent if each of the last ``run`` refinements grows by the
    threshold; Convergent if the last change is below ``converged``."""
    vals = list(values)
    if len(vals) < run + 1:
        return "Inconclusive"
    tail = vals[-(run + 1):]
    ratios = [b / a if a > 0 else math.inf for a, b in zip(tail[:-1], tail[1:])]
    if all(r >= 1.0 + threshold for r in ratios):
        return "Divergent"
    last, prev = vals[-1], vals[-2]
    if abs(last - prev) <= converged * max(abs(last), 1e-300):
        return "Convergent"
    return "Inconclusive"


def default_truncation_grid(a=1.0, count=7):
    base = math.log(4.0 / a)
    return [base + 10.0 * 2 ** j for j in range(count)]


def divergence_probe(operator, psi_params=None, truncation_grid=None, quad_spec=DEFAULT_QUAD,
                     phi=None, breaks=()):
    """Truncated target norms of I^(1/2) psi (or of a given phi) and a verdict.

    ``IHalfPlus_L2`` pairs the half-line psi with I^(1/2)_{0+};
    ``IHalfMinus_L2`` pairs the interval psi with I^(1/2)_{1-}.
    """
    if operator not in ("IHalfPlus_L2", "IHalfMinus_L2"):
        raise DomainError(f"unknown operator {operator!r}")
    if psi_params is None:
        psi_params = PsiParams("HalfLinePlus" if operator == "IHalfPlus_L2" else "IntervalMinus")
    grid = list(truncation_grid or default_truncation_grid(psi_params.a))
    if len(grid) < MIN_GRID or any(b <= a for a, b in zip(grid, grid[1:])):
        raise DomainError(f"truncation grid needs at least {MIN_GRID} increasing entries")
    if phi is not None:
        values = _generic_target_norms(phi, operator, psi_params.a, grid, quad_spec, breaks)
        src = quad_pieces(lambda y: abs(phi(y)), [0.0, *breaks, 1.0], quad_spec)[0]
        return ProbeResult(tuple(values), growth_verdict(values), src, 0.0)
    values = psi_target_norms(psi_params, grid, quad_spec)
    coarse = psi_source_norm(psi_params, quad_spec)
    fine = psi_source_norm(psi_params, quad_spec.tightened(100.0))
    change = abs(fine - coarse) / abs(fine)
    return ProbeResult(tuple(values), growth_verdict(values), fine, change)
