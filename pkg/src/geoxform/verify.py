"""Boundedness conditions and numerical probes of the weighted estimates.

Three kinds of checks live here:

* ``condition_check`` evaluates the necessary and sufficient parameter
  conditions of every estimate (existence, L^p -> L^r, L^p -> L^inf,
  L^p -> L^p and the Lorentz endpoint estimates) on Rn, Hn and Sn.
* ``ratio_probe``, ``blowup_probe`` and ``endpoint_lorentz_probe`` compute
  norm ratios on explicit test functions, so that the predicates can be
  compared with what actually happens numerically.
* ``lemma_suite`` stress-tests the one-dimensional integral inequalities
  behind the sufficiency proofs on random layered sets.

Strict-versus-non-strict boundary cases are never folded silently into
the booleans: the booleans use the non-strict reading and the boundary is
reported in ``endpoint_flags``.
"""

import math
from dataclasses import asdict, dataclass, field

import numpy as np
from scipy import special

from .errors import DivergentNorm, DomainError, NumericalFailure
from .fracint import GROWTH_THRESHOLD, growth_verdict
from .geometry import Space, sphere_area
from .norms import LayeredRadialSet, WeightConfig, lorentz_p1_norm, lp_norm_radial, lr_norm_transform
from .quadrature import DEFAULT_QUAD, quad, quad_pieces
from .radial_transform import annulus_profile, ball_profile, equator_profile, kplane_radial, layered_profile

EQ_TOL = 1e-12

# --------------------------------------------------------------- conditions

INEQUALITY_IDS = (
    "ExistenceHn", "ExistenceSn",
    "RnLpLinf", "HnLpLr", "HnLpLinf", "SnLpLr", "SnLpLinf",
    "HnLpLp", "SnLpLp", "RnLpLp",
    "EndpointHnGamma", "EndpointHnMixed", "EndpointSnGamma", "EndpointSnMixed",
)

ID_SPACE = {i: "rn" if "Rn" in i else "hn" if "Hn" in i else "sn" for i in INEQUALITY_IDS}

_ALIASES = {i.lower(): i for i in INEQUALITY_IDS}


def canonical_id(name):
    """Accept ``HnLpLr``, ``hn-lp-lr`` or ``hn_lp_lr``."""
    key = str(name).replace("-", "").replace("_", "").lower()
    if key not in _ALIASES:
        raise DomainError(f"unknown inequality id {name!r}")
    return _ALIASES[key]


def _close(a, b):
    return abs(a - b) <= EQ_TOL * max(1.0, abs(a), abs(b))


def _ge(a, b):
    return a > b or _close(a, b)


def _gt(a, b):
    return a > b and not _close(a, b)


def _le(a, b):
    return _ge(b, a)


def _lt(a, b):
    return _gt(b, a)


@dataclass(frozen=True)
class ConditionReport:
    """Outcome of one condition check.

    ``standing_ok`` reports the standing hypotheses of the estimate; both
    booleans are false when they fail.  ``citations`` are internal ids of
    the condition sets that were evaluated.
    """

    inequality_id: str
    inputs: dict
    necessary_ok: bool
    sufficient_ok: bool
    standing_ok: bool = True
    endpoint_flags: tuple = ()
    citations: tuple = ()

    def to_dict(self):
        out = asdict(self)
        out["endpoint_flags"] = list(self.endpoint_flags)
        out["citations"] = list(self.citations)
        return out


class _Inputs:
    """Parameter lookup with readable errors and the usual aliases."""

    _ALIAS = {"alpha": "alpha1", "beta": "beta1", "dim": "n"}

    def __init__(self, raw):
        self.raw = {}
        for key, val in dict(raw).items():
            if val is None:
                continue
            self.raw[key] = val

    def get(self, key, default=None):
        for name in (key, self._ALIAS.get(key), *[a for a, b in self._ALIAS.items() if b == key]):
            if name and name in self.raw:
                val = float(self.raw[name])
                if math.isnan(val):
                    raise DomainError(f"parameter {key} is NaN")
                return val
        if default is not None:
            return float(default)
        raise DomainError(f"missing parameter {key!r}")

    def has(self, key):
        try:
            self.get(key)
        except DomainError:
            return False
        return True

    def dims(self):
        n, k = self.get("n"), self.get("k")
        if n != int(n) or k != int(k) or not 1 <= k <= n - 1:
            raise DomainError(f"need integers 1 <= k <= n - 1, got n={n}, k={k}")
        return int(n), int(k)


def _hn_bound(n, k, a_sum):
    """Upper end of the existence range of p on Hn."""
    return math.inf if k == 1 else (a_sum + n - 1) / (k - 1)


def _existence_hn(n, k, p, a1, a2):
    s = a1 + a2
    if _gt(s, k - n):
        return _ge(p, 1.0) and _lt(p, _hn_bound(n, k, s))
    return _close(s, k - n) and _close(p, 1.0)


def _existence_sn(p, a2):
    return (_gt(p, 1.0 + a2) and _ge(p, 1.0)) or (_close(a2, 0.0) and _close(p, 1.0))


def _standing_rn(n, k, p, a):
    return (_gt(a, k - n) and _ge(p, 1.0) and _lt(p, (a + n) / k)) or (_close(a, k - n) and _close(p, 1.0))


def _k1_lr_proviso(k, p, r):
    if k >= 2:
        return True
    if _gt(p, 1.0):
        return _le(1.0 / p - 1.0 / r, 0.5)
    return _close(p, 1.0) and _lt(r, 2.0)


def _k1_flags(k, p, r, necessary, sufficient):
    flags = []
    if k == 1 and necessary and not sufficient:
        flags.append("k1_proviso_fails_necessity_open")
    if k == 1 and _close(p, 1.0) and _close(r, 2.0):
        flags.append("k1_p1_r2_fractional_reduction")
    return flags


def _check_existence_hn(q):
    n, k = q.dims()
    p, a1, a2 = q.get("p"), q.get("alpha1"), q.get("alpha2")
    ok = _existence_hn(n, k, p, a1, a2)
    flags = []
    s = a1 + a2
    if k >= 2 and _gt(s, k - n) and _close(p, _hn_bound(n, k, s)):
        flags.append("p_at_existence_bound")
    if _close(s, k - n):
        flags.append("alpha_sum_equals_k_minus_n")
    return True, ok, ok, flags, ("existence/hn",)


def _check_existence_sn(q):
    p, a2 = q.get("p"), q.get("alpha2")
    ok = _existence_sn(p, a2)
    flags = []
    if _gt(a2, 0.0) and _close(p, 1.0 + a2):
        flags.append("p_equals_1_plus_alpha2")
    return True, ok, ok, flags, ("existence/sn",)


def _check_rn_lp_linf(q):
    n, k = q.dims()
    p, a, b = q.get("p"), q.get("alpha1"), q.get("beta1")
    standing = _standing_rn(n, k, p, a)
    on_plane = _close(b, (a + n) / p - k)
    nec = standing and on_plane
    suff = nec and _gt(a, k - n) and (k >= 2 or _gt(p, 2.0))
    flags = []
    if nec and not _gt(a, k - n):
        flags.append("outside_sufficiency_hypotheses")
    if k == 1 and _close(p, 2.0):
        flags.append("k1_p_equals_2")
    return standing, nec, suff, flags, ("conditions/rn-lp-linf-necessary", "conditions/rn-lp-linf-sufficient")


def _check_hn_lp_lr(q):
    n, k = q.dims()
    p, r = q.get("p"), q.get("r")
    a1, a2, b1, b2 = q.get("alpha1"), q.get("alpha2"), q.get("beta1"), q.get("beta2")
    standing = _existence_hn(n, k, p, a1, a2) and _ge(r, p)
    lower = (b2 + k - 1) / r - (a2 - 1) / p
    mid = (a1 + n) / p - (b1 + n - k) / r
    nec = standing and _gt(b1, k - n) and _le(lower, mid) and _le(mid, k)
    suff = nec and _k1_lr_proviso(k, p, r)
    flags = []
    if nec and _close(mid, k):
        flags.append("scaling_upper_equality")
    if nec and _close(lower, mid):
        flags.append("growth_lower_equality")
    flags += _k1_flags(k, p, r, nec, suff)
    return standing, nec, suff, flags, ("conditions/hn-lp-lr-necessary", "conditions/hn-lp-lr-sufficient")


def _lorentz_gamma1_flags(p, a1, n, k, g1):
    if _close(p, (a1 + n) / k) and _close(g1, 0.0):
        return ["lorentz_endpoint_gamma1_zero"]
    return []


def _check_hn_lp_linf(q):
    n, k = q.dims()
    p, a1, a2 = q.get("p"), q.get("alpha1"), q.get("alpha2")
    g1, g2 = q.get("gamma1"), q.get("gamma2")
    standing = _existence_hn(n, k, p, a1, a2)
    nec = standing and _ge(g1, max(0.0, (a1 + n) / p - k)) and _le(g1 + g2, (a1 + a2 + n - 1) / p)
    at_endpoint = _close(p, (a1 + n) / k)
    suff = nec and (not at_endpoint or _gt(g1, 0.0)) and (k >= 2 or _gt(p, 2.0))
    flags = _lorentz_gamma1_flags(p, a1, n, k, g1) if nec else []
    if k == 1 and _close(p, 2.0):
        flags.append("k1_p_equals_2")
    return standing, nec, suff, flags, ("conditions/hn-lp-linf-necessary", "conditions/hn-lp-linf-sufficient")


def _strict_sn_flag(p, a2, lhs, rhs):
    # under the standing hypotheses p = 1 + alpha2 only happens at alpha2 = 0, p = 1
    if _close(p, 1.0 + a2) and _close(lhs, rhs):
        return ["strict_inequality_required_at_p_equals_1_plus_alpha2"]
    return []


def _check_sn_lp_lr(q):
    n, k = q.dims()
    p, r = q.get("p"), q.get("r")
    a1, a2, b1, b2 = q.get("alpha1"), q.get("alpha2"), q.get("beta1"), q.get("beta2")
    standing = _existence_sn(p, a2) and _ge(r, p)
    growth_l, growth_r = (b2 + k + 1) / r, (a2 + 1) / p
    nec = (standing and _gt(b1, k - n) and _le((a1 + n) / p - (b1 + n - k) / r, k)
           and _ge(growth_l, growth_r))
    suff = nec and _k1_lr_proviso(k, p, r)
    flags = _strict_sn_flag(p, a2, growth_l, growth_r) if nec else []
    flags += _k1_flags(k, p, r, nec, suff)
    return standing, nec, suff, flags, ("conditions/sn-lp-lr-necessary", "conditions/sn-lp-lr-sufficient")


def _check_sn_lp_linf(q):
    n, k = q.dims()
    p, a1, a2 = q.get("p"), q.get("alpha1"), q.get("alpha2")
    g1, g2 = q.get("gamma1"), q.get("gamma2")
    standing = _existence_sn(p, a2)
    nec = standing and _ge(g1, max(0.0, (a1 + n) / p - k)) and _ge(g2, (1.0 + a2) / p)
    at_endpoint = _close(p, (a1 + n) / k)
    suff = nec and (not at_endpoint or _gt(g1, 0.0)) and (k >= 2 or _gt(p, 2.0))
    flags = _lorentz_gamma1_flags(p, a1, n, k, g1) if nec else []
    if k == 1 and _close(p, 2.0):
        flags.append("k1_p_equals_2")
    return standing, nec, suff, flags, ("conditions/sn-lp-linf-necessary", "conditions/sn-lp-linf-sufficient")


def _check_hn_lp_lp(q):
    n, k = q.dims()
    p, a1, a2, b1, b2 = q.get("p"), q.get("alpha1"), q.get("alpha2"), q.get("beta1"), q.get("beta2")
    s = a1 + a2
    standing = _gt(s, k - n) and _ge(p, 1.0) and _lt(p, _hn_bound(n, k, s))
    nec = standing and _gt(b1, k - n) and _le(b2 - a2, a1 - b1) and _le(a1 - b1, k * (p - 1.0))
    general_bound = (s + n + 1) / (k + 1)
    suff = nec and _le(p, general_bound) and _lt(b1 + b2, p * (k + 1) - (n + 1))
    flags = []
    if nec and _gt(p, general_bound):
        flags.append("open_question_region")
    if nec and _close(p, general_bound):
        flags.append("p_at_general_function_bound")
    return standing, nec, suff, flags, ("conditions/hn-lp-lp-necessary", "conditions/hn-lp-lp-sufficient")


def _check_sn_lp_lp(q):
    n, k = q.dims()
    p, a1, a2, b1, b2 = q.get("p"), q.get("alpha1"), q.get("alpha2"), q.get("beta1"), q.get("beta2")
    standing = _existence_sn(p, a2)
    nec = standing and _gt(b1, k - n) and _ge(b1, a1 - k * (p - 1.0)) and _ge(b2, a2 - k)
    flags = _strict_sn_flag(p, a2, b2, a2 - k) if nec else []
    return standing, nec, nec, flags, ("conditions/sn-lp-lp",)


def _check_rn_lp_lp(q):
    n, k = q.dims()
    p, a, b = q.get("p"), q.get("alpha1"), q.get("beta1")
    standing = _gt(a, k - n) and _ge(p, 1.0) and _lt(p, (a + n) / k) and _gt(b, k - n)
    ok = standing and _close(b, a - k * (p - 1.0))
    return standing, ok, ok, [], ("conditions/rn-lp-lp",)


def _endpoint_p(q, expected, flags):
    """The endpoint exponent; a supplied p must sit on it."""
    if q.has("p") and not _close(q.get("p"), expected):
        flags.append("p_not_at_endpoint")
        return None
    return expected


def _check_endpoint_hn_gamma(q):
    n, k = q.dims()
    a1, a2, g = q.get("alpha1"), q.get("alpha2"), q.get("gamma")
    flags = []
    p = _endpoint_p(q, (a1 + n) / k, flags)
    s = a1 + a2
    standing = p is not None and (
        (_gt(s, k - n) and _ge(p, 1.0) and _lt(p, _hn_bound(n, k, s)))
        or (_close(s, k - n) and _close(p, 1.0)))
    ok = standing and _le(g, (s + n - 1) / p) and (k >= 2 or _ge(p, 2.0))
    if ok and _close(g, (s + n - 1) / p):
        flags.append("gamma_at_threshold")
    return standing, ok, ok, flags, ("conditions/endpoint-hn-gamma",)


def _check_endpoint_hn_mixed(q):
    n, k = q.dims()
    a1, a2, g1, g2 = q.get("alpha1"), q.get("alpha2"), q.get("gamma1"), q.get("gamma2")
    flags = []
    s = a1 + a2
    p = _endpoint_p(q, (s + n - 1) / (k - 1), flags) if k >= 2 else None
    standing = p is not None and _gt(s, k - n) and _gt(p, 1.0)
    ok = standing and _ge(g1, max(0.0, (a1 + n) / p - k)) and _le(g1 + g2, k - 1)
    return standing, ok, ok, flags, ("conditions/endpoint-hn-mixed",)


def _check_endpoint_sn_gamma(q):
    n, k = q.dims()
    a1, a2, g = q.get("alpha1"), q.get("alpha2"), q.get("gamma")
    flags = []
    p = _endpoint_p(q, (a1 + n) / k, flags)
    standing = (p is not None and _ge(a1, k - n) and _ge(p, 1.0 + a2)
                and (not _gt(a2, 0.0) or _gt(p, 1.0 + a2)))
    ok = standing and _ge(g, (1.0 + a2) / p) and (k >= 2 or _ge(p, 2.0))
    if ok and _close(g, (1.0 + a2) / p):
        flags.append("gamma_at_threshold")
    return standing, ok, ok, flags, ("conditions/endpoint-sn-gamma",)


def _check_endpoint_sn_mixed(q):
    n, k = q.dims()
    a1, a2, g1, g2 = q.get("alpha1"), q.get("alpha2"), q.get("gamma1"), q.get("gamma2")
    flags = []
    p = _endpoint_p(q, 1.0 + a2, flags)
    standing = p is not None and _gt(a2, 0.0)
    ok = (standing and _ge(g1, max(0.0, (a1 + n) / p - k)) and _ge(g2, 1.0)
          and (k >= 2 or _ge(p, 2.0)))
    return standing, ok, ok, flags, ("conditions/endpoint-sn-mixed",)


_CHECKS = {
    "ExistenceHn": _check_existence_hn,
    "ExistenceSn": _check_existence_sn,
    "RnLpLinf": _check_rn_lp_linf,
    "HnLpLr": _check_hn_lp_lr,
    "HnLpLinf": _check_hn_lp_linf,
    "SnLpLr": _check_sn_lp_lr,
    "SnLpLinf": _check_sn_lp_linf,
    "HnLpLp": _check_hn_lp_lp,
    "SnLpLp": _check_sn_lp_lp,
    "RnLpLp": _check_rn_lp_lp,
    "EndpointHnGamma": _check_endpoint_hn_gamma,
    "EndpointHnMixed": _check_endpoint_hn_mixed,
    "EndpointSnGamma": _check_endpoint_sn_gamma,
    "EndpointSnMixed": _check_endpoint_sn_mixed,
}


def condition_check(inequality_id, inputs):
    """Evaluate the parameter conditions of one estimate.

    ``inputs`` maps parameter names (n, k, p, r, alpha1, alpha2, beta1,
    beta2, gamma, gamma1, gamma2; ``alpha``/``beta`` alias the first
    exponent) to numbers.  Missing parameters raise ``DomainError``.

    >>> condition_check("ExistenceHn", dict(n=4, k=2, p=2, alpha1=0, alpha2=0)).necessary_ok
    True
    """
    ineq = canonical_id(inequality_id)
    q = _Inputs(inputs)
    standing, nec, suff, flags, cites = _CHECKS[ineq](q)
    if not standing:
        flags = list(flags) + ["outside_standing_hypotheses"]
        nec = suff = False
    if suff and not nec:
        raise AssertionError(f"{ineq}: sufficient condition holds without the necessary one")
    return ConditionReport(ineq, dict(q.raw), bool(nec), bool(suff), bool(standing),
                           tuple(flags), tuple(cites))


# ------------------------------------------------------------ ratio probes

SMALL_WINDOW = (2.0 ** -6, 2.0 ** -2)
LARGE_WINDOW = (4.0, 64.0)
# distance pi/2 - lambda from the equator
EQUATOR_WINDOW = (2.0 ** -8, 2.0 ** -3)
SLOPE_TOL = 0.02
FALLBACK_POINTS = 3


def _acosh_twice(lam):
    return math.acosh(2.0 * math.cosh(lam))


def _sn_double_inner(lam):
    c = 2.0 * math.cos(lam)
    if not c < 1.0:
        raise DomainError("the sphere double annulus needs cos(lambda) < 1/2")
    return math.acos(c)


def _small_annulus_check(space, lam):
    if space.spherical and not 2.0 * lam < math.pi / 2:
        raise DomainError("the near-zero annulus needs 2 lambda < pi/2")


@dataclass(frozen=True)
class ProbeFamily:
    """A one-parameter family of radial test functions f_lambda.

    ``witness(space, lam)`` is the plane distance where the L^inf targets
    are read off; ``regimes`` lists the asymptotic regimes the family is
    built for (``small``, ``large`` or ``equator``).
    """

    name: str
    space_tag: str
    regimes: tuple
    make: object = field(repr=False, compare=False)
    witness_fn: object = field(repr=False, compare=False)

    def profile(self, space, lam, alpha1=0.0, alpha2=0.0, p=1.0):
        if not lam > 0:
            raise DomainError("lambda must be positive")
        return self.make(space, float(lam), alpha1, alpha2, p)

    def witness(self, space, lam):
        return self.witness_fn(space, float(lam))

    def covers_regimes(self):
        return self.regimes

    def default_grid(self):
        grid = []
        if "small" in self.regimes:
            grid += [2.0 ** j for j in range(-6, -1)]
        if "large" in self.regimes:
            grid += [2.0 ** j for j in range(2, 7)]
        if "equator" in self.regimes:
            grid += [math.pi / 2 - 2.0 ** -j for j in range(3, 9)]
        return sorted(grid)


def _fam(name, tag, regimes, make, witness):
    return ProbeFamily(name, tag, regimes, make, witness)


def _ball_witness(space, lam):
    if space.flat:
        return lam / math.sqrt(2.0)
    if space.hyperbolic:
        return math.asinh(math.sinh(lam) / math.sqrt(2.0))
    return math.asin(math.sin(lam) / math.sqrt(2.0))


PROBE_FAMILIES = {f.name: f for f in (
    _fam("RnBall", "rn", ("small", "large"),
         lambda s, lam, a1, a2, p: ball_profile(s, lam), _ball_witness),
    _fam("RnAnnulus", "rn", ("small", "large"),
         lambda s, lam, a1, a2, p: annulus_profile(s, lam, 2 * lam), lambda s, lam: lam),
    _fam("HnBallCosh", "hn", ("small", "large"),
         lambda s, lam, a1, a2, p: ball_profile(s, lam, "cosh"), _ball_witness),
    _fam("HnBallSinhCosh", "hn", ("small", "large"),
         lambda s, lam, a1, a2, p: ball_profile(s, lam, f"sinhpow:{-a1 / p}*cosh"), _ball_witness),
    _fam("HnDoubleAnnulus", "hn", ("large",),
         lambda s, lam, a1, a2, p: annulus_profile(s, lam, _acosh_twice(lam)), lambda s, lam: lam),
    _fam("HnAnnulusNearZero", "hn", ("small",),
         lambda s, lam, a1, a2, p: annulus_profile(s, lam, 2 * lam), lambda s, lam: lam),
    _fam("SnBallCos", "sn", ("small", "equator"),
         lambda s, lam, a1, a2, p: ball_profile(s, lam, "cos"), _ball_witness),
    _fam("SnBallCosSinPow", "sn", ("small", "equator"),
         lambda s, lam, a1, a2, p: ball_profile(s, lam, f"sinpow:{-a1 / p}*cos"), _ball_witness),
    _fam("SnEquatorCos", "sn", ("equator",),
         lambda s, lam, a1, a2, p: equator_profile(s, lam, "cos"), lambda s, lam: lam),
    _fam("SnEquatorCosPow", "sn", ("equator",),
         lambda s, lam, a1, a2, p: equator_profile(s, lam, f"cospow:{1 - a2 / p}"), lambda s, lam: lam),
    _fam("SnDoubleAnnulus", "sn", ("equator",),
         lambda s, lam, a1, a2, p: annulus_profile(s, _sn_double_inner(lam), lam),
         lambda s, lam: _sn_double_inner(lam)),
    _fam("SnAnnulusNearZero", "sn", ("small",),
         lambda s, lam, a1, a2, p: (_small_annulus_check(s, lam), annulus_profile(s, lam, 2 * lam))[1],
         lambda s, lam: lam),
)}


def probe_family(name):
    if isinstance(name, ProbeFamily):
        return name
    if name not in PROBE_FAMILIES:
        raise DomainError(f"unknown probe family {name!r}")
    return PROBE_FAMILIES[name]


def _plane_weight(space, h, g1, g2):
    """s_c(h)^g1 s_c'(h)^g2, the weight of the L^inf targets."""
    if space.flat:
        return h ** g1 if g1 else 1.0
    if space.hyperbolic:
        return math.sinh(h) ** g1 * math.cosh(h) ** g2
    return math.sin(h) ** g1 * math.cos(h) ** g2


@dataclass(frozen=True)
class _ProbeSetup:
    space: Space
    k: int
    source: WeightConfig
    target: WeightConfig = None
    gammas: tuple = None


def _probe_setup(ineq, inputs):
    q = _Inputs(inputs)
    n, k = q.dims()
    space = Space(ID_SPACE[ineq], n)
    if ineq.startswith("Existence"):
        raise DomainError("existence conditions have no norm ratio to probe")
    if ineq in ("RnLpLinf", "RnLpLp"):
        src = WeightConfig(q.get("alpha1"), 0.0, q.get("p"))
        if ineq == "RnLpLp":
            return _ProbeSetup(space, k, src, WeightConfig(q.get("beta1"), 0.0, src.p))
        return _ProbeSetup(space, k, src, gammas=(q.get("beta1"), 0.0))
    a1, a2 = q.get("alpha1"), q.get("alpha2")
    if ineq in ("HnLpLr", "SnLpLr", "HnLpLp", "SnLpLp"):
        p = q.get("p")
        r = p if ineq.endswith("LpLp") else q.get("r")
        return _ProbeSetup(space, k, WeightConfig(a1, a2, p), WeightConfig(q.get("beta1"), q.get("beta2"), r))
    if ineq in ("HnLpLinf", "SnLpLinf"):
        return _ProbeSetup(space, k, WeightConfig(a1, a2, q.get("p")),
                           gammas=(q.get("gamma1"), q.get("gamma2")))
    p = _endpoint_exponent(ineq, n, k, a1, a2)
    if ineq.endswith("Gamma"):
        g = q.get("gamma")
        gammas = (0.0, g)
    else:
        gammas = (q.get("gamma1"), q.get("gamma2"))
    return _ProbeSetup(space, k, WeightConfig(a1, a2, p), gammas=gammas)


def _endpoint_exponent(ineq, n, k, a1, a2):
    if ineq in ("EndpointHnGamma", "EndpointSnGamma"):
        return (a1 + n) / k
    if ineq == "EndpointSnMixed":
        return 1.0 + a2
    if k < 2:
        raise DomainError("the mixed hyperbolic endpoint needs k >= 2")
    return (a1 + a2 + n - 1) / (k - 1)


def _ratio(setup, fam, lam, quad_spec):
    space, k = setup.space, setup.k
    src = setup.source
    f = fam.profile(space, lam, src.alpha1, src.alpha2, src.p)
    try:
        norm = lp_norm_radial(space, f, src, quad_spec)
        if setup.target is not None:
            top = lr_norm_transform(space, k, f, setup.target, quad_spec)
        else:
            h = fam.witness(space, lam)
            top = _plane_weight(space, h, *setup.gammas) * kplane_radial(space, k, f, h, quad_spec)
    except (DivergentNorm, OverflowError):
        return math.inf
    if norm == 0.0 or not math.isfinite(top):
        return math.inf
    return top / norm


def _fit(xs, ys):
    if len(xs) < 2:
        return math.nan
    return float(np.polyfit(np.asarray(xs), np.asarray(ys), 1)[0])


@dataclass(frozen=True)
class RatioProbeResult:
    """Norm ratios ||target|| / ||f_lambda|| on a lambda grid.

    Slopes are of log(ratio) against log(lambda) near zero, against lambda
    for large lambda and against log(pi/2 - lambda) near the equator.
    ``last_step_growth`` is the ratio between the two outermost grid points
    of the large (or equator) regime; a plateau keeps it below the shared
    5% growth threshold.  ``fallback`` lists regimes where
    fewer than two grid points fell in the window and the extreme grid
    points were used instead.  Regimes the family does not cover get NaN.
    """

    inequality_id: str
    family: str
    grid: tuple
    ratios: tuple
    log_ratio_slope_small: float
    log_ratio_slope_large: float
    sup_ratio: float
    stable: bool
    log_ratio_slope_equator: float = math.nan
    last_step_growth: float = math.nan
    fallback: tuple = ()

    def to_dict(self):
        out = asdict(self)
        out["grid"], out["ratios"], out["fallback"] = list(self.grid), list(self.ratios), list(self.fallback)
        return out


def _regime_points(grid, logs, regime):
    """(x, y) pairs for one regime, with the fallback rule."""
    order = sorted(range(len(grid)), key=lambda i: grid[i])
    if regime == "small":
        lo, hi = SMALL_WINDOW
        key, coord = (lambda lam: lam), math.log
        fallback = order[:FALLBACK_POINTS]
    elif regime == "large":
        lo, hi = LARGE_WINDOW
        key = coord = (lambda lam: lam)
        fallback = order[-FALLBACK_POINTS:]
    else:
        lo, hi = EQUATOR_WINDOW
        key = lambda lam: math.pi / 2 - lam  # noqa: E731
        coord = lambda lam: math.log(math.pi / 2 - lam)  # noqa: E731
        fallback = order[-FALLBACK_POINTS:]
    pick = [i for i, lam in enumerate(grid) if lo * (1 - 1e-9) <= key(lam) <= hi * (1 + 1e-9)]
    used_fallback = len(pick) < 2
    if used_fallback:
        pick = fallback
    pick = [i for i in pick if math.isfinite(logs[i])]
    return [coord(grid[i]) for i in pick], [logs[i] for i in pick], used_fallback


def ratio_probe(inequality_id, inputs, family, lambda_grid=None, quad_spec=DEFAULT_QUAD):
    """Norm ratios of one estimate along a probe family.

    LpLr and LpLp estimates use full norms of R_k f_lambda.  LpLinf and
    endpoint estimates read the weighted transform at the family's witness
    plane, a lower bound for the weighted sup norm.  Divergent or
    overflowing norms give an infinite ratio.
    """
    ineq = canonical_id(inequality_id)
    fam = probe_family(family)
    setup = _probe_setup(ineq, inputs)
    if fam.space_tag != setup.space.tag:
        raise DomainError(f"family {fam.name} lives on {fam.space_tag}, not {setup.space.tag}")
    grid = sorted(float(x) for x in (lambda_grid if lambda_grid is not None else fam.default_grid()))
    if not grid:
        raise DomainError("empty lambda grid")
    if setup.space.spherical and any(not 0 < x < math.pi / 2 for x in grid):
        raise DomainError("sphere families need 0 < lambda < pi/2")
    ratios = [_ratio(setup, fam, lam, quad_spec) for lam in grid]
    logs = [math.log(r) if 0 < r < math.inf else (math.inf if r == math.inf else -math.inf) for r in ratios]
    slopes, fallback = {}, []
    for regime in ("small", "large", "equator"):
        if regime not in fam.regimes:
            slopes[regime] = math.nan
            continue
        xs, ys, fb = _regime_points(grid, logs, regime)
        slopes[regime] = _fit(xs, ys)
        if fb:
            fallback.append(regime)
    finite = all(math.isfinite(r) for r in ratios)
    stable = finite
    if not math.isnan(slopes["small"]):
        stable = stable and slopes["small"] >= -SLOPE_TOL
    if not math.isnan(slopes["large"]):
        stable = stable and slopes["large"] <= SLOPE_TOL
    if not math.isnan(slopes["equator"]):
        stable = stable and slopes["equator"] >= -SLOPE_TOL
    step = math.nan
    if ("large" in fam.regimes or "equator" in fam.regimes) and len(grid) >= 2 and finite:
        step = ratios[-1] / ratios[-2] if ratios[-2] > 0 else math.inf
        stable = stable and step < 1.0 + GROWTH_THRESHOLD
    return RatioProbeResult(ineq, fam.name, tuple(grid), tuple(ratios), slopes["small"], slopes["large"],
                            max(ratios), bool(stable), slopes["equator"], step, tuple(fallback))


# ----------------------------------------------------------- blow-up probes

BLOWUP_IDS = ("Hn1", "Hn2", "Sn", "Sn2", "RnAnnulusK1", "HnAnnulusK1", "SnAnnulusK1")
LN2 = math.log(2.0)


def _log_sinh(t):
    if t < 1.0:
        return math.log(math.sinh(t))
    return t + math.log1p(-math.exp(-2.0 * t)) - LN2


def _log_cosh(t):
    return abs(t) + math.log1p(math.exp(-2.0 * abs(t))) - LN2


def _acosh_of_log(log_x):
    """acosh(x) given log(x), without forming x when it is huge."""
    if log_x < 20.0:
        return math.acosh(math.exp(log_x))
    return log_x + math.log1p(math.sqrt(-math.expm1(-2.0 * log_x)))


@dataclass(frozen=True)
class BlowupResult:
    """Truncated target values of a counterexample and the growth verdict.

    ``values`` are the truncated transform values (or, for the annulus
    examples, the ratio H on a shrinking annulus); ``source_norm`` is the
    full source norm and ``source_change`` its relative change when the
    quadrature tolerances are tightened a hundredfold.
    """

    example_id: str
    grid: tuple
    values: tuple
    verdict: str
    source_norm: float
    source_change: float
    growth_factor: float

    def to_dict(self):
        out = asdict(self)
        out["grid"], out["values"] = list(self.grid), list(self.values)
        return out


@dataclass(frozen=True)
class _Counterexample:
    """A radial counterexample written through log f.

    Hyperbolic: ``log_f(t)`` in the geodesic distance.  Spherical:
    ``log_f(log_cos, log_sin)``, so that distances within e^-256 of the
    equator stay representable.  ``start`` is where the support begins
    (a distance on Hn, a value of -log cos on Sn).
    """

    space: Space
    k: int
    p: float
    alpha1: float
    alpha2: float
    log_f: object
    start: float = 0.0


def _hyperbolic_source_power(ce, spec):
    n, p = ce.space.dim, ce.p

    def fn(t):
        if t <= 0.0:
            return 0.0
        ls = _log_sinh(t)
        return math.exp(p * ce.log_f(t) + (ce.alpha1 + n - 1) * ls + ce.alpha2 * _log_cosh(t))

    lo = ce.start
    mid = max(lo, 1.0)
    near = quad(fn, lo, mid, spec)[0] if mid > lo else 0.0
    far = quad(fn, mid, math.inf, spec)[0]
    return sphere_area(n - 1) * (near + far)


def _sphere_source_power(ce, spec):
    """Source integral in u = -log cos t, where dt = du cos t / sin t."""
    n, p = ce.space.dim, ce.p

    def fn(u):
        if u <= 0.0:
            return 0.0
        lc = -u
        lsn = 0.5 * math.log(-math.expm1(-2.0 * u))
        return math.exp(p * ce.log_f(lc, lsn) + (ce.alpha1 + n - 2) * lsn + (ce.alpha2 + 1) * lc)

    lo = ce.start
    mid = max(lo, 1.0)
    near = quad(fn, lo, mid, spec)[0] if mid > lo else 0.0
    far = quad(fn, mid, math.inf, spec)[0]
    return 2.0 * sphere_area(n - 1) * (near + far)


def _source_norm(ce, spec):
    power = _sphere_source_power if ce.space.spherical else _hyperbolic_source_power
    coarse = power(ce, spec) ** (1.0 / ce.p)
    fine = power(ce, spec.tightened(100.0)) ** (1.0 / ce.p)
    if not math.isfinite(fine) or fine <= 0.0:
        raise DivergentNorm("source norm of the counterexample is not finite")
    return fine, abs(fine - coarse) / fine


def _hyperbolic_truncated(ce, h, grid, spec):
    """R_k f(h) with f cut off at distances above each T in the grid."""
    k = ce.k
    lch = _log_cosh(h)

    def fn(v):
        t = _acosh_of_log(lch + _log_cosh(v))
        val = ce.log_f(t)
        if k > 1:
            val += (k - 1) * _log_sinh(v) if v > 0 else -math.inf
        return math.exp(val)

    out, total, left = [], 0.0, 0.0
    for big_t in grid:
        if big_t <= h:
            raise DomainError("truncation radii must exceed the witness distance")
        right = _acosh_of_log(_log_cosh(big_t) - lch)
        total += quad(fn, left, right, spec)[0]
        out.append(sphere_area(k - 1) * total)
        left = right
    return out


def _sphere_truncated(ce, h, grid, spec):
    """R_k f(h) with f cut off where -log cos t exceeds each U in the grid.

    cos t = cos h sin phi and phi = e^-s, so phi near 0 (t near pi/2) is
    resolved on a logarithmic scale.
    """
    k = ce.k
    lch = math.log(math.cos(h))

    def fn(s):
        phi = math.exp(-s)
        lc = lch + math.log(math.sin(phi))
        lsn = 0.5 * math.log(-math.expm1(2.0 * lc))
        return math.exp(ce.log_f(lc, lsn)) * phi * math.cos(phi) ** (k - 1)

    def s_of(u):
        return -math.log(math.asin(min(math.exp(-u - lch), 1.0)))

    breaks = [s_of(ce.start)] if ce.start > -lch else []
    out, total, left = [], 0.0, -math.log(math.pi / 2)
    for big_u in grid:
        if big_u <= -lch:
            raise DomainError("truncation levels must exceed -log cos of the witness")
        right = s_of(big_u)
        pts = [left] + [b for b in breaks if left < b < right] + [right]
        total += quad_pieces(fn, pts, spec)[0]
        out.append(2.0 * sphere_area(k - 1) * total)
        left = right
    return out


def _need(cond, message):
    if not cond:
        raise DomainError(message)


def _counterexample(example_id, q):
    n, k = q.dims()
    p, a1, a2 = q.get("p"), q.get("alpha1", 0.0), q.get("alpha2", 0.0)
    _need(p >= 1.0, "p must be >= 1")
    s = a1 + a2
    if example_id == "Hn1":
        _need(k >= 2 and _ge(p, (s + n - 1) / (k - 1)) and _gt((s + n - 1) / (k - 1), 1.0),
              "needs k >= 2 and p >= (alpha1+alpha2+n-1)/(k-1) > 1")

        def log_f(t):
            l1 = math.log1p(math.exp(-t)) + _log_cosh(t) if t > 30 else math.log1p(math.cosh(t))
            return ((2 - n - a1) / p * _log_sinh(t) - a2 / p * _log_cosh(t) - l1 / p - math.log(l1))

        return _counterexample_h(n, k, p, a1, a2, log_f)
    if example_id == "Hn2":
        _need(_lt(s, k - n) or (_close(s, k - n) and _gt(p, 1.0)),
              "needs alpha1+alpha2 < k-n, or alpha1+alpha2 = k-n with p > 1")
        # with k = 1 on the boundary the exponential rate vanishes and the
        # log power must drop below 1 for R_1 f to diverge
        log_power = 0.5 * (1 + 1 / p) if k == 1 and _close(s, k - n) else 1 + 1 / p

        def log_f(t):
            ls = _log_sinh(t)
            l2 = float(np.logaddexp(LN2, ls))
            return (-a1 / p * ls + (1 - a2) / p * _log_cosh(t) - n / p * l2
                    - log_power * math.log(l2))

        return _counterexample_h(n, k, p, a1, a2, log_f)
    space = Space("sn", n)
    if example_id == "Sn":
        _need(a2 > 0 and p < 1 + a2, "needs alpha2 > 0 and 1 <= p < 1 + alpha2")
        return _Counterexample(space, k, p, a1, a2, lambda lc, lsn: -a1 / p * lsn - lc)
    if example_id == "Sn2":
        _need(a2 > 0 and _close(p, 1 + a2), "needs alpha2 > 0 and p = 1 + alpha2")
        g = q.get("gamma", 0.5 * (1.0 / p + 1.0))
        _need(1.0 / p < g <= 1.0, "needs 1/p < gamma <= 1")
        return _Counterexample(space, k, p, a1, a2,
                               lambda lc, lsn: -a1 / p * lsn - lc - g * math.log(-lc), start=0.5 * LN2)
    raise DomainError(f"unknown counterexample {example_id!r}")


def _counterexample_h(n, k, p, a1, a2, log_f):
    return _Counterexample(Space("hn", n), k, p, a1, a2, log_f)


def _annulus_ratio(example_id, q, grid, spec):
    """H on a shrinking annulus: (R_1 chi at the inner plane)^p / ||chi||^p."""
    n = int(q.get("n"))
    p = q.get("p")
    _need(p >= 1.0, "p must be >= 1")
    if example_id == "RnAnnulusK1":
        space, a = Space("rn", n), q.get("a", 1.0)
        w = WeightConfig(q.get("alpha1", 0.0), 0.0, p)
        edges = [(a, b) for b in grid]
        lift = q.get("beta1", 0.0)
        scale = a ** (p * lift)
    elif example_id == "HnAnnulusK1":
        space, a = Space("hn", n), q.get("a", 2.0)
        _need(a > 1.0, "the cosh level a must exceed 1")
        w = WeightConfig(q.get("alpha1", 0.0), q.get("alpha2", 0.0), p)
        edges = [(math.acosh(a), math.acosh(b)) for b in grid]
        scale = 1.0
    else:
        space, b = Space("sn", n), q.get("b", 0.5)
        _need(0.0 < b < 1.0, "the cos level b must lie in (0, 1)")
        w = WeightConfig(q.get("alpha1", 0.0), q.get("alpha2", 0.0), p)
        edges = [(math.acos(b), math.acos(a)) for a in grid]
        scale = 1.0
    values = []
    for lo, hi in edges:
        _need(hi > lo, "the annulus grid must give nonempty annuli")
        f = annulus_profile(space, lo, hi)
        top = kplane_radial(space, 1, f, lo, spec)
        values.append(scale * top ** p / lp_norm_radial(space, f, w, spec) ** p)
    f = annulus_profile(space, *edges[-1])
    coarse = lp_norm_radial(space, f, w, spec)
    fine = lp_norm_radial(space, f, w, spec.tightened(100.0))
    return values, fine, abs(fine - coarse) / fine


def default_blowup_grid(example_id, inputs=None):
    """Truncation grid: radii T (Hn1), T (Hn2), -log cos levels U (Sn, Sn2),
    or the moving annulus edge (annulus examples)."""
    q = _Inputs(inputs or {})
    if example_id == "Hn1":
        return [2.0 ** (j + 1) for j in range(8)]
    if example_id == "Hn2":
        return [8.0 * (j + 1) for j in range(8)]
    if example_id in ("Sn", "Sn2"):
        return [2.0 ** (j + 1) for j in range(8)]
    if example_id == "RnAnnulusK1":
        a = q.get("a", 1.0)
        return [a * (1 + 2.0 ** -j) for j in range(1, 11)]
    if example_id == "HnAnnulusK1":
        a = q.get("a", 2.0)
        return [a * (1 + 2.0 ** -j) for j in range(1, 11)]
    if example_id == "SnAnnulusK1":
        b = q.get("b", 0.5)
        return [b * (1 - 2.0 ** -j) for j in range(1, 11)]
    raise DomainError(f"unknown counterexample {example_id!r}")


def blowup_probe(example_id, inputs, truncation_grid=None, quad_spec=DEFAULT_QUAD):
    """Evaluate a counterexample on a refining truncation grid.

    ``Hn1``, ``Hn2`` cut f off beyond radius T; ``Sn``, ``Sn2`` cut it off
    where -log cos d exceeds U; the target is R_k f at the witness plane
    ``h`` (1 on Hn, 1/2 on Sn).  The annulus examples (k = 1) evaluate the
    ratio H of the transform at the inner plane to the source norm as the
    annulus shrinks.  The verdict is the growth rule shared with fracint.
    """
    if example_id not in BLOWUP_IDS:
        raise DomainError(f"unknown counterexample {example_id!r}")
    q = _Inputs(inputs)
    grid = [float(x) for x in (truncation_grid or default_blowup_grid(example_id, inputs))]
    if len(grid) < 4:
        raise DomainError("the truncation grid needs at least 4 entries")
    if example_id.endswith("AnnulusK1"):
        values, src, change = _annulus_ratio(example_id, q, grid, quad_spec)
    else:
        ce = _counterexample(example_id, q)
        if ce.space.spherical:
            h = q.get("h", 0.5)
            _need(0.0 <= h < math.pi / 2, "witness h must lie in [0, pi/2)")
            values = _sphere_truncated(ce, h, grid, quad_spec)
        else:
            h = q.get("h", 1.0)
            _need(h >= 0.0, "witness h must be >= 0")
            values = _hyperbolic_truncated(ce, h, grid, quad_spec)
        src, change = _source_norm(ce, quad_spec)
    growth = values[-1] / values[0] if values[0] > 0 else math.inf
    return BlowupResult(example_id, tuple(grid), tuple(values), growth_verdict(values), src, change, growth)


# ------------------------------------------------------- endpoint probes

STABILITY_CHANGE = 0.10
MAX_LAYERS = 5
H_SAMPLES = 12


@dataclass(frozen=True)
class EndpointProbeResult:
    """Empirical Lorentz endpoint constant, or growth when it fails.

    When the parameter conditions hold, ``empirical_sup`` is the largest
    ratio sup_h w(h) R_k chi_E(h) / ||chi_E||_{p,1} over ``count`` random
    layered sets and ``sup_doubled`` the same over twice as many.  When
    they fail, a double-annulus (or near-zero annulus) sweep reports
    ``growth_factor`` = last ratio / first ratio and its verdict.
    """

    inequality_id: str
    conditions_ok: bool
    empirical_sup: float = math.nan
    sup_doubled: float = math.nan
    relative_change: float = math.nan
    stable: bool = False
    growth_factor: float = math.nan
    growth_verdict: str = ""
    sweep_family: str = ""
    sweep_grid: tuple = ()
    sweep_ratios: tuple = ()

    def to_dict(self):
        out = asdict(self)
        out["sweep_grid"], out["sweep_ratios"] = list(self.sweep_grid), list(self.sweep_ratios)
        return out


def random_layered_set(space, rng, max_layers=MAX_LAYERS):
    """A nonempty union of at most ``max_layers`` disjoint annuli."""
    m = int(rng.integers(1, max_layers + 1))
    if space.spherical:
        outer = float(rng.uniform(0.05, math.pi / 2 - 1e-3))
    else:
        outer = math.exp(float(rng.uniform(math.log(0.05), math.log(6.0))))
    pts = np.sort(rng.uniform(0.0, outer, 2 * m))
    if rng.random() < 0.3:
        pts[0] = 0.0
    layers = [(float(a), float(b)) for a, b in zip(pts[0::2], pts[1::2]) if b > a]
    if not layers:
        layers = [(0.0, outer)]
    return LayeredRadialSet(tuple(layers))


def _endpoint_ratio(setup, layered, quad_spec):
    space, k = setup.space, setup.k
    f_norm = lorentz_p1_norm(space, layered, setup.source, quad_spec)
    prof = layered_profile(space, layered.layers)
    outer = layered.layers[-1][1]
    edges = {t for pair in layered.layers for t in pair}
    hs = sorted({0.0, *edges, *(outer * 2.0 ** -(j / 2) for j in range(H_SAMPLES))})
    hs = [h for h in hs if h < outer and (not space.spherical or h < math.pi / 2)]
    best = 0.0
    for h in hs:
        best = max(best, _plane_weight(space, h, *setup.gammas) * kplane_radial(space, k, prof, h, quad_spec))
    return best / f_norm


def _violation_sweep(ineq, setup):
    """Family and lambda grid along which a failing endpoint estimate blows up."""
    n, k = setup.space.dim, setup.k
    a1, p = setup.source.alpha1, setup.source.p
    g1, g2 = setup.gammas
    gamma1_low = _lt(g1, max(0.0, (a1 + n) / p - k))
    if ineq in ("EndpointHnGamma", "EndpointHnMixed"):
        if ineq == "EndpointHnMixed" and gamma1_low:
            return "HnAnnulusNearZero", [2.0 ** -j for j in range(2, 15)]
        return "HnDoubleAnnulus", [math.acosh(2.0 ** j) for j in range(2, 15)]
    if ineq == "EndpointSnMixed" and not _lt(g2, 1.0):
        return "SnAnnulusNearZero", [2.0 ** -j for j in range(3, 15)]
    return "SnDoubleAnnulus", [math.acos(2.0 ** -j) for j in range(2, 15)]


def endpoint_lorentz_probe(inequality_id, inputs, count=200, rng_seed=0, quad_spec=DEFAULT_QUAD):
    """Probe a Lorentz endpoint estimate L^{p,1} -> weighted L^inf.

    The Lorentz norm of an indicator is taken in the indicator
    normalization mu(E)^(1/p).
    """
    ineq = canonical_id(inequality_id)
    if not ineq.startswith("Endpoint"):
        raise DomainError("endpoint probes apply to the Endpoint* estimates only")
    if int(count) < 1:
        raise DomainError("count must be positive")
    report = condition_check(ineq, inputs)
    setup = _probe_setup(ineq, inputs)
    if not report.standing_ok:
        raise DomainError("parameters outside the standing hypotheses of the endpoint estimate")
    if report.necessary_ok:
        rng = np.random.default_rng(rng_seed)
        ratios = [_endpoint_ratio(setup, random_layered_set(setup.space, rng), quad_spec)
                  for _ in range(2 * int(count))]
        first, both = max(ratios[:int(count)]), max(ratios)
        change = (both - first) / first if first > 0 else math.inf
        return EndpointProbeResult(ineq, True, first, both, change, bool(change < STABILITY_CHANGE))
    name, grid = _violation_sweep(ineq, setup)
    fam = PROBE_FAMILIES[name]
    ratios = [_ratio(setup, fam, lam, quad_spec) for lam in grid]
    growth = ratios[-1] / ratios[0] if ratios[0] > 0 else math.inf
    return EndpointProbeResult(ineq, False, growth_factor=growth, growth_verdict=growth_verdict(ratios),
                               sweep_family=name, sweep_grid=tuple(grid), sweep_ratios=tuple(ratios))


# ------------------------------------------------------------ lemma suites

LEMMA_IDS = ("AnnulusAlternating", "PowerWeighted", "PolynomialWeighted", "ExpWeighted",
             "HyperbolicCosh", "SphereSinCos")
VIOLATION_TOL = 1e-9


@dataclass(frozen=True)
class LemmaReport:
    """Random stress test of one integral inequality lhs <= rhs.

    ``worst_margin`` is the smallest rhs - lhs seen and
    ``worst_relative_margin`` the smallest (rhs - lhs) / lhs.
    """

    lemma_id: str
    trials: int
    violations: int
    worst_margin: float
    worst_relative_margin: float

    def to_dict(self):
        return asdict(self)


def _dual_power(p, x):
    """x^(-1/p') with 1/p' = 1 - 1/p (x^0 = 1 when p = 1)."""
    return x ** -(1.0 - 1.0 / p)


def annulus_alternating_sides(x, gamma):
    """(sum (-1)^(i-1) x_i)^gamma and sum (-1)^(i-1) x_i^gamma for x sorted down."""
    xs = sorted((float(v) for v in x), reverse=True)
    if not xs or xs[-1] < 0 or gamma < 1:
        raise DomainError("needs nonnegative x and gamma >= 1")
    signs = [(-1) ** i for i in range(len(xs))]
    lhs = math.fsum(s * v for s, v in zip(signs, xs)) ** gamma
    rhs = math.fsum(s * v ** gamma for s, v in zip(signs, xs))
    return lhs, rhs


def _check_layers(layers, lower=0.0):
    out = sorted((float(a), float(b)) for a, b in layers)
    for (a, b), nxt in zip(out, out[1:] + [None]):
        if not lower <= a < b or (nxt is not None and nxt[0] < b):
            raise DomainError("layers must be disjoint intervals inside the domain")
    return out


def power_weighted_sides(layers, p):
    """int f  versus  p^(1/p) (int f t^(p-1))^(1/p), f the indicator of the layers."""
    ls = _check_layers(layers)
    lhs = math.fsum(b - a for a, b in ls)
    rhs = math.fsum(b ** p - a ** p for a, b in ls) ** (1.0 / p)
    return lhs, rhs


def polynomial_weighted_sides(layers, p, gamma):
    """int f t^(gamma-1)  versus  p^(1/p) gamma^(-1/p') (int f t^(p gamma - 1))^(1/p)."""
    ls = _check_layers(layers)
    lhs = math.fsum(b ** gamma - a ** gamma for a, b in ls) / gamma
    inner = math.fsum(b ** (p * gamma) - a ** (p * gamma) for a, b in ls) / (p * gamma)
    return lhs, p ** (1.0 / p) * _dual_power(p, gamma) * inner ** (1.0 / p)


def exp_weighted_sides(layers, p, gamma):
    """int f e^(gamma t)  versus  gamma^(-1/p') p^(1/p) (int f e^(p gamma t))^(1/p), on the line."""
    ls = _check_layers(layers, lower=-math.inf)

    def expint(rate, a, b):
        return math.exp(rate * a) * math.expm1(rate * (b - a)) / rate

    lhs = math.fsum(expint(gamma, a, b) for a, b in ls)
    inner = math.fsum(expint(p * gamma, a, b) for a, b in ls)
    return lhs, _dual_power(p, gamma) * p ** (1.0 / p) * inner ** (1.0 / p)


def hyperbolic_lemma_constant(p, gamma, alpha):
    """Explicit constant of the sinh / cosh layer inequality."""
    s1, c1 = math.sinh(1.0), math.cosh(1.0)
    near = _dual_power(p, gamma + 1.0) * min(1.0, s1 ** (gamma - alpha / p)) * max(1.0, c1 ** (-alpha / p))
    far = (_dual_power(p, gamma) / 2.0 ** gamma
           * max(2.0 ** (gamma - alpha / p), (math.e / s1) ** (alpha / p)) * max(2.0 ** (alpha / p), 1.0))
    return p ** (1.0 / p) * (near + far)


def hyperbolic_cosh_sides(layers, p, gamma, alpha, quad_spec=DEFAULT_QUAD):
    """int f sinh^gamma  versus  C (int f cosh^alpha sinh^(p gamma - alpha))^(1/p).

    Needs gamma > 0 and p >= max(1, 1 - alpha).
    """
    if not (gamma > 0 and p >= max(1.0, 1.0 - alpha)):
        raise DomainError("needs gamma > 0 and p >= max(1, 1 - alpha)")
    ls = _check_layers(layers)
    lhs = math.fsum(quad(lambda t: math.sinh(t) ** gamma, a, b, quad_spec)[0] for a, b in ls)
    e = p * gamma - alpha
    inner = math.fsum(quad(lambda t: math.cosh(t) ** alpha * math.sinh(t) ** e, a, b, quad_spec)[0]
                      for a, b in ls)
    return lhs, hyperbolic_lemma_constant(p, gamma, alpha) * inner ** (1.0 / p)


def sphere_lemma_constant(p, eta1, eta2):
    """Explicit constant of the sin / cos layer inequality."""
    def half(e1, e2):
        return (_dual_power(p, e1)
                * max(2.0 ** (1.5 * (e1 - 1)) / math.pi ** (e1 - 1), 1.0)
                * max(2.0 ** (-(e2 - 1) / 2), 1.0)
                * max(math.pi ** (p * e1 - 1) / 2.0 ** (1.5 * (p * e1 - 1)), 1.0)
                * max(2.0 ** ((p * e2 - 1) / 2), 1.0))
    return p ** (1.0 / p) * (half(eta1, eta2) + half(eta2, eta1))


def _sin_cos_integral(a, b, lo, hi):
    """int_lo^hi sin^a cos^b dt on [0, pi/2] via the regularized incomplete beta."""
    x, y = (a + 1) / 2.0, (b + 1) / 2.0
    full = 0.5 * math.exp(special.betaln(x, y))
    mid = math.pi / 4
    total = 0.0
    if lo < mid:
        top = min(hi, mid)
        total += special.betainc(x, y, math.sin(top) ** 2) - special.betainc(x, y, math.sin(lo) ** 2)
    if hi > mid:
        # the complementary form avoids cancellation near pi/2
        bottom = max(lo, mid)
        total += special.betainc(y, x, math.cos(bottom) ** 2) - special.betainc(y, x, math.cos(hi) ** 2)
    return full * total


def sphere_sin_cos_sides(layers, p, eta1, eta2):
    """int f sin^(eta1-1) cos^(eta2-1)  versus  C (int f sin^(p eta1-1) cos^(p eta2-1))^(1/p)."""
    if not (eta1 > 0 and eta2 > 0 and p >= 1):
        raise DomainError("needs eta1, eta2 > 0 and p >= 1")
    ls = _check_layers(layers)
    if ls and ls[-1][1] > math.pi / 2:
        raise DomainError("layers must lie in [0, pi/2]")
    lhs = math.fsum(_sin_cos_integral(eta1 - 1, eta2 - 1, a, b) for a, b in ls)
    inner = math.fsum(_sin_cos_integral(p * eta1 - 1, p * eta2 - 1, a, b) for a, b in ls)
    return lhs, sphere_lemma_constant(p, eta1, eta2) * inner ** (1.0 / p)


def _random_layers(rng, lo, hi, max_layers=MAX_LAYERS):
    m = int(rng.integers(1, max_layers + 1))
    pts = np.sort(rng.uniform(lo, hi, 2 * m))
    layers = [(float(a), float(b)) for a, b in zip(pts[0::2], pts[1::2]) if b > a]
    return layers or [(lo, hi)]


def _random_p(rng):
    return 1.0 if rng.random() < 0.1 else 1.0 + float(rng.exponential(1.5))


def _lemma_trial(lemma_id, rng):
    if lemma_id == "AnnulusAlternating":
        x = rng.uniform(0.0, 10.0, int(rng.integers(1, 8)))
        return annulus_alternating_sides(x, 1.0 + float(rng.exponential(1.5)))
    if lemma_id == "PowerWeighted":
        return power_weighted_sides(_random_layers(rng, 0.0, float(np.exp(rng.uniform(-3, 3)))), _random_p(rng))
    if lemma_id == "PolynomialWeighted":
        hi = float(np.exp(rng.uniform(-3, 3)))
        return polynomial_weighted_sides(_random_layers(rng, 0.0, hi), _random_p(rng),
                                         float(rng.uniform(0.05, 4.0)))
    if lemma_id == "ExpWeighted":
        lo = float(rng.uniform(-8, 4))
        return exp_weighted_sides(_random_layers(rng, lo, lo + float(rng.uniform(0.1, 8))), _random_p(rng),
                                  float(rng.uniform(0.05, 4.0)))
    if lemma_id == "HyperbolicCosh":
        alpha = float(rng.uniform(-4.0, 4.0))
        p = max(1.0, 1.0 - alpha) + (0.0 if rng.random() < 0.1 else float(rng.exponential(1.5)))
        layers = _random_layers(rng, 0.0, float(np.exp(rng.uniform(-2, 2))))
        return hyperbolic_cosh_sides(layers, p, float(rng.uniform(0.05, 4.0)), alpha)
    if lemma_id == "SphereSinCos":
        return sphere_sin_cos_sides(_random_layers(rng, 0.0, math.pi / 2), _random_p(rng),
                                    float(rng.uniform(0.05, 4.0)), float(rng.uniform(0.05, 4.0)))
    raise DomainError(f"unknown lemma {lemma_id!r}")


def lemma_suite(lemma_id, trials=1000, rng_seed=0):
    """Count violations of lhs <= rhs (relative tolerance 1e-9) on random inputs."""
    if lemma_id not in LEMMA_IDS:
        raise DomainError(f"unknown lemma {lemma_id!r}")
    if int(trials) < 1:
        raise DomainError("trials must be positive")
    rng = np.random.default_rng(rng_seed)
    violations = 0
    worst, worst_rel = math.inf, math.inf
    for _ in range(int(trials)):
        lhs, rhs = _lemma_trial(lemma_id, rng)
        if not (math.isfinite(lhs) and math.isfinite(rhs)):
            raise NumericalFailure(f"{lemma_id}: non-finite side {lhs}, {rhs}")
        margin = rhs - lhs
        if margin < -VIOLATION_TOL * max(abs(lhs), abs(rhs)):
            violations += 1
        worst = min(worst, margin)
        if lhs > 0:
            worst_rel = min(worst_rel, margin / lhs)
    return LemmaReport(lemma_id, int(trials), violations, worst, worst_rel)


def k1_l1_l2_probe(quad_spec=DEFAULT_QUAD):
    """The k = 1, p = 1, r = 2 case on Hn, settled only through the
    half-order fractional integral: returns the fracint divergence probe
    of I^(1/2)_{0+} from L^1 to L^2."""
    from .fracint import divergence_probe
    return divergence_probe("IHalfPlus_L2", quad_spec=quad_spec)
