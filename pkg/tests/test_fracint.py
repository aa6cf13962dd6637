import math

import mpmath
import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from geoxform.errors import DomainError, WeightPole
from geoxform.fracint import (
    FracWeightSpec,
    PsiParams,
    boundedness_predicate,
    boundedness_ratio,
    counterexample_psi,
    default_truncation_grid,
    divergence_probe,
    growth_verdict,
    psi_l1_closed_form,
    psi_source_norm,
    rl_lower,
    rl_upper_inf,
    weight_eval,
    xray_via_fracint,
)
from geoxform.geometry import flat
from geoxform.quadrature import QuadratureSpec
from geoxform.radial_transform import ball_profile, kplane_radial

TIGHT = QuadratureSpec(1e-12, 1e-15, 60)


def one(y):
    return 1.0


def unit_indicator(y):
    return 1.0 if 0.0 <= y <= 1.0 else 0.0


def test_lower_examples():
    assert rl_lower(0.5, 0.0, one, 1.0) == pytest.approx(2 / math.sqrt(math.pi), rel=1e-10)
    assert rl_lower(1.0, 0.0, lambda y: y, 2.0) == pytest.approx(2.0, rel=1e-12)
    assert rl_lower(0.5, 0.0, lambda y: 0.0, 1.0) == 0.0


def test_upper_examples():
    assert rl_upper_inf(0.5, lambda y: math.exp(-y), 1.0) == pytest.approx(math.exp(-1), rel=1e-10)
    got = rl_upper_inf(0.5, unit_indicator, 0.5, breaks=(1.0,))
    assert got == pytest.approx(2 * math.sqrt(0.5) / math.sqrt(math.pi), rel=1e-10)
    assert rl_upper_inf(0.5, lambda y: 0.0, 0.3) == 0.0


def test_order_and_domain_guards():
    with pytest.raises(DomainError):
        rl_lower(0.0, 0.0, one, 1.0)
    with pytest.raises(DomainError):
        rl_lower(0.5, 1.0, one, 1.0)
    with pytest.raises(DomainError):
        rl_upper_inf(0.5, one, -0.1)


@settings(max_examples=60, deadline=None)
@given(alpha=st.floats(0.1, 2.5), beta=st.floats(0.0, 2.0), x=st.floats(0.1, 3.0))
def test_lower_power_rule(alpha, beta, x):
    # I^alpha y^beta = Gamma(beta + 1) / Gamma(beta + alpha + 1) x^(beta + alpha)
    want = float(mpmath.gamma(beta + 1) / mpmath.gamma(beta + alpha + 1)) * x ** (beta + alpha)
    assert rl_lower(alpha, 0.0, lambda y: y ** beta, x, TIGHT) == pytest.approx(want, rel=1e-9)


@settings(max_examples=40, deadline=None)
@given(alpha=st.floats(0.2, 2.0), x=st.floats(0.0, 4.0))
def test_upper_fixes_exponential(alpha, x):
    # the right-sided integral of e^(-y) is e^(-x) for every order
    assert rl_upper_inf(alpha, lambda y: math.exp(-y), x, TIGHT) == pytest.approx(math.exp(-x), rel=1e-9)


@pytest.mark.parametrize("phi, antideriv", [
    (math.cos, math.sin),
    (lambda y: math.exp(y), lambda x: math.expm1(x)),
    (lambda y: 1 + y * y, lambda x: x + x ** 3 / 3),
])
def test_semigroup_half_orders(phi, antideriv):
    def inner(y):
        return rl_lower(0.5, 0.0, phi, y) if y > 0 else 0.0

    for x in (0.25, 0.6, 1.0):
        assert rl_lower(0.5, 0.0, inner, x) == pytest.approx(antideriv(x), abs=1e-6)
        assert rl_lower(1.0, 0.0, phi, x) == pytest.approx(antideriv(x), abs=1e-12)


@pytest.mark.parametrize("profile, xray, breaks", [
    (lambda t: math.exp(-t * t), lambda h: math.sqrt(math.pi) * math.exp(-h * h), ()),
    (lambda t: 1.0 if t <= 1 else 0.0, lambda h: 2 * math.sqrt(1 - h * h), (1.0,)),
    (lambda t: max(0.0, 1 - t * t), lambda h: 4 / 3 * (1 - h * h) ** 1.5, (1.0,)),
])
def test_xray_reduction(profile, xray, breaks):
    for h in (0.0, 0.3, 0.8):
        assert xray_via_fracint(profile, h, breaks=breaks) == pytest.approx(xray(h), abs=1e-6)


def test_xray_reduction_matches_plane_transform():
    space = flat(3)
    prof = ball_profile(space, 1.0)
    for h in (0.2, 0.7):
        got = xray_via_fracint(lambda t: 1.0 if t <= 1 else 0.0, h, breaks=(1.0,))
        assert got == pytest.approx(kplane_radial(space, 1, prof, h), abs=1e-6)


def test_weight_examples():
    single = FracWeightSpec("HalfLine", (0.0,), (0.0,), alpha=0.5, p=2.0)
    for x in (0.0, 0.7, 12.0):
        assert weight_eval(single, "Rho", x) == 1.0
    spec = FracWeightSpec("HalfLine", (0.0,), (2.0,), alpha=0.5, p=2.0, gamma_inf=1.0)
    assert weight_eval(spec, "Rho", 3.0) == pytest.approx(36.0)


def test_delta_below_threshold():
    spec = FracWeightSpec("HalfLine", (0.0,), (0.0,), alpha=0.5, p=2.0, epsilons=(0.1,))
    assert spec.deltas == pytest.approx((-0.1,))
    assert spec.q == math.inf
    with pytest.raises(WeightPole):
        weight_eval(spec, "RhoMinus", 0.0)


def test_spec_rejects_bad_orders():
    with pytest.raises(DomainError):
        FracWeightSpec("HalfLine", (0.0,), (0.0,), alpha=0.8, p=2.0)
    with pytest.raises(DomainError):
        FracWeightSpec("HalfLine", (0.0,), (0.0,), alpha=0.5, p=1.0)
    with pytest.raises(DomainError):
        FracWeightSpec("HalfLine", (0.5, 1.0), (0.0, 0.0), alpha=0.5, p=2.0)


@settings(max_examples=80, deadline=None)
@given(
    gammas=st.lists(st.floats(-0.9, 2.0), min_size=1, max_size=4),
    alpha=st.floats(0.05, 0.5),
    m=st.floats(0.0, 1.0),
)
def test_deltas_follow_threshold(gammas, alpha, m):
    m = min(m, alpha)
    pts = tuple(float(i) for i in range(len(gammas)))
    spec = FracWeightSpec("HalfLine", pts, tuple(gammas), alpha=alpha, p=2.0, m=m)
    thr = alpha - 0.5
    for g, d in zip(spec.exponents, spec.deltas):
        assert d == g if g > thr else d < thr
    # the deltas and delta_inf reproduce the total exponent at infinity, less m
    assert spec.delta_inf + sum(spec.deltas) == pytest.approx(spec.gamma_inf + sum(gammas) - m)


def test_boundedness_predicate_examples():
    assert boundedness_predicate(FracWeightSpec("HalfLine", (0.0,), (0.0,), 0.5, 2.0, gamma_inf=0.5))
    assert not boundedness_predicate(FracWeightSpec("HalfLine", (0.0,), (0.0,), 0.5, 2.0))
    assert boundedness_predicate(FracWeightSpec("Interval", (0.0, 1.0), (0.0, 0.0), 0.5, 2.0))
    assert boundedness_predicate(FracWeightSpec("Interval", (0.0, 0.5, 2.0), (-0.3, 0.2, 1.0), 0.3, 3.0))


def random_bump(rng, support):
    terms = list(zip(rng.uniform(0.1, support - 0.1, 3), rng.uniform(0.05, 0.5, 3), rng.normal(size=3)))

    def phi(y):
        out = 0.0
        for center, width, height in terms:
            s = (y - center) / width
            if s * s < 1:
                out += height * (1 - s * s)
        return out

    return phi


@pytest.mark.parametrize("partition, exponents", [((0.0,), (0.5,)), ((0.0, 1.0), (0.5, 0.2))])
def test_boundedness_ratio_stable_under_refinement(partition, exponents):
    spec = FracWeightSpec("HalfLine", partition, exponents, alpha=0.5, p=2.0)
    assert boundedness_predicate(spec) and spec.q == math.inf
    rng = np.random.default_rng(3)
    support = 2.0
    phis = [random_bump(rng, support) for _ in range(50)]
    coarse = max(boundedness_ratio(spec, phi, (0.0, support), 32) for phi in phis)
    fine = max(boundedness_ratio(spec, phi, (0.0, support), 128) for phi in phis)
    assert math.isfinite(fine) and fine > 0
    assert fine == pytest.approx(coarse, rel=0.10)


def test_sup_weight_pole_below_threshold():
    # gamma_1 = alpha - 1/p puts delta_1 = -eps, so rho_- has a pole at 0 and
    # the sup over finer grids keeps growing like (spacing)^(-eps)
    spec = FracWeightSpec("HalfLine", (0.0,), (0.0,), alpha=0.5, p=2.0, gamma_inf=0.5)
    ratios = [boundedness_ratio(spec, one, (0.0, 1.0), n) for n in (8, 32, 128)]
    assert ratios[1] / ratios[0] == pytest.approx(4 ** 0.1, rel=0.02)
    assert ratios[2] / ratios[1] == pytest.approx(4 ** 0.1, rel=0.02)


def test_psi_values():
    assert counterexample_psi("HalfLinePlus", 1.0, 1.25, one, 0.4) == 0.0
    assert counterexample_psi("HalfLinePlus", 1.0, 1.25, one, 0.8) == 0.0
    want = float(10 * mpmath.log(10) ** -1.25)
    assert counterexample_psi("HalfLinePlus", 1.0, 1.25, one, 0.6) == pytest.approx(want, rel=1e-13)
    assert want == pytest.approx(3.5256, abs=1e-4)
    assert counterexample_psi("IntervalMinus", 1.0, 1.25, one, 0.4) == pytest.approx(want, rel=1e-13)


def test_psi_rejects_gamma_outside_window():
    with pytest.raises(DomainError):
        PsiParams(gamma=1.6)
    with pytest.raises(DomainError):
        counterexample_psi("HalfLinePlus", 1.0, 1.0, one, 0.6)


def test_psi_l1_norm():
    want = 4 * math.log(4) ** -0.25
    assert psi_l1_closed_form(1.0, 1.25) == pytest.approx(want, rel=1e-14)
    assert psi_source_norm(PsiParams()) == pytest.approx(want, rel=1e-6)
    # the same norm straight from psi in x, splitting the 1/s singularity geometrically
    # stop at s = 2^-22 / 4 so that x - 1/2 keeps full relative precision
    edges = [0.5 + 0.25 * 2.0 ** -j for j in range(1, 23)][::-1] + [0.75]
    direct = sum(float(mpmath.quad(lambda x: counterexample_psi("HalfLinePlus", 1.0, 1.25, one, float(x)), [lo, hi]))
                 for lo, hi in zip(edges[:-1], edges[1:]))
    # below that the log substitution gives the remainder exactly
    tail = 4 * (22 * math.log(2) + math.log(4)) ** -0.25
    assert direct + tail == pytest.approx(want, rel=1e-6)


@pytest.mark.parametrize("operator", ["IHalfPlus_L2", "IHalfMinus_L2"])
def test_psi_probe_diverges(operator):
    res = divergence_probe(operator)
    assert res.verdict == "Divergent"
    assert all(b > a for a, b in zip(res.values, res.values[1:]))
    assert res.source_norm == pytest.approx(psi_l1_closed_form(1.0, 1.25), rel=1e-6)
    assert res.source_change <= 1e-6


def test_bounded_input_probe_converges():
    res = divergence_probe("IHalfPlus_L2", phi=unit_indicator)
    assert res.verdict == "Convergent"


def test_probe_grid_guard():
    with pytest.raises(DomainError):
        divergence_probe("IHalfPlus_L2", truncation_grid=default_truncation_grid(count=5))
    with pytest.raises(DomainError):
        divergence_probe("IHalfPlus_L2", truncation_grid=[20, 10, 30, 40, 50, 60])


def test_growth_verdicts():
    assert growth_verdict([1, 1.1, 1.2, 1.3, 1.5]) == "Divergent"
    assert growth_verdict([1, 1.1, 1.2, 1.2, 1.2]) == "Convergent"
    assert growth_verdict([1, 2]) == "Inconclusive"
