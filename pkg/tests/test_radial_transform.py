import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from geoxform.errors import DomainError
from geoxform.geometry import Space, flat, hyperbolic, sphere_area, spherical
from geoxform.quadrature import QuadratureSpec
from geoxform.radial_transform import (
    FAMILIES,
    ClosedFormFamily,
    annulus_profile,
    ball_profile,
    calibrate_constant,
    closed_form_eval,
    constant_profile,
    dual_kplane_radial,
    equator_profile,
    exact_constant,
    family_profile,
    family_quadrature,
    kplane_radial,
    power_profile,
    table_profile,
    zero_profile,
)

TIGHT = QuadratureSpec(1e-12, 1e-14, 60)

# parameters inside each family's hypotheses, with a grid of evaluation points
CATALOG = {
    "EuclideanBall": ({"lam": 1.0}, (3, 2)),
    "HnBall": ({"lam": 1.2}, (4, 2)),
    "HnBallCosh": ({"lam": 1.0}, (3, 2)),
    "HnBallSinhCosh": ({"lam": 0.9, "alpha": 0.5, "p": 2.0}, (4, 1)),
    "SnBallPlain": ({"lam": 0.8}, (3, 1)),
    "SnBallCos": ({"lam": 0.8}, (4, 2)),
    "SnBallCosSinPow": ({"lam": 1.1, "alpha": 0.5, "p": 2.0}, (3, 2)),
    "SnEquatorPlain": ({"lam": 0.6}, (3, 1)),
    "SnEquatorCos": ({"lam": 0.6}, (4, 2)),
    "SnEquatorCosPow": ({"lam": 0.7, "alpha": 1.0, "p": 2.0}, (3, 1)),
    "DualHnMixed": ({"gamma1": 1.0, "gamma2": 0.0}, (3, 1)),
    "DualSnMixed": ({"gamma1": 0.5, "gamma2": 1.5}, (4, 2)),
}


def grid_for(fam, count=12):
    if fam.is_dual:
        hi = 1.5 if fam.space_tag == "sn" else 3.0
        return np.linspace(0.05, hi, count)
    if fam.family_id.startswith("SnEquator"):
        return np.linspace(0.02, 1.5, count)
    return np.linspace(0.01, 0.97 * fam.params["lam"], count)


def test_flat_ball_examples():
    assert kplane_radial(flat(3), 2, ball_profile(flat(3), 1.0), 0.0) == pytest.approx(math.pi, rel=1e-12)
    assert kplane_radial(flat(2), 1, ball_profile(flat(2), 1.0), 0.6) == pytest.approx(1.6, rel=1e-12)
    assert kplane_radial(flat(2), 1, ball_profile(flat(2), 1.0), 2.0) == 0.0


@pytest.mark.parametrize("tag", ["rn", "hn", "sn"])
def test_zero_profile_gives_zero(tag):
    space = Space(tag, 3)
    assert kplane_radial(space, 1, zero_profile(space), 0.4) == 0.0
    assert dual_kplane_radial(space, 1, zero_profile(space, "xi"), 0.4) == 0.0


@pytest.mark.parametrize("n, k", [(3, 1), (4, 2), (5, 3), (6, 1)])
def test_sphere_mass_invariant(n, k):
    space = spherical(n)
    one = constant_profile(space)
    for h in np.linspace(0.0, 1.5, 10):
        assert kplane_radial(space, k, one, h) == pytest.approx(sphere_area(k), rel=1e-8)


@pytest.mark.parametrize("tag, n, k", [("rn", 3, 1), ("rn", 5, 2), ("hn", 4, 1), ("sn", 3, 2)])
def test_dual_of_constant_is_one(tag, n, k):
    # the dual averages over the planes through a point, so it fixes constants
    space = Space(tag, n)
    assert dual_kplane_radial(space, k, constant_profile(space, side="xi"), 0.7) == pytest.approx(1.0, rel=1e-12)


def test_hyperbolic_dual_matches_closed_form():
    space = hyperbolic(3)
    fam = ClosedFormFamily("DualHnMixed", {"gamma1": 1.0, "gamma2": 0.0})
    numeric = dual_kplane_radial(space, 1, family_profile(space, fam), 1.0, TIGHT)
    assert numeric == pytest.approx(closed_form_eval(space, 1, fam, 1.0), rel=1e-10)


def test_closed_form_examples():
    ball = ClosedFormFamily("EuclideanBall", {"lam": 1.0})
    assert closed_form_eval(flat(3), 2, ball, 1.0) == 0.0
    cosh_ball = ClosedFormFamily("HnBallCosh", {"lam": 1.0})
    assert closed_form_eval(hyperbolic(3), 2, cosh_ball, 0.0) == pytest.approx(math.pi * math.sinh(1.0) ** 2)
    equator = ClosedFormFamily("SnEquatorPlain", {"lam": 0.6})
    const = exact_constant(spherical(3), 1, equator)
    for h in (0.6, 0.9, 1.4):
        assert closed_form_eval(spherical(3), 1, equator, h) == pytest.approx(const)


def test_calibration_matches_hand_constants():
    space = flat(3)
    fam = ClosedFormFamily("EuclideanBall", {"lam": 1.0})
    assert calibrate_constant(space, 2, fam, 0.3, TIGHT) == pytest.approx(math.pi, rel=1e-10)
    fam = ClosedFormFamily("HnBallCosh", {"lam": 1.0})
    assert calibrate_constant(hyperbolic(4), 2, fam, 0.3, TIGHT) == pytest.approx(sphere_area(1) / 2, rel=1e-10)


@pytest.mark.parametrize("family_id", sorted(FAMILIES))
def test_calibration_independent_of_reference(family_id):
    params, (n, k) = CATALOG[family_id]
    space = Space(FAMILIES[family_id], n)
    grid = grid_for(ClosedFormFamily(family_id, params))
    first = calibrate_constant(space, k, ClosedFormFamily(family_id, params), grid[2], TIGHT)
    second = calibrate_constant(space, k, ClosedFormFamily(family_id, params), grid[-3], TIGHT)
    assert first == pytest.approx(second, rel=1e-8)
    assert first == pytest.approx(exact_constant(space, k, ClosedFormFamily(family_id, params)), rel=1e-8)


@pytest.mark.parametrize("family_id", sorted(FAMILIES))
def test_catalog_matches_quadrature(family_id):
    params, (n, k) = CATALOG[family_id]
    space = Space(FAMILIES[family_id], n)
    fam = ClosedFormFamily(family_id, params)
    for x in grid_for(fam):
        closed = closed_form_eval(space, k, fam, x)
        numeric = family_quadrature(space, k, fam, x, TIGHT)
        assert closed == pytest.approx(numeric, rel=1e-8, abs=1e-12)


@pytest.mark.parametrize("family_id", ["EuclideanBall", "HnBall", "HnBallCosh", "SnBallPlain", "SnBallCos"])
def test_support_law(family_id):
    params, (n, k) = CATALOG[family_id]
    space = Space(FAMILIES[family_id], n)
    fam = ClosedFormFamily(family_id, params)
    lam = params["lam"]
    for h in (lam, lam * 1.1, lam + 0.3):
        if space.spherical and h >= math.pi / 2:
            continue
        assert closed_form_eval(space, k, fam, h) == 0.0
        assert abs(family_quadrature(space, k, fam, h)) <= 1e-12


def test_family_rejects_bad_parameters():
    with pytest.raises(DomainError):
        ClosedFormFamily("SnBallCos", {"lam": 1.6})
    with pytest.raises(DomainError):
        ClosedFormFamily("HnBallSinhCosh", {"lam": 1.0})
    with pytest.raises(DomainError):
        ClosedFormFamily("NotAFamily", {"lam": 1.0})


def test_table_profile_interpolates():
    space = flat(2)
    tab = table_profile(space, [0.0, 0.5, 1.0, 1.0000001], [1.0, 1.0, 1.0, 0.0])
    assert kplane_radial(space, 1, tab, 0.6) == pytest.approx(1.6, rel=1e-5)


def test_annulus_is_difference_of_balls():
    space = hyperbolic(4)
    ann = annulus_profile(space, 0.5, 1.3)
    for h in (0.0, 0.4, 0.9):
        big = kplane_radial(space, 2, ball_profile(space, 1.3), h)
        small = kplane_radial(space, 2, ball_profile(space, 0.5), h)
        assert kplane_radial(space, 2, ann, h) == pytest.approx(big - small, rel=1e-9, abs=1e-12)


def test_equator_band_complements_ball():
    # the region d > lam plus the ball of radius lam is the whole hemisphere
    space = spherical(3)
    lam = 0.5
    band = equator_profile(space, lam)
    ball = ball_profile(space, lam)
    for h in (0.1, 0.7, 1.2):
        total = kplane_radial(space, 1, band, h) + kplane_radial(space, 1, ball, h)
        assert total == pytest.approx(2 * math.pi, rel=1e-9)


@settings(max_examples=40, deadline=None)
@given(
    tag=st.sampled_from(["rn", "hn", "sn"]),
    n=st.integers(3, 6),
    e=st.floats(0.0, 2.0),
    r=st.floats(0.05, 1.5),
)
def test_dual_of_nonnegative_profile_is_nonnegative(tag, n, e, r):
    space = Space(tag, n)
    k = 1 + (n % 2)
    prof = power_profile(space, e, 0.0, side="xi")
    assert dual_kplane_radial(space, k, prof, r) >= 0.0


@settings(max_examples=40, deadline=None)
@given(n=st.integers(3, 6), lam=st.floats(0.2, 1.4), h=st.floats(0.0, 1.5))
def test_sphere_transform_bounded_by_mass(n, lam, h):
    space = spherical(n)
    val = kplane_radial(space, 1, ball_profile(space, lam), h)
    assert -1e-12 <= val <= sphere_area(1) * (1 + 1e-10)
