import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st
from scipy import integrate

from geoxform.errors import DomainError, UnsupportedDimension
from geoxform.general_transform import (
    AmbientFunction,
    cap_kernel,
    cap_quadrature,
    kplane_general,
    mu_bar,
    radius_from_cosine,
    zero_function,
)
from geoxform.geometry import (
    Space,
    SubmanifoldCoord,
    flat,
    hyperbolic,
    random_coord,
    random_rotation,
    spherical,
)
from geoxform.radial_transform import (
    ClosedFormFamily,
    ball_profile,
    closed_form_eval,
    constant_profile,
    kplane_radial,
)


def axis_coord(space, k, h):
    return SubmanifoldCoord(k, h, np.eye(space.dim)[: k + 1], space)


def test_mu_bar_values():
    assert mu_bar(0.5) == pytest.approx(math.log(3.0))
    assert mu_bar(math.tanh(0.7)) == pytest.approx(1.4)
    assert mu_bar(1e-12) == pytest.approx(0.0, abs=1e-11)
    with pytest.raises(DomainError):
        mu_bar(1.0)


@pytest.mark.parametrize("k, tau, want", [(1, 0.0, math.pi), (2, 0.0, 2 * math.pi), (1, 0.5, 2 * math.pi / 3)])
def test_cap_areas(k, tau, want):
    assert cap_quadrature(k, tau, lambda omega, s: np.ones(len(omega))) == pytest.approx(want, rel=1e-10)


def test_cap_rejects_large_k():
    with pytest.raises(UnsupportedDimension):
        cap_quadrature(5, 0.0, lambda omega, s: np.ones(len(omega)))


def test_general_examples():
    space = flat(3)
    f = AmbientFunction.from_profile(space, ball_profile(space, 1.0))
    assert kplane_general(space, axis_coord(space, 1, 0.6), f) == pytest.approx(1.6, rel=1e-8)
    space = spherical(3)
    one = AmbientFunction.from_profile(space, constant_profile(space))
    assert kplane_general(space, axis_coord(space, 1, 0.5), one) == pytest.approx(2 * math.pi, rel=1e-8)
    space = hyperbolic(3)
    f = AmbientFunction.from_profile(space, ball_profile(space, 1.0, "cosh"))
    fam = ClosedFormFamily("HnBallCosh", {"lam": 1.0})
    want = closed_form_eval(space, 1, fam, 0.3)
    assert kplane_general(space, axis_coord(space, 1, 0.3), f) == pytest.approx(want, rel=1e-5)


@pytest.mark.parametrize("tag", ["rn", "hn", "sn"])
def test_zero_function(tag):
    space = Space(tag, 4)
    assert kplane_general(space, axis_coord(space, 2, 0.4), zero_function()) == 0.0


def test_general_needs_positive_distance():
    space = flat(3)
    with pytest.raises(DomainError):
        kplane_general(space, axis_coord(space, 1, 0.0), zero_function())


@settings(max_examples=12, deadline=None)
@given(
    tag=st.sampled_from(["rn", "hn", "sn"]),
    n=st.integers(3, 5),
    lam=st.floats(0.4, 1.3),
    frac=st.floats(0.05, 0.9),
    seed=st.integers(0, 2 ** 32 - 1),
)
def test_general_matches_radial(tag, n, lam, frac, seed):
    space = Space(tag, n)
    rng = np.random.default_rng(seed)
    k = int(rng.integers(1, min(3, n - 1) + 1))
    h = frac * lam
    prof = ball_profile(space, lam)
    coord = random_coord(space, k, h, rng)
    got = kplane_general(space, coord, AmbientFunction.from_profile(space, prof))
    assert got == pytest.approx(kplane_radial(space, k, prof, h), rel=1e-5)


def bump(center, scale=1.0):
    """Non-radial test function exp(-|x - center|^2 / scale) in polar coordinates."""
    center = np.asarray(center, dtype=float)

    def ev(directions, t):
        pts = directions * t[:, None]
        return np.exp(-np.sum((pts - center) ** 2, axis=1) / scale)

    return ev


@pytest.mark.parametrize("tag, n, k, h", [("rn", 3, 1, 0.4), ("hn", 3, 1, 0.5), ("hn", 4, 2, 0.3), ("sn", 4, 2, 0.6)])
def test_rotation_equivariance(tag, n, k, h):
    space = Space(tag, n)
    rng = np.random.default_rng(5)
    center = rng.normal(size=n) * 0.3
    f = AmbientFunction(bump(center))
    g = random_rotation(n, rng)
    # f_g(x) = f(g^-1 x) is the bump moved to g center
    f_g = AmbientFunction(bump(g @ center))
    coord = random_coord(space, k, h, rng)
    if space.spherical:
        f = AmbientFunction(lambda d, t: bump(center)(d, t) + bump(center)(-d, math.pi - t))
        f_g = AmbientFunction(lambda d, t: bump(g @ center)(d, t) + bump(g @ center)(-d, math.pi - t))
    base = kplane_general(space, coord, f)
    moved = kplane_general(space, coord.rotated(g), f_g)
    assert moved == pytest.approx(base, rel=1e-8)


@settings(max_examples=15, deadline=None)
@given(
    cx=st.floats(-1, 1),
    cy=st.floats(-1, 1),
    angle=st.floats(0, 2 * math.pi),
    h=st.floats(0.05, 1.5),
)
def test_flat_xray_matches_line_integral(cx, cy, angle, h):
    space = flat(2)
    center = np.array([cx, cy])
    u = np.array([math.cos(angle), math.sin(angle)])
    v = np.array([-u[1], u[0]])
    coord = SubmanifoldCoord(1, h, np.vstack([v, u]), space)
    got = kplane_general(space, coord, AmbientFunction(bump(center, 0.5)))
    line, _ = integrate.quad(lambda s: math.exp(-np.sum((h * u + s * v - center) ** 2) / 0.5),
                             -np.inf, np.inf, epsabs=0, epsrel=1e-12)
    assert got == pytest.approx(line, rel=1e-6)


@pytest.mark.parametrize("k", [1, 2, 3])
def test_hyperbolic_kernel_blows_up_at_cap_edge(k):
    space = hyperbolic(5)
    h = 0.7
    eps = np.geomspace(1e-9, 1e-5, 9)
    vals = np.array([cap_kernel(space, k, h, math.tanh(h) + e) for e in eps])
    slope = np.polyfit(np.log(eps), np.log(vals), 1)[0]
    assert slope == pytest.approx(-(k + 1) / 2, rel=0.05)


def test_radius_from_cosine_inverts_kernel_geometry():
    # along the normal direction (c = 1) the hit point is the foot of the perpendicular
    for tag in ("rn", "hn", "sn"):
        assert radius_from_cosine(Space(tag, 3), 0.8, 1.0) == pytest.approx(0.8)


def test_odd_sphere_function_warns():
    space = spherical(3)
    odd = AmbientFunction(lambda d, t: d[:, 0] + 0.0 * t)
    with pytest.warns(UserWarning):
        kplane_general(space, axis_coord(space, 1, 0.3), odd)
