import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st
from scipy import integrate

from geoxform.errors import DomainError
from geoxform.geometry import (
    Space,
    SubmanifoldCoord,
    canonical_arg,
    distance_from_canonical,
    flat,
    hyperbolic,
    polar_weight_x,
    polar_weight_xi,
    random_coord,
    random_rotation,
    s_c,
    s_c_prime,
    sphere_area,
    spherical,
)


def test_space_aliases_and_rejections():
    assert Space("rn", 3).tag == "rn"
    assert Space("hyperbolic", 3).hyperbolic
    assert Space("sn", 4).spherical
    with pytest.raises(DomainError):
        Space("torus", 3)
    with pytest.raises(DomainError):
        Space("rn", 1)


def test_volume_growth_values():
    assert s_c(flat(3), 2.5) == 2.5
    assert s_c(spherical(3), math.pi / 2) == pytest.approx(1.0)
    assert s_c_prime(spherical(3), math.pi / 2) == pytest.approx(0.0, abs=1e-15)
    assert s_c(hyperbolic(3), 0.0) == 0.0
    assert s_c_prime(hyperbolic(3), 0.0) == 1.0


def test_polar_weights():
    assert polar_weight_x(flat(3), 2.0) == 4.0
    for space in (flat(3), hyperbolic(3), spherical(3)):
        assert polar_weight_x(space, 0.0) == 0.0
    assert polar_weight_x(hyperbolic(2), 1.0) == pytest.approx(math.sinh(1.0), rel=1e-14)
    assert polar_weight_xi(hyperbolic(4), 2, 0.0) == 0.0
    assert polar_weight_xi(spherical(3), 1, math.pi / 4) == pytest.approx(0.5)
    assert polar_weight_xi(flat(3), 1, 2.0) == 2.0


def test_canonical_arguments():
    assert canonical_arg(hyperbolic(3), 0.0) == 1.0
    assert canonical_arg(spherical(3), math.pi / 3) == pytest.approx(0.5)
    assert canonical_arg(hyperbolic(3), 0.0, side="xi") == 0.0


def test_sphere_area_low_dimensions():
    assert sphere_area(1) == pytest.approx(2 * math.pi)
    assert sphere_area(2) == pytest.approx(4 * math.pi)
    assert sphere_area(3) == pytest.approx(2 * math.pi ** 2)


@settings(max_examples=100, deadline=None)
@given(
    tag=st.sampled_from(["rn", "hn", "sn"]),
    t=st.floats(0.05, 1.5),
)
def test_volume_growth_solves_ode(tag, t):
    space = Space(tag, 3)
    curv = {"rn": 0.0, "hn": -1.0, "sn": 1.0}[tag]
    step = 1e-4
    second = (s_c(space, t + step) - 2 * s_c(space, t) + s_c(space, t - step)) / step ** 2
    assert abs(second + curv * s_c(space, t)) <= 1e-6
    slope = (s_c(space, t + step) - s_c(space, t - step)) / (2 * step)
    assert slope == pytest.approx(s_c_prime(space, t), abs=1e-7)


@settings(max_examples=30, deadline=None)
@given(n=st.integers(2, 6), radius=st.floats(0.1, 3.0))
def test_flat_polar_weight_gives_ball_volume(n, radius):
    space = flat(n)
    vol, _ = integrate.quad(lambda t: polar_weight_x(space, t), 0.0, radius)
    ball = math.pi ** (n / 2) / math.gamma(n / 2 + 1) * radius ** n
    assert vol * sphere_area(n - 1) == pytest.approx(ball, rel=1e-10)


@settings(max_examples=50, deadline=None)
@given(tag=st.sampled_from(["rn", "hn", "sn"]), t=st.floats(0.0, 1.5), side=st.sampled_from(["x", "xi"]))
def test_canonical_roundtrip(tag, t, side):
    space = Space(tag, 3)
    back = distance_from_canonical(space, canonical_arg(space, t, side), side)
    assert back == pytest.approx(t, abs=1e-7)


@settings(max_examples=50, deadline=None)
@given(n=st.integers(2, 7), seed=st.integers(0, 2 ** 32 - 1), h=st.floats(0.0, 1.5))
def test_random_frames_stay_orthonormal(n, seed, h):
    rng = np.random.default_rng(seed)
    q = random_rotation(n, rng)
    assert np.allclose(q @ q.T, np.eye(n), atol=1e-12)
    assert np.linalg.det(q) == pytest.approx(1.0)
    k = int(rng.integers(1, n))
    coord = random_coord(spherical(n), k, h, rng)
    gram = coord.frame @ coord.frame.T
    assert np.max(np.abs(gram - np.eye(k + 1))) <= 1e-12
    turned = coord.rotated(random_rotation(n, rng))
    assert np.max(np.abs(turned.frame @ turned.frame.T - np.eye(k + 1))) <= 1e-12


def test_frame_validation():
    with pytest.raises(DomainError):
        SubmanifoldCoord(1, 0.5, np.array([[1.0, 0.0, 0.0], [1.0, 0.0, 0.0]]))
    with pytest.raises(DomainError):
        SubmanifoldCoord(1, -0.1, np.eye(3)[:2])
    with pytest.raises(DomainError):
        SubmanifoldCoord(1, math.pi / 2, np.eye(3)[:2], spherical(3))
