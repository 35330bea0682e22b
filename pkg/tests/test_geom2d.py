import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from santalo_lab.errors import CenterOutside, Unbounded
from santalo_lab.geom2d import (HalfSpace, Polygon, SQUARE, ball_volume, clipped_area,
                                cut_offset, directions, floating_body_body, halfplane_intersection,
                                hausdorff_distance, log_ball_volume, polar_area, polar_body,
                                product_body, random_polygon, santalo_point_body,
                                santalo_region_body, section_witness, support_function, volume)

CROSS = Polygon([[1, 0], [0, 1], [-1, 0], [0, -1]])


def square_halfspaces():
    return [HalfSpace(n, 1.0) for n in ([1, 0], [0, 1], [-1, 0], [0, -1])]


def test_halfplane_intersection_square():
    P = halfplane_intersection(square_halfspaces())
    assert sorted(map(tuple, np.round(P.vertices, 12))) == [(-1, -1), (-1, 1), (1, -1), (1, 1)]


def test_halfplane_redundant_constraint():
    P = halfplane_intersection(square_halfspaces() + [HalfSpace([1, 0], 2.0)])
    assert hausdorff_distance(P, SQUARE) < 1e-12
    assert len(P) == 4


def test_halfplane_disc_tangents():
    # circumscribed 256-gon: area 256 tan(pi/256)
    hs = [HalfSpace(u, 1.0) for u in directions(256)]
    P = halfplane_intersection(hs)
    assert P.area == pytest.approx(256 * math.tan(math.pi / 256), rel=1e-12)
    assert abs(P.area - math.pi) < 1e-3


def test_halfplane_unbounded_and_empty():
    with pytest.raises(Unbounded):
        halfplane_intersection([HalfSpace([1, 0], 1.0), HalfSpace([0, 1], 1.0)])
    assert halfplane_intersection(square_halfspaces() + [HalfSpace([-1, 0], -3.0)]) is None


def test_polar_of_square():
    P = polar_body(SQUARE)
    assert hausdorff_distance(P, CROSS) < 1e-12
    # membership oracle: <y, z> <= 1 for all z in K
    assert np.all(P.vertices @ SQUARE.vertices.T <= 1 + 1e-12)


def test_bipolar():
    assert hausdorff_distance(polar_body(polar_body(SQUARE)), SQUARE) < 1e-12


def test_polar_off_center_is_larger():
    assert polar_area(SQUARE, [0.0, 0.0]) == pytest.approx(2.0)
    assert polar_body(SQUARE, [0.5, 0.0]).area > 2.0


def test_polar_center_outside():
    with pytest.raises(CenterOutside):
        polar_body(SQUARE, [1.5, 0.0])


def test_volumes():
    assert volume(SQUARE) == 4.0
    assert volume(CROSS) == 2.0
    assert volume(Polygon.regular(256)) == pytest.approx(128 * math.sin(2 * math.pi / 256),
                                                         rel=1e-13)


def test_ball_volume():
    assert ball_volume(1) == pytest.approx(2.0)
    assert ball_volume(2) == pytest.approx(math.pi)
    assert ball_volume(3) == pytest.approx(4 * math.pi / 3)
    assert math.exp(log_ball_volume(10)) == pytest.approx(math.pi ** 5 / 120)


def test_support_function():
    s = 1 / math.sqrt(2)
    assert support_function(SQUARE, [1, 0]) == pytest.approx(1)
    assert support_function(SQUARE, [s, s]) == pytest.approx(math.sqrt(2))
    assert support_function(CROSS, [s, s]) == pytest.approx(s)


def test_hausdorff():
    assert hausdorff_distance(SQUARE, SQUARE) == 0.0
    assert hausdorff_distance(SQUARE, SQUARE.scaled(1.1)) == pytest.approx(0.1 * math.sqrt(2))
    # corner (1,1) to the edge x + y = 1
    assert hausdorff_distance(SQUARE, CROSS) == pytest.approx(1 / math.sqrt(2))


def test_santalo_point_symmetric():
    rng = np.random.default_rng(3)
    for _ in range(5):
        K = random_polygon(rng, symmetric=True)
        assert np.linalg.norm(santalo_point_body(K)) < 1e-8


def test_santalo_point_triangle_and_translation():
    T = Polygon([[0, 0], [1, 0], [0, 1]])
    x = santalo_point_body(T)
    assert abs(x[0] - x[1]) < 1e-8
    assert T.interior_margin(x) > 0
    # the minimizer for a triangle is its centroid
    assert np.allclose(x, [1 / 3, 1 / 3], atol=1e-8)
    assert np.allclose(santalo_point_body(SQUARE.translate([1, 1])), [1, 1], atol=1e-8)


def test_product_square():
    assert product_body(SQUARE, [0, 0]) == pytest.approx(8.0)


def test_santalo_region_square_empty_and_nested():
    assert santalo_region_body(SQUARE, 8 / math.pi ** 2 - 1e-3, 64).is_empty
    S1 = santalo_region_body(SQUARE, 1.0, 64)
    S2 = santalo_region_body(SQUARE, 1.2, 64)
    assert not S1.is_empty and S1.polygon.contains([0, 0])
    assert np.all(S2.polygon.contains(S1.boundary_points(), tol=1e-9))
    # symmetric about the origin
    assert hausdorff_distance(S1.polygon, S1.polygon.scaled(-1)) < 1e-7


def test_clipped_area_and_cut():
    assert clipped_area(SQUARE, [1, 0], 0.5) == pytest.approx(1.0)
    a, _ = cut_offset(SQUARE, np.array([1.0, 0.0]), 0.25)
    assert a == pytest.approx(0.5, abs=1e-10)


def test_floating_body_square():
    F = floating_body_body(SQUARE, 0.25, 64)
    assert F.polygon.contains([0, 0])
    assert np.max(F.residuals) <= 1e-10
    d = [floating_body_body(SQUARE, lam, 64).diameter() for lam in (0.3, 0.4, 0.45, 0.49)]
    assert all(b < a for a, b in zip(d, d[1:]))
    assert d[-1] < 0.1


def test_section_witness():
    w = section_witness(SQUARE, HalfSpace([1, 0], 0.0))
    assert np.allclose(w.z, [0, 0], atol=1e-6)
    assert w.product == pytest.approx(8.0, rel=1e-8)
    w = section_witness(SQUARE, HalfSpace([1, 0], 0.5))
    assert w.product <= 4 * math.pi ** 2 / 3
    assert w.holds


@settings(max_examples=25, deadline=None)
@given(st.integers(0, 2 ** 31 - 1))
def test_polar_area_formula_matches_polygon(seed):
    K = random_polygon(np.random.default_rng(seed))
    x = santalo_point_body(K)
    assert polar_area(K, x) == pytest.approx(polar_body(K, x).area, rel=1e-10)
    assert K.area * polar_area(K, x) <= math.pi ** 2 * (1 + 1e-12)


def test_json_roundtrip():
    K = Polygon.regular(7)
    assert hausdorff_distance(Polygon.from_json(K.to_json()), K) < 1e-15
