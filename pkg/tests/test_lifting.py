import math

import numpy as np
import pytest
from scipy.special import gamma

from santalo_lab.errors import UnsupportedDimension
from santalo_lab.geom2d import CROSS, SQUARE, hausdorff_distance
from santalo_lab.lifting import (ball_ratio, lift_body, lifted_volume, psi_properties,
                                 random_biaxial_polygon, sconcave_santalo_bound,
                                 translation_defect, verify_polar_lift,
                                 verify_projection_floating)
from santalo_lab.logconcave import Gaussian, Indicator, triangle


def test_triangle_lifts_to_cross():
    L = lift_body(triangle(), 1)
    assert hausdorff_distance(L.polygon, CROSS) < 1e-12
    assert L.volume() == pytest.approx(2.0, rel=1e-12)
    assert lifted_volume(triangle(), 1) == pytest.approx(2.0, rel=1e-12)


def test_indicator_s2_is_cylinder():
    g = Indicator((-1.0, 1.0))
    # radius 1, length 2 / sqrt(2)
    assert lifted_volume(g, 2) == pytest.approx(math.pi * math.sqrt(2), rel=1e-12)
    assert lift_body(g, 2).volume() == pytest.approx(math.pi * math.sqrt(2), rel=1e-9)


def test_translation_equivariance():
    assert translation_defect(triangle(), 0.3, 1) < 1e-12
    assert translation_defect(triangle(), 0.3, 2) < 1e-3


def test_polar_lift():
    rep = verify_polar_lift(triangle(), 1)
    assert rep.hausdorff <= 5e-3
    rep = verify_polar_lift(Indicator((-1.0, 1.0)), 1)
    assert rep.hausdorff <= 5e-3
    assert rep.body_product <= rep.body_bound
    with pytest.raises(UnsupportedDimension):
        verify_polar_lift(triangle(), 2)


def test_projection_floating():
    rep = verify_projection_floating(Indicator((-1.0, 1.0)), 0.25, 1)
    assert np.allclose(rep.function_interval, [-0.5, 0.5], atol=1e-9)
    assert rep.defect <= 1e-3
    for lam in (0.25, 0.45):
        assert verify_projection_floating(Gaussian(dim=1), lam, 1).defect <= 1e-3


def test_psi_square():
    probes = np.array([[0.3, 0.0], [0.3, 0.4], [-0.5, 0.2], [0.0, 0.0], [0.1, -0.6]])
    rep = psi_properties(SQUARE, probes)
    assert rep.symmetry_defect <= 1e-12
    assert rep.section_defect == 0.0
    assert rep.min_at_origin and rep.skipped == 0


def test_psi_random_biaxial():
    rng = np.random.default_rng(11)
    K = random_biaxial_polygon(rng)
    rep = psi_properties(K, rng.uniform(-0.2, 0.2, size=(20, 2)))
    assert rep.symmetry_defect <= 1e-10
    assert rep.min_at_origin


def test_ball_ratio():
    def vb(n):
        return math.pi ** (n / 2) / gamma(n / 2 + 1)

    assert ball_ratio(1, 2) == pytest.approx(9 * math.pi / 16, rel=1e-12)
    for n, s in ((1, 5), (2, 7), (3, 40)):
        assert ball_ratio(n, s) == pytest.approx(vb(s) ** 2 / vb(s + n) ** 2
                                                 * (2 * math.pi / s) ** n, rel=1e-10)
    # for n = 2 the ratio is ((s + 2) / s)^2 exactly
    assert ball_ratio(2, 200) == pytest.approx((202 / 200) ** 2, rel=1e-12)
    vals = [ball_ratio(2, s) for s in range(1, 300)]
    assert min(vals) >= 1 and all(b < a for a, b in zip(vals, vals[1:]))


def test_sconcave_bound():
    assert sconcave_santalo_bound(1, 1) == pytest.approx(math.pi ** 2 / 4, rel=1e-12)
