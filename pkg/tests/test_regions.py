import math

import numpy as np
import pytest
from scipy.integrate import quad
from scipy.optimize import brentq
from scipy.stats import norm

from santalo_lab.geom2d import SQUARE, floating_body_body, hausdorff_distance, santalo_region_body
from santalo_lab.logconcave import Gaussian, Indicator, Tilted, expnorm
from santalo_lab.regions import (check_inclusion, cut_height, floating_body_fn, meyer_constant,
                                 normalized_product, product_gradient, region_convergence,
                                 santalo_region_fn)


def test_meyer_constant():
    assert meyer_constant(0.25) == pytest.approx(4 / 3)
    assert meyer_constant(0.05) == pytest.approx(5.263157894736842)
    assert meyer_constant(0.4999999) == pytest.approx(1.0, abs=1e-9)
    with pytest.raises(ValueError):
        meyer_constant(0.7)


def test_cut_height_gaussian_1d():
    a = cut_height(Gaussian(dim=1), np.array([1.0]), 0.25)
    assert a == pytest.approx(norm.ppf(0.75), abs=1e-8)


def test_cut_height_square_and_symmetry():
    f = Indicator(SQUARE)
    assert cut_height(f, np.array([1.0, 0.0]), 0.25) == pytest.approx(0.5, abs=1e-9)
    g = expnorm(1)
    th = np.array([math.cos(0.3), math.sin(0.3)])
    a, b = cut_height(g, th, 0.2), cut_height(g, -th, 0.2)
    assert a > 0 and a == pytest.approx(b, rel=1e-9)


def test_floating_gaussian_is_disc():
    # every one-dimensional marginal is standard normal
    F = floating_body_fn(Gaussian(), 0.25, 128)
    assert np.allclose(F.offsets, norm.ppf(0.75), atol=1e-8)
    r = np.linalg.norm(F.polygon.vertices, axis=1)
    assert np.ptp(r) <= 1e-4


def test_floating_shrinks_toward_center():
    d = [floating_body_fn(Gaussian(), lam, 64).diameter() for lam in (0.4, 0.45, 0.49)]
    assert d[0] > d[1] > d[2]
    assert d[2] == pytest.approx(2 * norm.ppf(0.51) / math.cos(math.pi / 64), rel=1e-6)


def test_floating_indicator_matches_body_path():
    F1 = floating_body_fn(Indicator(SQUARE), 0.25, 64)
    F2 = floating_body_body(SQUARE, 0.25, 64)
    assert hausdorff_distance(F1.polygon, F2.polygon) <= 1e-8


def test_gaussian_santalo_region_closed_form():
    # normalized product at a is exp(|a|^2 / 2), so S(f, t) is the disc of radius sqrt(2 ln t)
    S1 = santalo_region_fn(Gaussian(), 1.0, 64)
    assert np.max(S1.radii) <= 1e-4
    S2 = santalo_region_fn(Gaussian(), 2.0, 64)
    assert np.allclose(S2.radii, math.sqrt(2 * math.log(2)), atol=1e-7)
    assert santalo_region_fn(Gaussian(), 0.9, 32).is_empty
    assert normalized_product(Gaussian(), [0.3, 0.4]) == pytest.approx(math.exp(0.125), rel=1e-9)


def test_product_gradient_matches_fd():
    f = expnorm(1)
    a = np.array([0.2, 0.1])
    h = 1e-6
    fd = [(normalized_product(f, a + h * e) - normalized_product(f, a - h * e)) / (2 * h)
          for e in np.eye(2)]
    assert np.allclose(product_gradient(f, a), fd, rtol=1e-5)


def test_large_t_contains_floating_body():
    f = expnorm(1)
    F = floating_body_fn(f, 0.45, 64)
    rep = check_inclusion(F, f, 10.0)
    assert rep.holds and rep.max_violation == 0.0


@pytest.mark.parametrize("f", [Gaussian(), Indicator(SQUARE)], ids=["gaussian", "square"])
def test_inclusion_quarter(f):
    F = floating_body_fn(f, 0.25, 128)
    rep = check_inclusion(F, f, 4 / 3)
    assert rep.holds


def test_inclusion_body_path():
    F = floating_body_body(SQUARE, 0.25, 128)
    assert check_inclusion(F, SQUARE, 4 / 3).holds
    S = santalo_region_body(SQUARE, 4 / 3, 128)
    assert np.all(S.polygon.contains(F.polygon.vertices, tol=1e-9))


def test_inclusion_reflexive():
    f = expnorm(1)
    S = santalo_region_fn(f, 1.5, 64)
    rep = check_inclusion(S, f, 1.5)
    assert rep.max_violation <= 1e-6


def test_inclusion_detects_violation():
    f = Gaussian()
    F = floating_body_fn(f, 0.05, 64)
    rep = check_inclusion(F, f, 1.05)
    assert not rep.holds


def test_asymmetric_1d_region():
    f = Tilted(Indicator((0.0, 3.0)), [1.0])
    mass = 1 - math.exp(-3)

    def G(a):
        val, _ = quad(lambda y: math.exp(-(max(0.0, 3 * (y - 1)) + a * y)), -80, 80,
                      points=[1.0], limit=200)
        return val

    t = 1.0
    prod = lambda a: mass * G(a) / (2 * math.pi) - t
    lo = brentq(prod, -2.99, -0.7, xtol=1e-12)
    hi = brentq(prod, -0.7, -1e-3, xtol=1e-12)
    S = santalo_region_fn(f, t)
    assert S.interval[0] == pytest.approx(lo, abs=1e-6)
    assert S.interval[1] == pytest.approx(hi, abs=1e-6)


def test_region_convergence_indicator_constant():
    T = region_convergence(Indicator(SQUARE), 0.25, "truncation-floating", (1, 2, 4), dirs=32)
    assert max(T.distances) == 0.0
    assert T.monotone and T.holds
