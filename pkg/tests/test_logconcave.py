import math

import numpy as np
import pytest
from scipy.integrate import quad
from scipy.optimize import minimize_scalar

from santalo_lab.errors import InputError
from santalo_lab.geom2d import SQUARE, support_function
from santalo_lab.logconcave import (Gaussian, Indicator, SupportExp, Tilted, Translated,
                                   center_of_mass, dual_mass, evenness_defect, expnorm,
                                   function_from_spec, grad_dual_mass, homothety, integrate,
                                   log_concavity_defect, monte_carlo_mass, normalized_product,
                                   polar_fn, s_approx, santalo_point_fn, triangle, truncate)

TWO_PI = 2 * math.pi


def test_gaussian_mass():
    assert integrate(Gaussian()) == pytest.approx(TWO_PI, rel=1e-6)
    assert integrate(Gaussian(), method="simpson") == pytest.approx(TWO_PI, rel=1e-6)


def test_indicator_and_l1_mass():
    assert integrate(Indicator(SQUARE)) == pytest.approx(4.0, rel=1e-12)
    assert integrate(expnorm(1), method="simpson") == pytest.approx(4.0, rel=1e-6)


def test_monte_carlo_agrees():
    est, se = monte_carlo_mass(Gaussian(), seed=1)
    assert abs(est - TWO_PI) <= 4 * se


def test_gaussian_self_dual():
    g = Gaussian()
    p = polar_fn(g)
    x = np.random.default_rng(0).normal(size=(50, 2))
    assert np.allclose(p(x), g(x), rtol=1e-12)


def test_indicator_polar_is_support_exp():
    p = polar_fn(Indicator(SQUARE))
    x = np.random.default_rng(1).normal(size=(20, 2))
    h = np.array([support_function(SQUARE, v) for v in x])
    assert np.allclose(p.potential(x), h, rtol=1e-12)


def test_dual_mass_closed_forms():
    assert dual_mass(Gaussian(), [0, 0]) == pytest.approx(TWO_PI, rel=1e-9)
    assert integrate(Gaussian()) * dual_mass(Gaussian(), [0, 0]) == pytest.approx(TWO_PI ** 2,
                                                                              rel=1e-6)
    assert dual_mass(Indicator(SQUARE), [0, 0]) == pytest.approx(4.0, rel=1e-9)


def test_dual_mass_even_symmetric():
    for f in (Gaussian(), Indicator(SQUARE), expnorm(1)):
        a = np.array([0.2, -0.1])
        assert dual_mass(f, a) == pytest.approx(dual_mass(f, -a), rel=1e-9)


def test_dual_mass_tilted_gaussian_quad():
    # G(a) = int exp(-(|y|^2/2 + <a,y>)) restricted to the 1D slice: closed form
    g = Gaussian(dim=1)
    a = 0.4
    ref, _ = quad(lambda y: math.exp(-(0.5 * y * y + a * y)), -40, 40)
    assert dual_mass(g, [a]) == pytest.approx(ref, rel=1e-9)


def test_gradient_matches_finite_difference():
    g = Gaussian()
    a = np.array([0.3, 0.0])
    h = 1e-5
    fd = np.array([(dual_mass(g, a + h * e) - dual_mass(g, a - h * e)) / (2 * h)
                   for e in np.eye(2)])
    assert np.allclose(grad_dual_mass(g, a), fd, rtol=1e-4)
    for f in (Gaussian(), Indicator(SQUARE), expnorm(1)):
        assert np.linalg.norm(grad_dual_mass(f, [0, 0])) < 1e-8


def test_santalo_point_even_and_shifted_gaussian():
    assert np.linalg.norm(santalo_point_fn(Indicator(SQUARE))) < 1e-8
    c = np.array([0.7, -0.4])
    x0 = santalo_point_fn(Gaussian(center=c))
    # the polar of f(x - c) is taken about the origin, so the minimizer sits at -c
    assert np.allclose(x0, -c, atol=1e-8)
    assert np.linalg.norm(grad_dual_mass(Gaussian(center=c), x0)) < 1e-8


def test_santalo_point_asymmetric_1d():
    f = Tilted(Indicator((0.0, 3.0)), [1.0])

    def G(a):
        # int over y of exp(-sup_x in [0,3] (x y - x) - a y), with the sup in closed form
        val, _ = quad(lambda y: math.exp(-(max(0.0, 3 * (y - 1)) + a * y)), -60, 60,
                      points=[1.0], limit=200)
        return val

    ref = minimize_scalar(G, bounds=(-2.9, -0.01), method="bounded",
                          options={"xatol": 1e-10}).x
    x0 = santalo_point_fn(f)
    assert x0[0] == pytest.approx(ref, abs=1e-6)
    assert 0.0 < -x0[0] < 3.0
    assert normalized_product(f, x0) <= 1.0


def test_truncation():
    g = Gaussian()
    ft = truncate(g, 2.0)
    box = ft.support_box()
    assert np.allclose(box, [[-2, 2], [-2, 2]])
    assert ft(np.array([1.99, 0.0])) > 0 and ft(np.array([2.01, 0.0])) == 0
    masses = [integrate(truncate(g, t)) for t in (1, 2, 4, 8, 16)]
    exact = [TWO_PI * (1 - math.exp(-t)) for t in (1, 2, 4, 8, 16)]
    assert np.allclose(masses, exact, rtol=1e-8)
    ind = Indicator(SQUARE)
    assert truncate(ind, 0.5) is ind


def test_s_approx():
    fs = s_approx(Gaussian(), 1)
    x = np.array([[0.5, 0.3], [1.2, 0.1], [2.0, 2.0]])
    assert np.allclose(fs(x), np.maximum(1 - 0.5 * np.sum(x ** 2, 1), 0), atol=1e-15)
    probes = np.random.default_rng(2).uniform(-2, 2, size=(200, 2))
    errs = []
    for s in (1, 2, 4, 8, 16, 32, 64, 128, 256):
        fs = s_approx(Gaussian(), s)
        assert np.all(fs(probes) <= Gaussian()(probes) + 1e-15)
        errs.append(np.max(np.abs(fs(probes) - Gaussian()(probes))))
    assert all(b < a for a, b in zip(errs, errs[1:]))
    t = 3.0
    big = s_approx(truncate(Gaussian(), t), 256)
    inside = probes[np.sum(probes ** 2, 1) / 2 < t]
    assert np.all(big(inside) > math.exp(-t) / 2)


def test_s_approx_mass_1d():
    # int (1 - x^2/(2s))_+^s dx = sqrt(2 s) * B(1/2, s + 1)
    for s in (1, 2, 5):
        ref = math.sqrt(2 * s) * math.gamma(0.5) * math.gamma(s + 1) / math.gamma(s + 1.5)
        assert integrate(s_approx(Gaussian(dim=1), s)) == pytest.approx(ref, rel=1e-8)


def test_homothety():
    g = Gaussian()
    assert homothety(g, 1.0) is g or np.allclose(homothety(g, 1.0)([[0.3, 0.2]]),
                                                  g([[0.3, 0.2]]))
    h = homothety(Indicator(SQUARE), 2.0)
    assert h([[1.9, -1.9]])[0] == pytest.approx(1.0)
    assert h([[2.1, 0.0]])[0] == 0.0
    assert integrate(h) == pytest.approx(16.0, rel=1e-9)


def test_center_of_mass_and_translation():
    f = Translated(Gaussian(), [0.5, -1.0])
    assert np.allclose(center_of_mass(f), [0.5, -1.0], atol=1e-8)


def test_triangle_polar_1d():
    # (1 - |x|)_+ : sup over |x|<1 of xy + log(1 - |x|)
    p = polar_fn(triangle())
    y = np.array([[0.5], [2.0], [-3.0]])
    ref = [max(0.0, abs(v) - 1 - math.log(abs(v))) if abs(v) >= 1 else 0.0 for v in y[:, 0]]
    assert np.allclose(p.potential(y), ref, atol=1e-12)


def test_property_checkers():
    rng = np.random.default_rng(5)
    assert log_concavity_defect(Gaussian(), rng) <= 1e-10
    assert evenness_defect(Gaussian(), rng) <= 1e-12
    assert evenness_defect(Gaussian(center=[0.3, 0]), rng) > 1e-3


def test_function_from_spec():
    f = function_from_spec({"kind": "gaussian", "params": {"dim": 1}})
    assert f.dim == 1
    sq = function_from_spec({"kind": "indicator", "params": {"body": "square"}})
    assert integrate(sq) == pytest.approx(4.0)
    with pytest.raises(InputError):
        function_from_spec({"kind": "nope"})
    with pytest.raises(InputError):
        function_from_spec({"params": {}})


def test_support_exp_1d_dual_mass():
    # f° of 1_{[-1,1]} is e^{-|y|}; G(a) = int e^{-|y| - a y} = 2 / (1 - a^2)
    f = Indicator((-1.0, 1.0))
    assert isinstance(f.polar(), SupportExp) or f.polar().dim == 1
    assert dual_mass(f, [0.5]) == pytest.approx(2 / (1 - 0.25), rel=1e-10)
    assert math.isinf(dual_mass(f, [1.5]))
