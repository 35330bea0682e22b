import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from santalo_lab.convexfun import (INF, GridFn, asplund_product, conjugate_1d, convex_envelope,
                                   inf_convolution, is_inf, legendre, legendre_brute,
                                   ls_transform, lower_envelope_1d, sup_error)
from santalo_lab.errors import ZeroAtOrigin

QUAD_BOX = [[-6.0, 6.0], [-6.0, 6.0]]


def quad(x):
    return 0.5 * np.sum(x ** 2, axis=-1)


def test_quadratic_self_conjugate():
    phi = GridFn.sample(quad, QUAD_BOX, 257)
    dual = legendre(phi, dual_box=QUAD_BOX, shape=257)
    assert sup_error(dual, phi, window=[[-3, 3], [-3, 3]]) <= 5e-3
    assert dual.convexified and dual.is_convex()


def test_indicator_conjugate_is_abs():
    phi = GridFn([[-1.0, 1.0]], np.zeros(201))
    dual = legendre(phi, dual_box=[[-4.0, 4.0]], shape=161)
    y = dual.axes()[0]
    assert np.max(np.abs(dual.values - np.abs(y))) < 1e-12


def test_linear_conjugate_vanishes_at_slope():
    phi = GridFn.sample(lambda x: 0.5 * x[..., 0] - 0.25 * x[..., 1], [[-1, 1], [-1, 1]], 33)
    assert legendre_brute(phi, np.array([0.5, -0.25])) == pytest.approx(0.0, abs=1e-12)


def test_brute_single_node():
    vals = np.full((5, 5), INF)
    vals[3, 1] = 2.0
    phi = GridFn([[-2, 2], [-2, 2]], vals)
    y0 = phi.nodes()[3, 1]
    x = np.array([0.7, -1.3])
    assert legendre_brute(phi, x) == pytest.approx(x @ y0 - 2.0)


@settings(max_examples=20, deadline=None)
@given(st.floats(0.3, 3.0), st.floats(-1.0, 1.0), st.floats(-2.0, 2.0))
def test_fast_legendre_matches_brute_1d(a, b, c):
    phi = GridFn.sample(lambda x: a * x[..., 0] ** 2 + b * x[..., 0] + c, [[-3, 3]], 257)
    dual = legendre(phi)
    y = dual.axes()[0]
    brute = np.array([legendre_brute(phi, np.array([t])) for t in y]).ravel()
    assert np.max(np.abs(dual.values - brute)) < 1e-10


def test_conjugate_1d_and_envelope():
    x = np.linspace(-2, 2, 41)
    v = np.abs(x) + 0.1 * np.sin(7 * x)
    env = lower_envelope_1d(x, v)
    assert np.all(env <= v + 1e-12)
    assert np.all(np.diff(env, 2) >= -1e-12)
    y = np.linspace(-1, 1, 11)
    assert np.allclose(conjugate_1d(x, v, y), conjugate_1d(x, env, y), atol=1e-12)


def test_convex_envelope_idempotent():
    phi = GridFn.sample(quad, [[-2, 2]], 65)
    env = convex_envelope(phi)
    assert np.allclose(env.values, phi.values, atol=1e-12)


def test_inf_convolution_of_quadratics():
    # (q □ q)(z) = |z|^2 / 4 for q = |x|^2 / 2
    h = 0.05
    phi = GridFn.sample(quad, [[-2, 2]], int(round(4 / h)) + 1)
    out = inf_convolution(phi, phi)
    z = out.axes()[0]
    ok = np.abs(z) <= 2
    assert np.max(np.abs(out.values[ok] - z[ok] ** 2 / 4)) < h ** 2


def test_asplund_identity_spike():
    f = GridFn.sample(quad, [[-2, 2]], 81)
    spike = np.full(3, INF)
    spike[1] = 0.0
    delta = GridFn([[-0.05, 0.05]], spike)
    out = asplund_product(f, delta)
    inner = out.values[1:-1]
    assert np.allclose(inner, f.values, atol=1e-12)


def test_ls_indicator_is_triangle():
    g = GridFn([[-1.0, 1.0]], np.zeros(201))
    out = ls_transform(g, 1, out_grid=([[-1.0, 1.0]], 201))
    x = out.axes()[0]
    dens = np.where(is_inf(out.values), 0.0, np.exp(-out.values))
    assert np.max(np.abs(dens - np.maximum(1 - np.abs(x), 0))) < 1e-12


def test_ls_requires_positive_origin():
    vals = np.zeros(21)
    vals[10] = INF
    with pytest.raises(ZeroAtOrigin):
        ls_transform(GridFn([[-1, 1]], vals), 1)


def test_json_roundtrip_keeps_infinity():
    vals = np.zeros(5)
    vals[0] = INF
    g = GridFn([[0, 1]], vals)
    back = GridFn.from_json(g.to_json())
    assert is_inf(back.values[0]) and np.all(back.values[1:] == 0)
