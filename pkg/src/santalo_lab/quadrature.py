"""Quadrature rules: composite Gauss-Legendre, Simpson, and polygon rules."""

from functools import lru_cache

import numpy as np


@lru_cache(maxsize=None)
def _leggauss(order):
    x, w = np.polynomial.legendre.leggauss(order)
    x.setflags(write=False)
    w.setflags(write=False)
    return x, w


def gl_panels(a, b, breaks=(), panels=32, order=16):
    """Nodes and weights of composite Gauss-Legendre on [a, b].

    `breaks` inside (a, b) become panel edges so that kinks of the
    integrand never sit inside a panel.
    """
    if not b > a:
        return np.empty(0), np.empty(0)
    edges = [a] + sorted(float(c) for c in breaks if a < c < b) + [b]
    edges = np.asarray(edges)
    lengths = np.diff(edges)
    counts = np.maximum(1, np.round(panels * lengths / (b - a)).astype(int))
    cuts = np.concatenate([np.linspace(lo, hi, k + 1)[:-1] for lo, hi, k in
                           zip(edges[:-1], edges[1:], counts)] + [[b]])
    x, w = _leggauss(order)
    left, right = cuts[:-1], cuts[1:]
    half = 0.5 * (right - left)
    mid = 0.5 * (right + left)
    nodes = (mid[:, None] + half[:, None] * x[None, :]).ravel()
    weights = (half[:, None] * w[None, :]).ravel()
    return nodes, weights


def simpson_weights(n, h=1.0):
    """Composite Simpson weights for n equispaced nodes (n odd)."""
    if n < 3 or n % 2 == 0:
        raise ValueError("Simpson rule needs an odd node count >= 3")
    w = np.ones(n)
    w[1:-1:2] = 4.0
    w[2:-1:2] = 2.0
    return w * (h / 3.0)


def simpson_nd(values, spacings):
    """Tensor Simpson rule over the last len(spacings) axes of `values`."""
    out = values
    for axis, h in reversed(list(enumerate(spacings))):
        w = simpson_weights(values.shape[axis], h)
        out = np.tensordot(out, w, axes=([axis], [0]))
    return out


@lru_cache(maxsize=None)
def _triangle_reference(order):
    x, w = _leggauss(order)
    t = 0.5 * (x + 1.0)
    wt = 0.5 * w
    xi, eta = np.meshgrid(t, t, indexing="ij")
    wxi, weta = np.meshgrid(wt, wt, indexing="ij")
    # collapsed (Duffy) map of the unit square onto the reference triangle
    return xi.ravel(), eta.ravel(), (wxi * weta * xi).ravel()


def polygon_rule(vertices, order=16):
    """Points and weights integrating over a convex polygon.

    The polygon is fanned from its vertex mean into triangles; each
    triangle gets a collapsed tensor Gauss-Legendre rule.
    """
    v = np.asarray(vertices, float)
    c = v.mean(axis=0)
    xi, eta, w = _triangle_reference(order)
    pts, wts = [], []
    for p1, p2 in zip(v, np.roll(v, -1, axis=0)):
        e1, e2 = p1 - c, p2 - p1
        jac = abs(e1[0] * e2[1] - e1[1] * e2[0])
        pts.append(c + xi[:, None] * e1 + (xi * eta)[:, None] * e2)
        wts.append(w * jac)
    return np.concatenate(pts), np.concatenate(wts)
