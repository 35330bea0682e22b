"""Convex analysis on regular grids.

Potentials are stored as extended-real arrays where +inf is represented
by the finite sentinel ``INF`` so that max/min sweeps never produce NaN.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from ._parallel import parallel_map
from .errors import AllInfinite, ZeroAtOrigin

INF = 1e300
_HALF_INF = 0.5 * INF


def is_inf(values):
    return np.asarray(values) >= _HALF_INF


def to_sentinel(values):
    """Map +inf / nan / huge values to the INF sentinel."""
    v = np.array(values, dtype=float)
    v[~np.isfinite(v) | (v >= _HALF_INF)] = INF
    return v


@dataclass(frozen=True, eq=False)
class GridFn:
    """Potential φ sampled on a regular tensor grid in R^1 or R^2.

    Parameters
    ----------
    box : array_like, shape (n, 2)
        [lo, hi] per axis.
    values : ndarray
        φ at the nodes (axis k has ``values.shape[k]`` nodes from lo to hi);
        +inf entries are stored as ``INF``.
    convexified : bool
        Set by transforms whose output is convex on the node set.
    """

    box: np.ndarray
    values: np.ndarray
    convexified: bool = False

    def __post_init__(self):
        box = np.array(self.box, dtype=float).reshape(-1, 2)
        vals = to_sentinel(self.values)
        if box.shape[0] not in (1, 2) or vals.ndim != box.shape[0]:
            raise ValueError("GridFn supports n in {1, 2} with matching value rank")
        if np.any(box[:, 1] <= box[:, 0]) or min(vals.shape) < 2:
            raise ValueError("box sides must be positive and shape >= 2 per axis")
        box.setflags(write=False)
        vals.setflags(write=False)
        object.__setattr__(self, "box", box)
        object.__setattr__(self, "values", vals)

    @property
    def dim(self) -> int:
        return self.values.ndim

    @property
    def shape(self) -> tuple:
        return self.values.shape

    @property
    def spacing(self) -> np.ndarray:
        return (self.box[:, 1] - self.box[:, 0]) / (np.array(self.shape) - 1)

    def axes(self) -> list[np.ndarray]:
        return [np.linspace(lo, hi, k) for (lo, hi), k in zip(self.box, self.shape)]

    def nodes(self) -> np.ndarray:
        return np.stack(np.meshgrid(*self.axes(), indexing="ij"), axis=-1)

    @property
    def finite(self) -> np.ndarray:
        return ~is_inf(self.values)

    def density(self) -> np.ndarray:
        return np.where(self.finite, np.exp(-np.minimum(self.values, 700.0)), 0.0)

    def with_values(self, values, convexified=False) -> "GridFn":
        return GridFn(self.box, values, convexified)

    @classmethod
    def sample(cls, potential, box, shape) -> "GridFn":
        """Evaluate a vectorized potential (points of shape (..., n)) on a grid."""
        box = np.array(box, dtype=float).reshape(-1, 2)
        shape = tuple(int(k) for k in np.broadcast_to(shape, (box.shape[0],)))
        axes = [np.linspace(lo, hi, k) for (lo, hi), k in zip(box, shape)]
        pts = np.stack(np.meshgrid(*axes, indexing="ij"), axis=-1)
        return cls(box, potential(pts))

    def evaluate(self, points) -> np.ndarray:
        """Multilinear interpolation; INF outside the box or next to INF nodes."""
        p = np.asarray(points, dtype=float)
        lead = p.shape[:-1]
        p = p.reshape(-1, self.dim)
        h = self.spacing
        out = np.zeros(len(p))
        outside = np.zeros(len(p), dtype=bool)
        idx, frac = [], []
        for k in range(self.dim):
            u = (p[:, k] - self.box[k, 0]) / h[k]
            tol = 1e-9
            outside |= (u < -tol) | (u > self.shape[k] - 1 + tol)
            u = np.clip(u, 0.0, self.shape[k] - 1)
            i = np.minimum(np.floor(u).astype(int), self.shape[k] - 2)
            idx.append(i)
            frac.append(u - i)
        bad = outside.copy()
        corners = [(0,), (1,)] if self.dim == 1 else [(0, 0), (0, 1), (1, 0), (1, 1)]
        for c in corners:
            w = np.ones(len(p))
            ind = []
            for k, ck in enumerate(c):
                w = w * (frac[k] if ck else 1.0 - frac[k])
                ind.append(idx[k] + ck)
            v = self.values[tuple(ind)]
            inf_node = is_inf(v)
            bad |= inf_node & (w > 1e-12)
            out += w * np.where(inf_node, 0.0, v)
        out[bad] = INF
        return out.reshape(lead)

    def is_convex(self, slack: float = 1e-9) -> bool:
        """Discrete convexity along axis lines and (in 2D) both diagonals."""
        v = self.values
        fin = self.finite

        def second_diff_ok(a, b, c, fa, fb, fc):
            ok = fa & fb & fc
            d = np.where(ok, a + c - 2.0 * b, 0.0)
            scale = np.maximum(1.0, np.abs(np.where(ok, b, 0.0)))
            return bool(np.all(d >= -slack * scale))

        if self.dim == 1:
            return second_diff_ok(v[:-2], v[1:-1], v[2:], fin[:-2], fin[1:-1], fin[2:])
        checks = [
            (v[:-2, :], v[1:-1, :], v[2:, :], fin[:-2, :], fin[1:-1, :], fin[2:, :]),
            (v[:, :-2], v[:, 1:-1], v[:, 2:], fin[:, :-2], fin[:, 1:-1], fin[:, 2:]),
        ]
        if np.allclose(self.spacing[0], self.spacing[1]):
            checks += [
                (v[:-2, :-2], v[1:-1, 1:-1], v[2:, 2:], fin[:-2, :-2], fin[1:-1, 1:-1], fin[2:, 2:]),
                (v[:-2, 2:], v[1:-1, 1:-1], v[2:, :-2], fin[:-2, 2:], fin[1:-1, 1:-1], fin[2:, :-2]),
            ]
        return all(second_diff_ok(*c) for c in checks)

    def to_json(self) -> dict:
        vals = [None if is_inf(x) else float(x) for x in self.values.ravel()]
        return {"box": self.box.tolist(), "shape": list(self.shape), "values": vals,
                "inf": None}

    @classmethod
    def from_json(cls, data: dict) -> "GridFn":
        shape = tuple(int(k) for k in data["shape"])
        marker = data.get("inf", None)
        vals = np.array([INF if (x is None or x == marker) else float(x)
                         for x in data["values"]], dtype=float).reshape(shape)
        return cls(data["box"], vals)


# -- 1D conjugate on a node set -------------------------------------------

def lower_hull(x, v):
    """Indices of the lower convex hull of the points (x_i, v_i), x increasing."""
    hull = []
    for i in range(len(x)):
        while len(hull) >= 2:
            i0, i1 = hull[-2], hull[-1]
            # drop i1 if it lies on or above the chord from i0 to i
            if (v[i1] - v[i0]) * (x[i] - x[i0]) >= (v[i] - v[i0]) * (x[i1] - x[i0]):
                hull.pop()
            else:
                break
        hull.append(i)
    return np.array(hull, dtype=int)


def conjugate_1d(x, v, y):
    """max_i (x_i·y - v_i) over finite nodes, exact on the node set.

    Uses the lower hull of the points and a binary search on its edge
    slopes (linear-time Legendre transform). Returns -INF everywhere if no
    node is finite.
    """
    x = np.asarray(x, dtype=float)
    v = np.asarray(v, dtype=float)
    y = np.asarray(y, dtype=float)
    fin = ~is_inf(v)
    if not fin.any():
        return np.full(y.shape, -INF)
    xf, vf = x[fin], v[fin]
    h = lower_hull(xf, vf)
    hx, hv = xf[h], vf[h]
    if len(h) == 1:
        return hx[0] * y - hv[0]
    slopes = np.diff(hv) / np.diff(hx)
    k = np.searchsorted(slopes, y, side="left")
    return hx[k] * y - hv[k]


def lower_envelope_1d(x, v):
    """Lower convex envelope of the finite node values, evaluated at x."""
    x = np.asarray(x, dtype=float)
    v = np.asarray(v, dtype=float)
    fin = ~is_inf(v)
    out = np.full(v.shape, INF)
    if not fin.any():
        return out
    xf, vf = x[fin], v[fin]
    h = lower_hull(xf, vf)
    lo, hi = xf[0], xf[-1]
    inside = (x >= lo) & (x <= hi)
    out[inside] = np.interp(x[inside], xf[h], vf[h])
    return out


# -- Legendre transform ---------------------------------------------------

def _slope_range(phi: GridFn, axis: int):
    v = phi.values
    h = phi.spacing[axis]
    a = np.take(v, np.arange(v.shape[axis] - 1), axis=axis)
    b = np.take(v, np.arange(1, v.shape[axis]), axis=axis)
    ok = ~is_inf(a) & ~is_inf(b)
    if not ok.any():
        return None
    d = (b[ok] - a[ok]) / h
    return float(d.min()), float(d.max())


def dual_box_for(phi: GridFn, pad: float = 0.1) -> np.ndarray:
    """Dual box [min slope, max slope] per axis, padded by `pad` of its width.

    When every finite forward difference is zero (indicator-like input)
    the slope range is degenerate; the unit interval around that slope
    is used instead.
    """
    out = []
    for k in range(phi.dim):
        r = _slope_range(phi, k)
        lo, hi = (0.0, 0.0) if r is None else r
        width = hi - lo
        if width <= 1e-12 * max(1.0, abs(lo), abs(hi)):
            c = 0.5 * (lo + hi)
            out.append([c - 1.0, c + 1.0])
        else:
            out.append([lo - pad * width, hi + pad * width])
    return np.array(out)


def legendre(phi: GridFn, dual_box=None, shape=None) -> GridFn:
    """Discrete Legendre transform Lφ(y) = max over nodes x of <x,y> - φ(x).

    Computed axis by axis with the linear-time lower-envelope method and
    evaluated on a regular dual grid (by default the padded slope box with
    the same node counts). The result is exact on the node set and convex.
    """
    if not phi.finite.any():
        raise AllInfinite("legendre of an all-infinite grid")
    box = dual_box_for(phi) if dual_box is None else np.array(dual_box, float).reshape(-1, 2)
    shape = phi.shape if shape is None else tuple(np.broadcast_to(shape, (phi.dim,)))
    ys = [np.linspace(lo, hi, k) for (lo, hi), k in zip(box, shape)]
    xs = phi.axes()
    v = phi.values
    if phi.dim == 1:
        return GridFn(box, conjugate_1d(xs[0], v, ys[0]), convexified=True)
    # pass 1: conjugate each row along the second axis
    rows = parallel_map(lambda i: conjugate_1d(xs[1], v[i], ys[1]), range(v.shape[0]))
    psi = np.array(rows)
    empty = psi[:, 0] <= -_HALF_INF
    neg = np.where(empty[:, None], INF, -psi)
    # pass 2: conjugate each dual column along the first axis
    cols = parallel_map(lambda j: conjugate_1d(xs[0], neg[:, j], ys[0]), range(len(ys[1])))
    return GridFn(box, np.array(cols).T, convexified=True)


def legendre_brute(phi: GridFn, x) -> np.ndarray:
    """Direct max over all finite nodes y of <x,y> - φ(y)."""
    fin = phi.finite
    if not fin.any():
        raise AllInfinite("legendre of an all-infinite grid")
    y = phi.nodes()[fin]
    vy = phi.values[fin]
    pts = np.asarray(x, dtype=float)
    lead = pts.shape[:-1] if phi.dim > 1 or pts.ndim > 1 else pts.shape
    pts = pts.reshape(-1, phi.dim)
    out = np.empty(len(pts))
    chunk = max(1, 2_000_000 // len(y))
    for s in range(0, len(pts), chunk):
        out[s:s + chunk] = np.max(pts[s:s + chunk] @ y.T - vy, axis=1)
    return out.reshape(lead)


def convex_envelope(phi: GridFn) -> GridFn:
    """Lower convex envelope on the grid (exact in 1D; biconjugate in 2D)."""
    if phi.dim == 1:
        return phi.with_values(lower_envelope_1d(phi.axes()[0], phi.values), True)
    dual = legendre(phi)
    back = legendre(dual, dual_box=phi.box, shape=phi.shape)
    return phi.with_values(np.where(phi.finite, back.values, INF), True)


def regularized_min(phi: GridFn, psi: GridFn) -> GridFn:
    """Convex envelope of min(φ, ψ) on a shared grid."""
    _check_same_grid(phi, psi)
    return convex_envelope(phi.with_values(np.minimum(phi.values, psi.values)))


def pointwise_max(phi: GridFn, psi: GridFn) -> GridFn:
    _check_same_grid(phi, psi)
    return phi.with_values(np.maximum(phi.values, psi.values))


def _check_same_grid(a: GridFn, b: GridFn):
    if a.shape != b.shape or not np.allclose(a.box, b.box, rtol=0, atol=1e-12):
        raise ValueError("grids differ")


# -- infimal convolution / Asplund product --------------------------------

def inf_convolution(phi: GridFn, psi: GridFn) -> GridFn:
    """(φ □ ψ)(z) = min over x + y = z of φ(x) + ψ(y) on aligned grids.

    Both grids must share the spacing; the result lives on the Minkowski
    sum of the boxes with shape n + m - 1 per axis.
    """
    if phi.dim != psi.dim:
        raise ValueError("dimension mismatch")
    hp, hq = phi.spacing, psi.spacing
    if not np.allclose(hp, hq, rtol=1e-9, atol=0):
        raise ValueError("inf_convolution needs equal grid spacing")
    shape = tuple(a + b - 1 for a, b in zip(phi.shape, psi.shape))
    box = phi.box + psi.box
    out = np.full(shape, INF)
    q = psi.values
    qfin = ~is_inf(q)
    qv = np.where(qfin, q, INF)
    for idx in zip(*np.nonzero(phi.finite)):
        sl = tuple(slice(i, i + k) for i, k in zip(idx, q.shape))
        cand = np.where(qfin, phi.values[idx] + qv, INF)
        np.minimum(out[sl], cand, out=out[sl])
    return GridFn(box, out)


def asplund_product(f, g, grid=None) -> GridFn:
    """Asplund product sup over x1 + x2 = x of f(x1)·g(x2), as a potential GridFn.

    `f` and `g` may be GridFn potentials or LogConcaveFn objects; the
    latter are sampled on `grid` = (box, shape).
    """
    f = _as_grid(f, grid)
    g = _as_grid(g, grid)
    return inf_convolution(f, g)


def _as_grid(f, grid):
    if isinstance(f, GridFn):
        return f
    if grid is None:
        raise ValueError("a grid (box, shape) is needed to sample a function")
    box, shape = grid
    return GridFn.sample(f.potential, box, shape)


# -- L_s transform --------------------------------------------------------

def ls_transform(g, s: float, *, grid=None, out_grid=None):
    """L_s g(x) = inf over {g > 0} of (1 - <x,y>/s)_+^s / g(y), on a grid.

    Parameters
    ----------
    g : GridFn or LogConcaveFn
        A GridFn is read as the potential of the density g = e^{-φ}; any
        LogConcaveFn (including s-concave approximations) is sampled on
        `grid` = (box, shape), by default its support box with 1025 nodes
        per axis in 1D and 129 in 2D.
    s : float
    out_grid : optional (box, shape) for the output; defaults to the input
        grid for GridFn input and to s·(support)° (1D) otherwise.

    Returns
    -------
    GridFn potential of L_s g for GridFn input, else a grid-backed
    LogConcaveFn.
    """
    from_grid = isinstance(g, GridFn)
    if from_grid:
        src = g
    else:
        if grid is None:
            box = np.asarray(g.support_box(), float)
            if not np.all(np.isfinite(box)):
                raise ValueError("ls_transform needs a bounded support")
            grid = (box, 1025 if g.dim == 1 else 129)
        src = GridFn.sample(g.potential, *grid)
    origin = src.evaluate(np.zeros(src.dim))
    if is_inf(origin):
        raise ZeroAtOrigin("g(0) = 0")
    if out_grid is None:
        if from_grid or src.dim == 2:
            out_box, out_shape = src.box, src.shape
        else:
            ys = src.axes()[0][src.finite]
            lo, hi = ys.min(), ys.max()
            out_box = [[s / lo if lo < 0 else -INF, s / hi if hi > 0 else INF]]
            if not np.all(np.abs(out_box) < _HALF_INF):
                raise ValueError("support must contain 0 in its interior")
            out_shape = src.shape
    else:
        out_box, out_shape = out_grid
    xs_grid = GridFn(out_box, np.zeros(tuple(np.broadcast_to(out_shape, (src.dim,)))))
    x = xs_grid.nodes().reshape(-1, src.dim)
    y = src.nodes()[src.finite]
    vy = src.values[src.finite]
    res = np.empty(len(x))
    chunk = max(1, 2_000_000 // len(y))
    for c in range(0, len(x), chunk):
        t = x[c:c + chunk] @ y.T / s
        dead = np.any(t >= 1.0, axis=1)
        with np.errstate(invalid="ignore", divide="ignore"):
            val = -s * np.log1p(-np.minimum(t, 1.0 - 1e-300)) - vy
        r = np.max(val, axis=1)
        r[dead] = INF
        res[c:c + chunk] = r
    out = xs_grid.with_values(res.reshape(xs_grid.shape))
    if from_grid:
        return out
    from .logconcave import GridBacked
    return GridBacked(out, even=getattr(g, "even", False))


def sup_error(a, b, window=None, nodes=None) -> float:
    """max |a - b| over finite nodes (optionally restricted to a box window)."""
    va, vb = np.asarray(a.values), np.asarray(b.values)
    mask = ~is_inf(va) & ~is_inf(vb)
    if window is not None:
        pts = a.nodes() if nodes is None else nodes
        w = np.asarray(window, float).reshape(-1, 2)
        inside = np.all((pts >= w[:, 0] - 1e-12) & (pts <= w[:, 1] + 1e-12), axis=-1)
        mask &= inside
    if not mask.any():
        return math.nan
    return float(np.max(np.abs(va[mask] - vb[mask])))
