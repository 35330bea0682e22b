"""Planar convex polygons.

Polarity, areas, half-plane intersection, support functions, Hausdorff
distance, and the body-level Santaló region and floating body.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
from scipy.optimize import brentq, linprog
from scipy.spatial import ConvexHull, QhullError

from ._parallel import parallel_map
from .errors import CenterOutside, LineMissesBody, NoConvergence, Unbounded

DEDUP_TOL = 1e-9
RADIUS_TOL = 1e-8
MASS_RTOL = 1e-10
DEFAULT_DIRS = 256


def _frozen(a):
    a = np.array(a, dtype=float)
    a.setflags(write=False)
    return a


def directions(m: int, offset: float = 0.0) -> np.ndarray:
    """`m` unit vectors at angles 2πk/m (+ offset), counter-clockwise."""
    ang = offset + 2.0 * np.pi * np.arange(m) / m
    return np.column_stack([np.cos(ang), np.sin(ang)])


@dataclass(frozen=True)
class HalfSpace:
    """The half-plane {x : <x, normal> <= offset}; normal is normalized."""

    normal: np.ndarray
    offset: float

    def __post_init__(self):
        n = np.asarray(self.normal, dtype=float).reshape(2)
        norm = math.hypot(n[0], n[1])
        if norm == 0.0:
            raise ValueError("half-space normal must be nonzero")
        object.__setattr__(self, "normal", _frozen(n / norm))
        object.__setattr__(self, "offset", float(self.offset) / norm)

    def contains(self, points, tol=1e-12):
        return np.asarray(points) @ self.normal <= self.offset + tol


def _signed_area(v):
    d = v - v[0]
    return 0.5 * float(np.sum(d[:-1, 0] * d[1:, 1] - d[1:, 0] * d[:-1, 1]))


def _clean_ring(v, tol):
    if _signed_area(v) < 0:
        v = v[::-1]
    changed = True
    while changed and len(v) >= 3:
        changed = False
        nxt = np.roll(v, -1, axis=0)
        keep = np.linalg.norm(nxt - v, axis=1) > tol
        if not keep.all():
            v = v[keep]
            changed = True
            continue
        prev = np.roll(v, 1, axis=0)
        nxt = np.roll(v, -1, axis=0)
        e1, e2 = v - prev, nxt - v
        cross = e1[:, 0] * e2[:, 1] - e1[:, 1] * e2[:, 0]
        scale = np.linalg.norm(e1, axis=1) * np.linalg.norm(e2, axis=1)
        flat = cross <= 1e-12 * scale
        if flat.any():
            if np.any(cross < -1e-7 * scale):
                raise ValueError("vertices are not in convex position")
            # drop one flat vertex at a time so thin slivers are not erased
            v = np.delete(v, int(np.argmax(flat)), axis=0)
            changed = True
    return v


class Polygon:
    """Convex polygon with counter-clockwise vertices in strictly convex position.

    The half-space representation (outward unit normals and offsets) is
    derived from the vertices on construction.

    Parameters
    ----------
    vertices : array_like, shape (m, 2)
        Vertices in cyclic order (either orientation). Near-duplicates
        within `tol` and collinear vertices are removed.
    """

    __slots__ = ("vertices", "normals", "offsets", "_area", "_centroid")

    def __init__(self, vertices, *, tol: float = DEDUP_TOL):
        v = np.asarray(vertices, dtype=float).reshape(-1, 2)
        if len(v) < 3:
            raise ValueError("a polygon needs at least 3 vertices")
        v = _clean_ring(v, tol)
        if len(v) < 3:
            raise ValueError("degenerate polygon (no interior)")
        e = np.roll(v, -1, axis=0) - v
        length = np.hypot(e[:, 0], e[:, 1])
        normals = np.column_stack([e[:, 1], -e[:, 0]]) / length[:, None]
        self.vertices = _frozen(v)
        self.normals = _frozen(normals)
        self.offsets = _frozen(np.sum(normals * v, axis=1))
        self._area = _signed_area(v)
        if not self._area > 0:
            raise ValueError("degenerate polygon (no interior)")
        self._centroid = None

    @classmethod
    def hull(cls, points, *, tol: float = DEDUP_TOL) -> "Polygon":
        pts = np.asarray(points, dtype=float).reshape(-1, 2)
        try:
            h = ConvexHull(pts)
        except QhullError as exc:
            raise ValueError("points do not span a polygon") from exc
        return cls(pts[h.vertices], tol=tol)

    @classmethod
    def regular(cls, m: int, radius: float = 1.0, phase: float = 0.0) -> "Polygon":
        return cls(radius * directions(m, phase))

    @classmethod
    def box(cls, lo, hi) -> "Polygon":
        (x0, y0), (x1, y1) = lo, hi
        return cls([[x0, y0], [x1, y0], [x1, y1], [x0, y1]])

    @property
    def halfspaces(self) -> list[HalfSpace]:
        return [HalfSpace(n, b) for n, b in zip(self.normals, self.offsets)]

    @property
    def area(self) -> float:
        return self._area

    @property
    def centroid(self) -> np.ndarray:
        if self._centroid is None:
            v = self.vertices
            o = v[0]
            d = v - o
            d2 = np.roll(d, -1, axis=0)
            cr = d[:, 0] * d2[:, 1] - d2[:, 0] * d[:, 1]
            c = np.sum((d + d2) * cr[:, None], axis=0) / (6.0 * self._area)
            self._centroid = _frozen(o + c)
        return self._centroid

    @property
    def scale(self) -> float:
        return float(np.max(np.abs(self.vertices)))

    def __len__(self):
        return len(self.vertices)

    def __repr__(self):
        return f"Polygon({len(self)} vertices, area={self._area:.6g})"

    def contains(self, points, tol: float = 1e-12):
        p = np.asarray(points, dtype=float)
        slack = p @ self.normals.T - self.offsets
        return np.all(slack <= tol * max(1.0, self.scale), axis=-1)

    def interior_margin(self, x) -> float:
        """min over edges of (offset - <n, x>); positive iff x is interior."""
        return float(np.min(self.offsets - self.normals @ np.asarray(x, float)))

    def support(self, theta) -> float:
        return float(np.max(self.vertices @ np.asarray(theta, float)))

    def translate(self, a) -> "Polygon":
        return Polygon(self.vertices + np.asarray(a, float))

    def scaled(self, c: float) -> "Polygon":
        return Polygon(c * self.vertices)

    def transform(self, matrix) -> "Polygon":
        return Polygon.hull(self.vertices @ np.asarray(matrix, float).T)

    def to_json(self) -> dict:
        return {"vertices": self.vertices.tolist()}

    @classmethod
    def from_json(cls, data: dict) -> "Polygon":
        return cls(data["vertices"])


def volume(K: Polygon) -> float:
    """Area of K by the shoelace formula."""
    return K.area


def support_function(K: Polygon, theta) -> float:
    """h_K(theta) = max over vertices of <v, theta>."""
    return K.support(theta)


def ball_volume(n: int) -> float:
    """Volume of the Euclidean unit ball in R^n via double factorials."""
    if n < 1:
        raise ValueError("dimension must be >= 1")
    if n > 200:
        return math.exp(log_ball_volume(n))
    dfact = math.prod(range(n, 0, -2))
    if n % 2 == 0:
        return (2.0 * math.pi) ** (n // 2) / dfact
    return math.pi ** ((n - 1) // 2) * 2.0 ** ((n + 1) // 2) / dfact


def log_ball_volume(n: int) -> float:
    if n < 1:
        raise ValueError("dimension must be >= 1")
    log_dfact = sum(math.log(k) for k in range(n, 0, -2))
    if n % 2 == 0:
        return 0.5 * n * math.log(2 * math.pi) - log_dfact
    return (0.5 * (n - 1) * math.log(math.pi) + 0.5 * (n + 1) * math.log(2.0)
            - log_dfact)


def _polar_vertices(K: Polygon, x):
    slack = K.offsets - K.normals @ x
    if np.min(slack) <= 1e-12 * max(1.0, K.scale):
        raise CenterOutside(f"center {tuple(np.round(x, 12))} is not interior")
    return K.normals / slack[:, None]


def polar_body(K: Polygon, x=(0.0, 0.0)) -> Polygon:
    """K^x = x + (K - x)°.

    The polar of K - x is {y : <y, v - x> <= 1 for all vertices v}; its
    vertices are the dual points n_i / (b_i - <n_i, x>) of the edges of K,
    already in counter-clockwise order.
    """
    x = np.asarray(x, dtype=float)
    return Polygon(x + _polar_vertices(K, x))


def polar_area(K: Polygon, x) -> float:
    """Vol((K - x)°); +inf when x is not interior."""
    try:
        q = _polar_vertices(K, np.asarray(x, float))
    except CenterOutside:
        return math.inf
    return _signed_area(q)


def _polar_area_grad(K: Polygon, x):
    q = _polar_vertices(K, x)
    o = q[0]
    d = q - o
    d2 = np.roll(d, -1, axis=0)
    cr = d[:, 0] * d2[:, 1] - d2[:, 0] * d[:, 1]
    area = 0.5 * float(np.sum(cr))
    moment = o * area + np.sum((d + d2) * cr[:, None], axis=0) / 6.0
    # d/dx Vol((K-x)°) = 3 * integral of y over (K-x)°
    return area, 3.0 * moment


def _point_segment_distance(p, a, b):
    ab = b - a
    denom = np.sum(ab * ab, axis=-1)
    t = np.clip(np.sum((p[:, None, :] - a) * ab, axis=-1) / denom, 0.0, 1.0)
    proj = a + t[..., None] * ab
    return np.linalg.norm(p[:, None, :] - proj, axis=-1)


def distance_to_polygon(points, Q) -> np.ndarray:
    """Euclidean distance from each point to the convex set Q (0 inside)."""
    p = np.atleast_2d(np.asarray(points, dtype=float))
    if isinstance(Q, Polygon):
        v = Q.vertices
        d = _point_segment_distance(p, v, np.roll(v, -1, axis=0)).min(axis=1)
        return np.where(Q.contains(p), 0.0, d)
    q = np.atleast_2d(np.asarray(Q, dtype=float))
    if len(q) == 1:
        return np.linalg.norm(p - q[0], axis=1)
    if len(q) == 2:
        return _point_segment_distance(p, q[:1], q[1:]).min(axis=1)
    return distance_to_polygon(p, Polygon.hull(q))


def _as_points(P):
    return P.vertices if isinstance(P, Polygon) else np.atleast_2d(P)


def hausdorff_distance(P, Q) -> float:
    """Symmetric Hausdorff distance between two convex polygons.

    Either argument may also be an array of points standing for their
    convex hull (used for regions that collapsed to a point or segment).
    """
    d1 = distance_to_polygon(_as_points(P), Q).max()
    d2 = distance_to_polygon(_as_points(Q), P).max()
    return float(max(d1, d2))


def chebyshev_center(normals, offsets):
    """Center and radius of the largest disc inside {<n_i, x> <= b_i}."""
    A = np.asarray(normals, float)
    b = np.asarray(offsets, float)
    norms = np.linalg.norm(A, axis=1)
    res = linprog(c=[0.0, 0.0, -1.0], A_ub=np.column_stack([A, norms]), b_ub=b,
                  bounds=[(None, None), (None, None), (None, None)],
                  method="highs")
    if res.status != 0:
        raise Unbounded("could not locate an interior point")
    return res.x[:2], float(res.x[2])


def _check_bounded(normals):
    ang = np.sort(np.arctan2(normals[:, 1], normals[:, 0]))
    gaps = np.diff(np.concatenate([ang, ang[:1] + 2.0 * np.pi]))
    if len(ang) < 3 or gaps.max() >= np.pi - 1e-12:
        raise Unbounded("half-plane normals do not positively span the plane")


def halfplane_intersection(hs, interior=None) -> Polygon | None:
    """Intersection of half-planes as a Polygon, or None when it has no interior.

    Parameters
    ----------
    hs : list of HalfSpace, or a pair (normals, offsets)
    interior : optional 2-vector known to be strictly inside; otherwise a
        Chebyshev center is found by linear programming.

    Raises
    ------
    Unbounded
        If the normals do not positively span the plane.
    """
    if isinstance(hs, tuple):
        A, b = (np.asarray(a, float) for a in hs)
        A = A / np.linalg.norm(A, axis=1, keepdims=True)
    else:
        if not hs:
            raise ValueError("empty half-space list")
        A = np.array([h.normal for h in hs])
        b = np.array([h.offset for h in hs])
    _check_bounded(A)
    scale = max(1.0, float(np.max(np.abs(b))))
    p = None
    if interior is not None:
        p = np.asarray(interior, float)
        if np.min(b - A @ p) <= 1e-12 * scale:
            p = None
    if p is None:
        p, r = chebyshev_center(A, b)
        if r <= 1e-12 * scale:
            return None
    c = b - A @ p
    dual = A / c[:, None]
    try:
        hull = ConvexHull(dual)
    except QhullError:
        return None
    idx = hull.vertices
    d1, d2 = dual[idx], dual[np.roll(idx, -1)]
    det = d1[:, 0] * d2[:, 1] - d1[:, 1] * d2[:, 0]
    verts = np.column_stack([d2[:, 1] - d1[:, 1], d1[:, 0] - d2[:, 0]]) / det[:, None]
    try:
        return Polygon(p + verts)
    except ValueError:
        return None


# -- regions ---------------------------------------------------------------

@dataclass(frozen=True)
class RegionApprox:
    """Polygonal (2D) or interval (1D) approximation of a region.

    Floating bodies are outer approximations (intersections of cut
    half-planes); Santaló regions are inner approximations (hulls of
    boundary points found along rays). An empty region has neither a
    polygon nor an interval.
    """

    kind: str
    param: float
    dirs: int
    dim: int = 2
    polygon: Polygon | None = None
    interval: tuple | None = None
    points: np.ndarray | None = None
    center: np.ndarray | None = None
    thetas: np.ndarray | None = None
    offsets: np.ndarray | None = None
    radii: np.ndarray | None = None
    residuals: np.ndarray | None = None
    meta: dict = field(default_factory=dict)

    @property
    def is_empty(self) -> bool:
        return self.polygon is None and self.interval is None and self.points is None

    @property
    def is_degenerate(self) -> bool:
        return not self.is_empty and self.polygon is None and self.dim == 2

    def boundary_points(self) -> np.ndarray:
        if self.dim == 1:
            return np.array(self.interval, float).reshape(-1, 1)
        if self.polygon is not None:
            return np.asarray(self.polygon.vertices)
        return np.asarray(self.points)

    def geometry(self):
        """Object accepted by hausdorff_distance for this region."""
        if self.polygon is not None:
            return self.polygon
        return self.boundary_points()

    def diameter(self) -> float:
        p = self.boundary_points()
        if len(p) < 2:
            return 0.0
        return float(np.max(np.linalg.norm(p[:, None, :] - p[None, :, :], axis=-1)))

    def to_json(self) -> dict:
        out = {"kind": self.kind, "param": self.param, "dirs": self.dirs,
               "dim": self.dim, "empty": self.is_empty}
        if self.dim == 1 and self.interval is not None:
            out["interval"] = [float(x) for x in self.interval]
        elif not self.is_empty:
            out["vertices"] = self.boundary_points().tolist()
        if self.center is not None:
            out["center"] = np.asarray(self.center, float).ravel().tolist()
        if self.offsets is not None:
            out["offsets"] = np.asarray(self.offsets).tolist()
        if self.radii is not None:
            out["radii"] = np.asarray(self.radii).tolist()
        return out


def region_distance(R1: RegionApprox, R2: RegionApprox) -> float:
    """Hausdorff distance between two nonempty regions of the same dimension."""
    if R1.is_empty or R2.is_empty:
        raise ValueError("Hausdorff distance of an empty region")
    if R1.dim == 1:
        (a1, b1), (a2, b2) = R1.interval, R2.interval
        return float(max(abs(a1 - a2), abs(b1 - b2)))
    return hausdorff_distance(R1.geometry(), R2.geometry())


def region_from_points(kind, param, dirs, points, **kw) -> RegionApprox:
    pts = np.asarray(points, float)
    try:
        poly = Polygon.hull(pts)
    except ValueError:
        poly = None
    return RegionApprox(kind=kind, param=param, dirs=dirs, polygon=poly,
                        points=_frozen(pts), **kw)


# -- body-level constructions -------------------------------------------

def santalo_point_body(K: Polygon, *, gtol: float = 1e-10, maxiter: int = 100) -> np.ndarray:
    """Minimizer of x -> Vol((K - x)°) by damped Newton.

    The gradient is 3·∫ over (K - x)° of y dy, evaluated exactly on the
    polar polygon; the Hessian is a central difference of that gradient.
    """
    x = np.array(K.centroid, dtype=float)
    h = 1e-6 * max(1.0, K.scale)
    val, g = _polar_area_grad(K, x)
    for _ in range(maxiter):
        if np.linalg.norm(g) <= gtol:
            return x
        H = np.empty((2, 2))
        for i in range(2):
            e = np.zeros(2)
            e[i] = h
            H[:, i] = (_polar_area_grad(K, x + e)[1] - _polar_area_grad(K, x - e)[1]) / (2 * h)
        H = 0.5 * (H + H.T)
        try:
            step = -np.linalg.solve(H, g)
            if step @ g >= 0:
                raise np.linalg.LinAlgError
        except np.linalg.LinAlgError:
            step = -g
        alpha = 1.0
        for _ in range(60):
            trial = x + alpha * step
            if K.interior_margin(trial) > 0:
                tval = polar_area(K, trial)
                if tval <= val + 1e-4 * alpha * (g @ step):
                    break
            alpha *= 0.5
        else:
            # line search stalls only at rounding level: accept the point
            if np.linalg.norm(g) <= 1e3 * gtol:
                return x
            raise NoConvergence("line search failed in santalo_point_body")
        x = trial
        val, g = _polar_area_grad(K, x)
    raise NoConvergence("santalo_point_body exceeded max iterations")


def product_body(K: Polygon, x) -> float:
    """Vol(K)·Vol(K^x) (+inf when x is not interior)."""
    return K.area * polar_area(K, x)


def _exit_radius(K: Polygon, x, u) -> float:
    dots = K.normals @ u
    slack = K.offsets - K.normals @ x
    pos = dots > 0
    return float(np.min(slack[pos] / dots[pos]))


def _bisect_ray(fun, r_hi, tol, r_lo=0.0):
    """Largest r in [r_lo, r_hi) with fun(r) true, assuming monotonicity."""
    while r_hi - r_lo > tol * max(1.0, r_hi):
        mid = 0.5 * (r_lo + r_hi)
        if fun(mid):
            r_lo = mid
        else:
            r_hi = mid
    return r_lo, r_hi - r_lo


def santalo_region_body(K: Polygon, t: float, rays: int = DEFAULT_DIRS, *,
                        tol: float = RADIUS_TOL) -> RegionApprox:
    """Inner polygonal approximation of {x : Vol(K)Vol(K^x) <= t·π²}."""
    if t <= 0 or rays < 16:
        raise ValueError("need t > 0 and rays >= 16")
    x0 = santalo_point_body(K)
    thr = t * math.pi ** 2 * (1.0 + 1e-12)
    if product_body(K, x0) > thr:
        return RegionApprox(kind="santalo", param=float(t), dirs=rays,
                            center=_frozen(x0))
    us = directions(rays)

    def trace(u):
        rmax = _exit_radius(K, x0, u)
        return _bisect_ray(lambda r: product_body(K, x0 + r * u) <= thr, rmax, tol)

    out = parallel_map(trace, us)
    radii = np.array([r for r, _ in out])
    return region_from_points("santalo", float(t), rays, x0 + radii[:, None] * us,
                              center=_frozen(x0), thetas=_frozen(us),
                              radii=_frozen(radii),
                              residuals=_frozen([w for _, w in out]))


def clipped_area(K: Polygon, theta, a) -> float:
    """Area of K ∩ {x : <x, theta> >= a}."""
    v = K.vertices
    s = v @ np.asarray(theta, float) - a
    inside = s >= 0
    if inside.all():
        return K.area
    if not inside.any():
        return 0.0
    m = len(v)
    k = int(np.flatnonzero(inside & ~np.roll(inside, 1))[0])
    order = np.roll(np.arange(m), -k)
    s_o, v_o = s[order], v[order]
    j = int(np.argmin(s_o >= 0))
    p_in = v_o[-1] + (v_o[0] - v_o[-1]) * (s_o[-1] / (s_o[-1] - s_o[0]))
    p_out = v_o[j - 1] + (v_o[j] - v_o[j - 1]) * (s_o[j - 1] / (s_o[j - 1] - s_o[j]))
    ring = np.vstack([p_in, v_o[:j], p_out])
    return max(0.0, _signed_area(ring))


def cut_offset(K: Polygon, theta, lam: float) -> tuple[float, float]:
    """Offset a with area(K ∩ {<x,θ> >= a}) = λ·area(K); returns (a, residual)."""
    theta = np.asarray(theta, float)
    proj = K.vertices @ theta
    lo, hi = float(proj.min()), float(proj.max())
    target = lam * K.area
    a = brentq(lambda c: clipped_area(K, theta, c) - target, lo, hi,
               xtol=1e-15 * max(1.0, K.scale), rtol=8.9e-16, maxiter=500)
    return a, abs(clipped_area(K, theta, a) - target) / K.area


def floating_body_body(K: Polygon, lam: float, dirs: int = DEFAULT_DIRS) -> RegionApprox:
    """Outer polygonal approximation of the convex floating body F(K, λ)."""
    if not 0 < lam < 0.5 or dirs < 16:
        raise ValueError("need 0 < lambda < 1/2 and dirs >= 16")
    thetas = directions(dirs)
    cuts = parallel_map(lambda th: cut_offset(K, th, lam), thetas)
    a = np.array([c for c, _ in cuts])
    res = np.array([r for _, r in cuts])
    poly = halfplane_intersection((thetas, a), interior=K.centroid)
    return RegionApprox(kind="floating", param=float(lam), dirs=dirs, polygon=poly,
                        thetas=_frozen(thetas), offsets=_frozen(a), residuals=_frozen(res))


@dataclass(frozen=True)
class SectionWitness:
    z: np.ndarray
    product: float
    fraction: float
    bound: float

    @property
    def holds(self) -> bool:
        return self.product <= self.bound * (1.0 + 1e-9)


def _golden_min(f, lo, hi, tol):
    inv = (math.sqrt(5.0) - 1.0) / 2.0
    c, d = hi - inv * (hi - lo), lo + inv * (hi - lo)
    fc, fd = f(c), f(d)
    while hi - lo > tol:
        if fc < fd:
            hi, d, fd = d, c, fc
            c = hi - inv * (hi - lo)
            fc = f(c)
        else:
            lo, c, fc = c, d, fd
            d = lo + inv * (hi - lo)
            fd = f(d)
    return (c, fc) if fc < fd else (d, fd)


def section_witness(K: Polygon, line: HalfSpace, grid: int = 33, *,
                    tol: float = 1e-10) -> SectionWitness:
    """Minimize Vol(K)Vol(K^z) over z on the chord of K cut by a line.

    `line` is the boundary {<x, θ> = a} of the given half-space. The
    fraction λ is the area share of K on the side {<x, θ> >= a}.
    """
    u = line.normal
    a = line.offset
    w = np.array([-u[1], u[0]])
    base = a * u
    dots = K.normals @ w
    rhs = K.offsets - K.normals @ base
    lo, hi = -math.inf, math.inf
    for d, r in zip(dots, rhs):
        if d > 1e-15:
            hi = min(hi, r / d)
        elif d < -1e-15:
            lo = max(lo, r / d)
        elif r <= 0:
            raise LineMissesBody("line misses the interior")
    if not hi - lo > 1e-12 * max(1.0, K.scale):
        raise LineMissesBody("line misses the interior")
    lam = clipped_area(K, u, a) / K.area
    lam_eff = min(lam, 1.0 - lam)
    bound = math.pi ** 2 / (4.0 * lam_eff * (1.0 - lam_eff))
    f = lambda tau: product_body(K, base + tau * w)
    taus = lo + (np.arange(grid) + 0.5) / grid * (hi - lo)
    vals = np.array([f(t) for t in taus])
    k = int(np.argmin(vals))
    tau, val = taus[k], vals[k]
    if grid >= 3:
        step = (hi - lo) / grid
        tau, val = _golden_min(f, max(lo, tau - step), min(hi, tau + step),
                               tol * max(1.0, K.scale))
        if vals[k] < val:
            tau, val = taus[k], vals[k]
    return SectionWitness(z=_frozen(base + tau * w), product=float(val),
                          fraction=float(lam), bound=float(bound))


# -- corpus -----------------------------------------------------------------

CORPUS_SEED = 0x5A17


def random_polygon(rng: np.random.Generator, *, symmetric: bool = True,
                   kmin: int = 4, kmax: int = 16) -> Polygon:
    """Hull of k uniform points in the unit disc, symmetrized if requested."""
    while True:
        k = int(rng.integers(kmin, kmax + 1))
        r = np.sqrt(rng.random(k))
        ang = 2.0 * np.pi * rng.random(k)
        pts = np.column_stack([r * np.cos(ang), r * np.sin(ang)])
        if symmetric:
            pts = np.vstack([pts, -pts])
        try:
            P = Polygon.hull(pts)
        except ValueError:
            continue
        if P.area > 1e-3:
            return P


def random_polygon_corpus(count: int, seed: int = CORPUS_SEED, *,
                          symmetric: bool = True) -> list[Polygon]:
    rng = np.random.default_rng(seed)
    return [random_polygon(rng, symmetric=symmetric) for _ in range(count)]


SQUARE = Polygon.box((-1.0, -1.0), (1.0, 1.0))
CROSS = Polygon([[1.0, 0.0], [0.0, 1.0], [-1.0, 0.0], [0.0, -1.0]])
HEXAGON = Polygon.regular(6)
