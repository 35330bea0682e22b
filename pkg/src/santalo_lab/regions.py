"""Floating bodies and Santaló regions of log-concave functions.

F(f, λ) is built as an outer half-plane discretization: for each
direction θ the cut height a(θ) with ∫_{<x,θ> >= a} f = λ∫f is found by
root finding on the half-plane mass. S(f, t) = {a : ∫f·G(a) <= (2π)^n t}
is built as an inner ray discretization from the minimizer of G. The
inclusion checker compares the two with an explicit discretization slack.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
from scipy.optimize import brentq

from ._parallel import parallel_map
from .errors import is_overflow
from .geom2d import (DEFAULT_DIRS, RADIUS_TOL, Polygon, RegionApprox, _bisect_ray, _frozen,
                     _polar_area_grad, directions, floating_body_body, halfplane_intersection,
                     polar_area, region_distance, region_from_points)
from .logconcave import (LogConcaveFn, dual_mass, grad_dual_mass, s_approx, santalo_point_fn,
                         truncate)

__all__ = ["RegionApprox", "cut_height", "floating_body_fn", "santalo_region_fn",
           "meyer_constant", "check_inclusion", "InclusionReport", "region_convergence",
           "ConvergenceTable", "normalized_product", "product_gradient", "ls_santalo_region_1d"]

MASS_RTOL = 1e-10
CHECK_TOL = 1e-6


def meyer_constant(lam: float) -> float:
    """1/(4λ(1-λ))."""
    if not 0 < lam < 0.5:
        raise ValueError("need 0 < lambda < 1/2")
    return 1.0 / (4.0 * lam * (1.0 - lam))


def _check_lambda(lam, dirs):
    if not 0 < lam < 0.5:
        raise ValueError("need 0 < lambda < 1/2")
    if dirs < 16:
        raise ValueError("need dirs >= 16")


# -- floating body -------------------------------------------------------

def _projected_range(f: LogConcaveFn, theta):
    box = np.asarray(f.box(), float)
    corners = np.array(np.meshgrid(*box, indexing="ij")).reshape(f.dim, -1).T
    p = corners @ theta
    return float(p.min()), float(p.max())


def cut_height(f: LogConcaveFn, theta, lam: float, *, with_residual: bool = False):
    """Offset a with ∫ over {<x,θ> >= a} of f equal to λ∫f.

    Root finding (Brent) on the half-plane mass between the projections
    of the effective support box; the relative mass residual is <= 1e-10.
    """
    theta = np.asarray(theta, dtype=float).reshape(f.dim)
    theta = theta / np.linalg.norm(theta)
    M = f.mass()
    target = lam * M
    lo, hi = _projected_range(f, theta)
    fun = lambda a: f.tail_mass(theta, a) - target
    while fun(lo) <= 0:
        lo -= (hi - lo)
    while fun(hi) >= 0:
        hi += (hi - lo)
    a = brentq(fun, lo, hi, xtol=1e-14 * max(1.0, abs(lo), abs(hi)), rtol=8.9e-16, maxiter=500)
    res = abs(fun(a)) / M
    if res > MASS_RTOL:
        # polish with bisection on the monotone tail (Brent may stop on xtol)
        a_lo, a_hi = a - 1e-9, a + 1e-9
        for _ in range(200):
            mid = 0.5 * (a_lo + a_hi)
            if fun(mid) > 0:
                a_lo = mid
            else:
                a_hi = mid
            if a_hi - a_lo <= 1e-16 * max(1.0, abs(mid)):
                break
        a = 0.5 * (a_lo + a_hi)
        res = abs(fun(a)) / M
    return (float(a), float(res)) if with_residual else float(a)


def floating_body_fn(f: LogConcaveFn, lam: float, dirs: int = DEFAULT_DIRS) -> RegionApprox:
    """Outer approximation of F(f, λ) from `dirs` cut half-planes (an interval in 1D)."""
    _check_lambda(lam, dirs)
    if f.dim == 1:
        right, r1 = cut_height(f, [1.0], lam, with_residual=True)
        left, r2 = cut_height(f, [-1.0], lam, with_residual=True)
        interval = (-left, right) if -left < right else None
        return RegionApprox(kind="floating", param=float(lam), dirs=2, dim=1, interval=interval,
                            thetas=_frozen([[1.0], [-1.0]]), offsets=_frozen([right, left]),
                            residuals=_frozen([r1, r2]))
    thetas = directions(dirs)
    cuts = parallel_map(lambda th: cut_height(f, th, lam, with_residual=True), thetas)
    a = np.array([c for c, _ in cuts])
    res = np.array([r for _, r in cuts])
    poly = halfplane_intersection((thetas, a), interior=np.zeros(2) if f.even else None)
    return RegionApprox(kind="floating", param=float(lam), dirs=dirs, polygon=poly,
                        thetas=_frozen(thetas), offsets=_frozen(a), residuals=_frozen(res))


# -- Santaló region --------------------------------------------------------

def normalized_product(f, a) -> float:
    """∫f·G(a)/(2π)^n for functions, Vol(K)Vol(K^a)/π² for polygons (inf outside)."""
    if isinstance(f, Polygon):
        return f.area * polar_area(f, np.asarray(a, float)) / math.pi ** 2
    G = dual_mass(f, a)
    if is_overflow(G):
        return math.inf
    return f.mass() * G / (2.0 * math.pi) ** f.dim


def product_gradient(f, a) -> np.ndarray:
    """Gradient of the normalized product at a."""
    a = np.asarray(a, float)
    if isinstance(f, Polygon):
        return f.area * _polar_area_grad(f, a)[1] / math.pi ** 2
    return f.mass() * grad_dual_mass(f, a) / (2.0 * math.pi) ** f.dim


def _exit_radius_fn(inside, r0=0.05, limit=1e6):
    r = r0
    while inside(r):
        r *= 2.0
        if r > limit:
            raise ValueError("Santaló region appears unbounded")
    return r


def santalo_region_fn(f: LogConcaveFn, t: float, rays: int = DEFAULT_DIRS, *,
                      tol: float = RADIUS_TOL) -> RegionApprox:
    """Inner approximation of S(f, t) = {a : ∫f·G(a) <= (2π)^n t}.

    Rays start at the minimizer x0 of G; along each ray the product is
    nondecreasing, so the crossing radius is found by doubling then
    bisection to `tol`. An empty region is returned (not raised) when
    the minimum product already exceeds the threshold.
    """
    if t <= 0:
        raise ValueError("need t > 0")
    if f.dim == 2 and rays < 16:
        raise ValueError("need rays >= 16")
    x0 = santalo_point_fn(f)
    thr = t * (2.0 * math.pi) ** f.dim / f.mass() * (1.0 + 1e-12)
    G0 = dual_mass(f, x0)
    n_rays = 2 if f.dim == 1 else rays
    if is_overflow(G0) or G0 > thr:
        return RegionApprox(kind="santalo", param=float(t), dirs=n_rays, dim=f.dim,
                            center=_frozen(x0), meta={"min_product": normalized_product(f, x0)})
    us = np.array([[1.0], [-1.0]]) if f.dim == 1 else directions(rays)

    def inside(u):
        def ok(r):
            G = dual_mass(f, x0 + r * u)
            return not is_overflow(G) and G <= thr
        return ok

    def trace(u):
        ok = inside(u)
        r_hi = _exit_radius_fn(ok)
        return _bisect_ray(ok, r_hi, tol)

    out = parallel_map(trace, us)
    radii = np.array([r for r, _ in out])
    meta = {"min_product": normalized_product(f, x0)}
    if f.dim == 1:
        interval = (float(x0[0] - radii[1]), float(x0[0] + radii[0]))
        return RegionApprox(kind="santalo", param=float(t), dirs=2, dim=1, interval=interval,
                            center=_frozen(x0), thetas=_frozen(us), radii=_frozen(radii),
                            residuals=_frozen([w for _, w in out]), meta=meta)
    return region_from_points("santalo", float(t), rays, x0 + radii[:, None] * us,
                              center=_frozen(x0), thetas=_frozen(us), radii=_frozen(radii),
                              residuals=_frozen([w for _, w in out]), meta=meta)


# -- inclusion ------------------------------------------------------------

@dataclass(frozen=True)
class InclusionReport:
    """Per-vertex evaluation of the outer region's defining functional."""

    inner_kind: str
    inner_param: float
    outer_kind: str
    outer_param: float
    points: np.ndarray
    values: np.ndarray
    slacks: np.ndarray
    violations: np.ndarray
    tolerance: float
    meta: dict = field(default_factory=dict)

    @property
    def max_violation(self) -> float:
        return float(self.violations.max()) if len(self.violations) else 0.0

    @property
    def holds(self) -> bool:
        return self.max_violation <= self.tolerance

    def rows(self):
        for k, (v, s, w) in enumerate(zip(self.values, self.slacks, self.violations)):
            yield {"vertex": k, "value": float(v), "slack": float(s), "violation": float(w)}


def _vertex_gaps(points: np.ndarray) -> np.ndarray:
    """Distance of each vertex to the chord joining its two neighbours."""
    p = np.asarray(points, float)
    if p.shape[1] == 1 or len(p) < 3:
        return np.zeros(len(p))
    a, b = np.roll(p, 1, axis=0), np.roll(p, -1, axis=0)
    ab = b - a
    L2 = np.maximum(np.sum(ab * ab, axis=1), 1e-300)
    t = np.clip(np.sum((p - a) * ab, axis=1) / L2, 0.0, 1.0)
    return np.linalg.norm(p - (a + t[:, None] * ab), axis=1)


def check_inclusion(inner: RegionApprox, f, param: float, *, outer: str = "santalo",
                    tol: float = CHECK_TOL, dirs: int | None = None) -> InclusionReport:
    """Test inner ⊆ outer vertex by vertex.

    outer="santalo": value = normalized product at v, compared with d = param.
    When the inner region is a floating body (an outer approximation of the
    true one, whose true boundary touches every cut line), each vertex is
    within `gap` of the true region, gap = distance to the chord between
    its neighbours, so the product may exceed d by |∇P(v)|·gap; that slack
    is subtracted before the violation is taken.

    outer="floating": value = max over the outer cut directions of
    <v,θ> - a(θ); positive offsets are converted into the mass defect
    λ - (mass of the half-plane through v)/∫f in the worst direction.

    `f` may be a LogConcaveFn or a Polygon (body normalization π²).
    """
    if inner.is_empty:
        raise ValueError("inner region is empty")
    pts = inner.boundary_points()
    if inner.kind == "floating" and inner.polygon is not None:
        gaps = _vertex_gaps(pts)
    elif inner.residuals is not None and len(inner.residuals) == len(pts):
        gaps = np.asarray(inner.residuals, float)
    else:
        gaps = np.zeros(len(pts))
    if outer == "santalo":
        vals = np.array(parallel_map(lambda v: normalized_product(f, v), list(pts)))
        grads = parallel_map(lambda v: product_gradient(f, v) if math.isfinite(
            normalized_product(f, v)) else np.full(len(v), np.inf), list(pts))
        slacks = np.array([float(np.linalg.norm(g)) for g in grads]) * gaps
        slacks = np.where(np.isfinite(slacks), slacks, 0.0)
        viol = np.maximum(0.0, vals - param - slacks)
        viol = np.where(np.isfinite(vals), viol, math.inf)
    elif outer == "floating":
        if isinstance(f, Polygon):
            ref = floating_body_body(f, param, dirs or DEFAULT_DIRS)
            mass = lambda th, h: _clip(f, th, h) / f.area
        else:
            ref = floating_body_fn(f, param, dirs or (DEFAULT_DIRS if f.dim == 2 else 2))
            M = f.mass()
            mass = lambda th, h: f.tail_mass(th, h) / M
        th, off = np.asarray(ref.thetas), np.asarray(ref.offsets)
        excess = pts @ th.T - off[None, :]
        vals = excess.max(axis=1)
        worst = excess.argmax(axis=1)
        slacks = np.zeros(len(pts))
        viol = np.array([max(0.0, param - mass(th[k], float(p @ th[k]))) if e > 0 else 0.0
                         for p, k, e in zip(pts, worst, vals)])
    else:
        raise ValueError("outer must be 'santalo' or 'floating'")
    return InclusionReport(inner.kind, float(inner.param), outer, float(param),
                           _frozen(pts), _frozen(vals), _frozen(slacks), _frozen(viol),
                           float(tol))


def _clip(K, theta, h):
    from .geom2d import clipped_area
    return clipped_area(K, theta, h)


# -- convergence ----------------------------------------------------------

@dataclass(frozen=True)
class ConvergenceTable:
    kind: str
    param: float
    schedule: tuple
    distances: tuple
    threshold: float
    slack: float = 0.10
    floor: float = 1e-8

    @property
    def monotone(self) -> bool:
        d = self.distances
        return all(b <= a * (1.0 + self.slack) + self.floor for a, b in zip(d[:-1], d[1:]))

    @property
    def final(self) -> float:
        return self.distances[-1]

    @property
    def holds(self) -> bool:
        return self.monotone and self.final <= self.threshold


def ls_santalo_region_1d(f: LogConcaveFn, d: float, s: float, *, nodes: int = 2049,
                         tol: float = 1e-6) -> RegionApprox:
    """{a : ∫f_s · ∫L_s((f_s)_a) <= 2π d} for an even 1D f with compact support.

    F_s(a) = ∫ L_s((f_s)_a) is evaluated by maximizing -log of the L_s
    integrand over a y-grid of the shifted support and integrating over x
    on a Gauss-Legendre rule; the region is the interval [-r, r] with r
    found by bisection (F_s is even and convex in a).
    """
    from .quadrature import gl_panels
    if f.dim != 1 or not f.even:
        raise ValueError("needs an even 1D function")
    fs = s_approx(f, s)
    R = float(np.asarray(fs.support_box())[0, 1])
    ys = np.linspace(-R, R, nodes)
    psi = np.asarray(fs.potential(ys), float)
    keep = np.isfinite(psi)
    ys, psi = ys[keep], psi[keep]
    mass_s = fs.mass()

    def F(a):
        y = ys + a
        lo, hi = s / y.min(), s / y.max()
        x, w = gl_panels(lo, hi, breaks=(0.0,), panels=256, order=16)
        t = np.outer(x, y) / s
        with np.errstate(invalid="ignore", divide="ignore"):
            val = np.where(t < 1.0, -s * np.log1p(-np.minimum(t, 1.0 - 1e-300)), np.inf) - psi
        L = np.max(val, axis=1)
        return float(np.sum(w * np.exp(-L)))

    thr = 2.0 * math.pi * d / mass_s
    if F(0.0) > thr:
        return RegionApprox(kind="santalo-ls", param=float(d), dirs=2, dim=1,
                            meta={"s": s})
    r, _ = _bisect_ray(lambda r: F(r) <= thr, R * (1.0 - 1e-9), tol)
    return RegionApprox(kind="santalo-ls", param=float(d), dirs=2, dim=1, interval=(-r, r),
                        center=_frozen([0.0]), meta={"s": s})


def region_convergence(f: LogConcaveFn, param: float, kind: str, schedule, *,
                       dirs: int = DEFAULT_DIRS, threshold: float = 1e-2) -> ConvergenceTable:
    """Hausdorff distances from stage regions to the limit region.

    kind: "truncation-floating" (F(f_[t], λ)), "truncation-santalo"
    (S(f_[t], d)), "sconcave-floating" (F(f_s, λ)) or "ls-santalo"
    (the L_s Santaló interval of f_s in 1D, against S(f, d)).
    """
    schedule = tuple(schedule)
    if not schedule:
        raise ValueError("empty schedule")
    if kind == "truncation-floating":
        limit = floating_body_fn(f, param, dirs)
        stage = lambda t: floating_body_fn(truncate(f, t), param, dirs)
    elif kind == "truncation-santalo":
        limit = santalo_region_fn(f, param, dirs)
        stage = lambda t: santalo_region_fn(truncate(f, t), param, dirs)
    elif kind == "sconcave-floating":
        limit = floating_body_fn(f, param, dirs)
        stage = lambda s: floating_body_fn(s_approx(f, s), param, dirs)
    elif kind == "ls-santalo":
        limit = santalo_region_fn(f, param, dirs)
        stage = lambda s: ls_santalo_region_1d(f, param, s)
    else:
        raise ValueError(f"unknown convergence kind {kind!r}")
    dists = []
    for p in schedule:
        R = stage(p)
        dists.append(math.inf if R.is_empty or limit.is_empty else region_distance(R, limit))
    return ConvergenceTable(kind, float(param), schedule, tuple(float(x) for x in dists),
                            float(threshold))
