"""Lifting 1D s-concave functions to bodies K_s(g) ⊂ R^{1+s}.

K_s(g) = {(x, y) : √s·x ∈ supp g, |y| <= g^{1/s}(√s·x)}. For s = 1 it is a
planar polygon (so exact planar polarity applies); for s = 2 it is a solid
of revolution about the x-axis, kept as a radius profile.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.integrate import simpson

from ._parallel import parallel_map
from .convexfun import ls_transform
from .errors import CenterOutside, UnsupportedDimension
from .geom2d import (Polygon, ball_volume, cut_offset, hausdorff_distance, log_ball_volume,
                     polar_area, polar_body)
from .logconcave import LogConcaveFn, Translated, integrate, s_approx
from .regions import floating_body_fn

PROFILE_NODES = 1025


@dataclass(frozen=True)
class LiftedBody:
    """K_s(g) for n = 1: a Polygon (s = 1) or a revolution profile (s = 2)."""

    s: int
    g: LogConcaveFn
    x: np.ndarray
    radius: np.ndarray
    polygon: Polygon | None = None
    n: int = 1

    def volume(self) -> float:
        """Direct volume of the realization (polygon area, or π∫r² for s = 2)."""
        if self.s == 1:
            return self.polygon.area
        return float(math.pi * simpson(self.radius ** 2, x=self.x))

    def section_radius(self, x) -> np.ndarray:
        """Radius |y| of the section of K_s(g) at abscissa x (0 outside)."""
        return np.interp(x, self.x, self.radius, left=0.0, right=0.0)


def _support(g: LogConcaveFn):
    box = np.asarray(g.support_box(), float)
    if box.shape != (1, 2) or not np.all(np.isfinite(box)):
        raise ValueError("lift needs a 1D function with compact support")
    return float(box[0, 0]), float(box[0, 1])


def lift_body(g: LogConcaveFn, s: int = 1, *, nodes: int = PROFILE_NODES) -> LiftedBody:
    """Realize K_s(g) for a 1D s-concave g with compact support, s in {1, 2}."""
    if g.dim != 1 or s not in (1, 2):
        raise UnsupportedDimension("lifting is implemented for n = 1 and s in {1, 2}")
    lo, hi = _support(g)
    r = math.sqrt(s)
    u = np.linspace(lo, hi, nodes)
    vals = np.asarray(g(u), float)
    rad = np.maximum(vals, 0.0) ** (1.0 / s)
    x = u / r
    poly = None
    if s == 1:
        pts = np.concatenate([np.column_stack([x, rad]), np.column_stack([x, -rad])])
        poly = Polygon.hull(pts)
    return LiftedBody(s=s, g=g, x=x, radius=rad, polygon=poly)


def lifted_volume(g: LogConcaveFn, s: int, n: int = 1) -> float:
    """Vol(B^s)/s^{n/2} · ∫g."""
    return ball_volume(s) / s ** (n / 2.0) * integrate(g)


def translation_defect(g: LogConcaveFn, a: float, s: int = 1) -> float:
    """Max vertex distance between K_s(g_a) and K_s(g) + (a/√s, 0)."""
    base = lift_body(g, s)
    moved = lift_body(Translated(g, [a]), s)
    shift = a / math.sqrt(s)
    if s == 1:
        return hausdorff_distance(moved.polygon, base.polygon.translate([shift, 0.0]))
    probe = np.linspace(base.x[0], base.x[-1], 257)
    return float(np.max(np.abs(moved.section_radius(probe + shift) - base.section_radius(probe))))


@dataclass(frozen=True)
class PolarLiftReport:
    hausdorff: float
    body_product: float
    body_bound: float
    function_product: float
    function_bound: float


def sconcave_santalo_bound(n: int, s: int) -> float:
    """s^n Vol(B^{n+s})² / Vol(B^s)²."""
    return math.exp(n * math.log(s) + 2.0 * (log_ball_volume(n + s) - log_ball_volume(s)))


def verify_polar_lift(g: LogConcaveFn, s: int = 1) -> PolarLiftReport:
    """Compare polar_body(K_1(g), 0) with K_1(L_1 g) (n = 1, s = 1)."""
    if s != 1 or g.dim != 1:
        raise UnsupportedDimension("the polar lift check runs at n = 1, s = 1")
    K = lift_body(g, 1).polygon
    P = polar_body(K, np.zeros(2))
    Lg = ls_transform(g, 1)
    KL = lift_body(Lg, 1).polygon
    m_g, m_L = integrate(g), integrate(Lg)
    return PolarLiftReport(
        hausdorff=hausdorff_distance(P, KL),
        body_product=K.area * KL.area,
        body_bound=math.pi ** 2,
        function_product=m_g * m_L,
        function_bound=sconcave_santalo_bound(1, 1),
    )


@dataclass(frozen=True)
class ProjectionReport:
    lam: float
    function_interval: tuple
    body_interval: tuple

    @property
    def defect(self) -> float:
        return float(max(abs(a - b) for a, b in zip(self.function_interval, self.body_interval)))


def verify_projection_floating(f: LogConcaveFn, lam: float, s: int = 1) -> ProjectionReport:
    """F(f_s, λ) against √s times the horizontal cuts of F(K_s(f_s), λ) (n = 1, s = 1)."""
    if s != 1 or f.dim != 1:
        raise UnsupportedDimension("the projection check runs at n = 1, s = 1")
    fs = s_approx(f, s)
    F = floating_body_fn(fs, lam)
    K = lift_body(fs, s).polygon
    right, _ = cut_offset(K, np.array([1.0, 0.0]), lam)
    left, _ = cut_offset(K, np.array([-1.0, 0.0]), lam)
    r = math.sqrt(s)
    return ProjectionReport(float(lam), tuple(F.interval), (-r * left, r * right))


@dataclass(frozen=True)
class PsiReport:
    probes: np.ndarray
    symmetry_defect: float      # max |ψ(z) - ψ(-z)| / ψ(z)
    section_defect: float       # max (ψ(a,0) - ψ(a,b))_+ / ψ(a,b)
    min_at_origin: bool
    skipped: int


def psi_properties(K: Polygon, probes) -> PsiReport:
    """Check ψ(z) = ψ(-z) and ψ(a,0) <= ψ(a,b) for ψ(z) = Vol((K - z)°).

    K must be centrally symmetric and symmetric about the first axis.
    Probes outside int K are skipped and counted.
    """
    probes = np.asarray(probes, float).reshape(-1, 2)

    def one(z):
        try:
            p = polar_area(K, z)
            if math.isinf(p):
                raise CenterOutside("probe outside")
            return (p, polar_area(K, -z), polar_area(K, np.array([z[0], 0.0])))
        except CenterOutside:
            return None

    out = parallel_map(one, list(probes))
    kept = [o for o in out if o is not None]
    sym = max((abs(p - q) / p for p, q, _ in kept), default=0.0)
    sec = max((max(0.0, (r - p) / p) for p, _, r in kept), default=0.0)
    psi0 = polar_area(K, np.zeros(2))
    min0 = all(psi0 <= p * (1.0 + 1e-12) for p, _, _ in kept)
    return PsiReport(probes, float(sym), float(sec), bool(min0), len(out) - len(kept))


def random_biaxial_polygon(rng: np.random.Generator, k: int | None = None) -> Polygon:
    """Hull of random points in the unit disc reflected in both axes."""
    k = int(rng.integers(2, 7)) if k is None else k
    r = np.sqrt(rng.random(k))
    t = 0.5 * np.pi * rng.random(k)
    p = np.column_stack([r * np.cos(t), r * np.sin(t)])
    p = np.concatenate([p, p * [1, -1], p * [-1, 1], -p, [[0.05, 0.0], [0.0, 0.05]]])
    return Polygon.hull(np.concatenate([p, -p]))


def ball_ratio(n: int, s: int) -> float:
    """Vol(B^s)² / Vol(B^{s+n})² · (2π/s)^n, computed in log space."""
    if n < 1 or s < 1:
        raise ValueError("need n, s >= 1")
    return math.exp(2.0 * (log_ball_volume(s) - log_ball_volume(s + n))
                    + n * math.log(2.0 * math.pi / s))
