"""Log-concave functions f = e^{-φ}.

Each kernel knows its potential φ, its Legendre conjugate Lφ (so that the
polar f° = e^{-Lφ} is again a kernel), and how to integrate itself:
total mass, tilted mass ∫ e^{-<b,x>} f, tilted first moment, and the mass
of a half-plane {<x,θ> >= h}. Closed forms are used where they exist;
everything else falls back to tensor Simpson quadrature over an effective
support box where f >= 1e-12·max f.
"""

from __future__ import annotations

import math

import numpy as np
from scipy.special import erfc, i0e, i1e

from .convexfun import INF, GridFn, conjugate_1d, dual_box_for, is_inf, legendre
from .errors import (OVERFLOW, CenterOutside, EmptyLevel, InputError, NoConvergence,
                     NotIntegrable, is_overflow)
from .geom2d import HEXAGON, SQUARE, Polygon, _polar_area_grad, clipped_area, directions, polar_area
from .quadrature import gl_panels, polygon_rule, simpson_nd

CUT = 12.0 * math.log(10.0)   # f >= 1e-12 max f
DECAY = 1e-6                  # boundary/peak ratio above which a box is "not decaying"
SIMPSON_NODES = 257


def _points(x, dim):
    x = np.asarray(x, dtype=float)
    if dim == 1 and (x.ndim == 0 or x.shape[-1] != 1):
        x = x[..., None]
    return x


def _vec(b, dim):
    return np.asarray(b, dtype=float).reshape(dim)


def _exp_neg(phi):
    phi = np.asarray(phi, dtype=float)
    return np.where(is_inf(phi), 0.0, np.exp(-np.clip(phi, -700.0, 745.0)))


def _clean_inf(values):
    v = np.asarray(values, dtype=float)
    return np.where(is_inf(v) | np.isnan(v), np.inf, v)


class LogConcaveFn:
    """Base class for log-concave densities on R^1 or R^2.

    Subclasses override ``potential`` and ``conjugate`` and, where
    possible, the integration hooks with closed forms. The generic hooks
    use Simpson quadrature on ``box()``.
    """

    dim = 2
    even = False
    kind = "generic"

    # -- evaluation -----------------------------------------------------
    def potential(self, x):
        raise NotImplementedError

    def conjugate(self, y):
        """Lφ(y); generic fallback maximizes over a sampled grid of φ."""
        y = _points(y, self.dim)
        if self.dim == 2:
            return self.polar().potential(y)
        grid = self._sampled_grid()
        return conjugate_1d(grid.axes()[0], grid.values, y[..., 0])

    def __call__(self, x):
        return _exp_neg(self.potential(x))

    def _sampled_grid(self):
        g = self.__dict__.get("_grid_cache")
        if g is None:
            box = np.asarray(self.box(), float)
            g = GridFn.sample(self.potential, box, 4097 if self.dim == 1 else 257)
            self.__dict__["_grid_cache"] = g
        return g

    # -- geometry -------------------------------------------------------
    def box(self) -> np.ndarray:
        """Axis box containing {f >= 1e-12 max f} (shape (n, 2))."""
        b = self.__dict__.get("_box_cache")
        if b is None:
            b = scan_box(self.potential, self.dim)
            self.__dict__["_box_cache"] = b
        return b

    def support_box(self) -> np.ndarray:
        """Axis box containing {f > 0} (entries may be infinite)."""
        return self.box()

    # -- integrals ------------------------------------------------------
    def mass(self) -> float:
        m = self.__dict__.get("_mass_cache")
        if m is None:
            m = float(self.tilted_mass(np.zeros(self.dim)))
            self.__dict__["_mass_cache"] = m
        return m

    def tilted_mass(self, b) -> float:
        """∫ e^{-<b,x>} f(x) dx."""
        return simpson_integrals(self, _vec(b, self.dim))[0]

    def tilted_moment(self, b) -> np.ndarray:
        """∫ x e^{-<b,x>} f(x) dx."""
        return simpson_integrals(self, _vec(b, self.dim), moment=True)[1]

    def tail_mass(self, theta, h) -> float:
        """∫ over {<x,θ> >= h} of f."""
        return simpson_tail(self, _vec(theta, self.dim), float(h))

    # -- duality --------------------------------------------------------
    def polar(self) -> "LogConcaveFn":
        p = self.__dict__.get("_polar_cache")
        if p is None:
            p = self._make_polar()
            self.__dict__["_polar_cache"] = p
        return p

    def _make_polar(self):
        if self.dim == 2:
            return GridBacked(_decaying_legendre(self._sampled_grid()), even=self.even)
        return PolarFn(self)

    def __repr__(self):
        return f"{type(self).__name__}(dim={self.dim}, even={self.even})"


def _decaying_legendre(grid: GridFn) -> GridFn:
    """Legendre transform on a dual box grown until e^{-Lφ} has decayed at its edges."""
    box = dual_box_for(grid)
    for _ in range(8):
        dual = legendre(grid, dual_box=box)
        v = dual.values
        fin = ~is_inf(v)
        edge = np.concatenate([v[0], v[-1], v[:, 0], v[:, -1]])
        if np.min(edge) >= v[fin].min() + CUT:
            return dual
        c = box.mean(axis=1)
        half = box[:, 1] - box[:, 0]
        box = np.column_stack([c - half, c + half])
    raise NotIntegrable("polar density does not decay on the dual grid")


# -- generic quadrature -------------------------------------------------

def scan_box(potential, dim, span=8.0, rays=32):
    """Bounding box of {φ <= min φ + CUT} found by ray scans from a coarse minimizer."""
    for _ in range(12):
        axes = [np.linspace(-span, span, 65)] * dim
        pts = np.stack(np.meshgrid(*axes, indexing="ij"), axis=-1)
        vals = _clean_inf(potential(pts))
        if np.isfinite(vals).any():
            break
        span *= 0.25
    else:
        raise NotIntegrable("potential is infinite on every probe")
    k = np.unravel_index(int(np.argmin(vals)), vals.shape)
    x0 = pts[k]
    level = vals[k] + CUT + 3.0
    us = np.array([[1.0], [-1.0]]) if dim == 1 else directions(rays)
    ends = []
    for u in us:
        r = 1e-3 * span
        f = lambda rr: _clean_inf(potential(x0 + rr * u)) > level
        n = 0
        while not f(r):
            r *= 2.0
            n += 1
            if n > 60:
                raise NotIntegrable("density does not decay within the scan window")
        lo = 0.0
        for _ in range(40):
            mid = 0.5 * (lo + r)
            if f(mid):
                r = mid
            else:
                lo = mid
        ends.append(x0 + r * u)
    ends = np.array(ends)
    lo, hi = ends.min(axis=0), ends.max(axis=0)
    pad = 0.05 * (hi - lo) + 1e-9
    return np.column_stack([lo - pad, hi + pad])


def _grid_points(box, n):
    axes = [np.linspace(lo, hi, n) for lo, hi in box]
    return axes, np.stack(np.meshgrid(*axes, indexing="ij"), axis=-1)


def _edge_ratio(integrand):
    m = integrand.max()
    if m <= 0:
        return 0.0
    if integrand.ndim == 1:
        edge = max(integrand[0], integrand[-1])
    else:
        edge = max(integrand[0].max(), integrand[-1].max(), integrand[:, 0].max(),
                   integrand[:, -1].max())
    return edge / m


def _simpson_on_box(potential, b, box, n, moment):
    axes, pts = _grid_points(box, n)
    logint = -(_clean_inf(potential(pts)) + pts @ b)
    fin = np.isfinite(logint)
    if not fin.any():
        return 0.0, np.zeros(len(b)), 0.0, 0.0, np.zeros(len(b))
    top = logint[fin].max()
    w = np.where(fin, np.exp(np.where(fin, logint - top, 0.0)), 0.0)
    h = [(hi - lo) / (n - 1) for lo, hi in box]
    sl = tuple([slice(None, None, 2)] * len(b))
    h2 = [2.0 * x for x in h]
    scale = math.exp(top) if top < 709 else math.inf
    val = simpson_nd(w, h) * scale
    coarse = simpson_nd(w[sl], h2) * scale
    mom = cmom = np.zeros(len(b))
    if moment:
        mom = np.array([simpson_nd(w * pts[..., k], h) for k in range(len(b))]) * scale
        cmom = np.array([simpson_nd((w * pts[..., k])[sl], h2) for k in range(len(b))]) * scale
    return val, mom, _edge_ratio(w), coarse, cmom


def simpson_integrals(f, b, moment=False, n=SIMPSON_NODES, potential=None, box=None,
                      expand=True):
    """Tilted mass and (optionally) moment by Richardson-extrapolated Simpson.

    The box is doubled (up to 5 times) while the integrand has not decayed
    at the box boundary; failure raises NotIntegrable.
    """
    potential = f.potential if potential is None else potential
    box = np.array(f.box() if box is None else box, dtype=float)
    for _ in range(6):
        val, mom, edge, coarse, cmom = _simpson_on_box(potential, b, box, n, moment)
        if edge <= DECAY or not expand:
            break
        c = box.mean(axis=1)
        half = box[:, 1] - box[:, 0]
        box = np.column_stack([c - half, c + half])
    else:
        raise NotIntegrable("integrand does not decay")
    val_r = val + (val - coarse) / 15.0
    mom_r = mom + (mom - cmom) / 15.0
    return float(val_r), mom_r, abs(val - coarse) / 15.0


def simpson_tail(f, theta, h, n=SIMPSON_NODES):
    box = np.asarray(f.box(), float)
    nrm = float(np.linalg.norm(theta))
    theta, h = theta / nrm, h / nrm
    if f.dim == 1:
        lo, hi = box[0]
        if theta[0] > 0:
            a, b = max(h, lo), hi
        else:
            a, b = lo, min(-h, hi)
        if b <= a:
            return 0.0
        val, _, _ = simpson_integrals(f, np.zeros(1), box=[[a, b]], n=n, expand=False)
        return val
    corners = np.array([[x, y] for x in box[0] for y in box[1]])
    perp = np.array([-theta[1], theta[0]])
    u, v = corners @ theta, corners @ perp
    ulo, uhi = max(h, u.min()), u.max()
    if uhi <= ulo:
        return 0.0
    rot = lambda p: f.potential(p[..., :1] * theta + p[..., 1:] * perp)
    val, _, _ = simpson_integrals(f, np.zeros(2), potential=rot,
                                  box=[[ulo, uhi], [v.min(), v.max()]], n=n, expand=False)
    return val


def quadrature_mass(f, n=SIMPSON_NODES):
    """(mass, error estimate) by Simpson quadrature regardless of kernel."""
    val, _, err = simpson_integrals(f, np.zeros(f.dim), n=n, potential=f.potential,
                                    box=f.box())
    return val, err


def integrate(f: LogConcaveFn, method: str = "auto") -> float:
    """∫ f. ``method="simpson"`` forces tensor Simpson on the effective box."""
    if method == "simpson":
        return quadrature_mass(f)[0]
    return f.mass()


def monte_carlo_mass(f: LogConcaveFn, samples=200_000, seed=0):
    """Low-precision Monte Carlo estimate (mass, standard error) over f.box()."""
    rng = np.random.default_rng(seed)
    box = np.asarray(f.box(), float)
    pts = box[:, 0] + rng.random((samples, f.dim)) * (box[:, 1] - box[:, 0])
    vol = float(np.prod(box[:, 1] - box[:, 0]))
    vals = f(pts) * vol
    return float(vals.mean()), float(vals.std() / math.sqrt(samples))


# -- Gaussian -------------------------------------------------------------

class Gaussian(LogConcaveFn):
    """e^{-(x-c)^T A (x-c)/2 - k} for positive definite A."""

    kind = "gaussian"

    def __init__(self, matrix=None, center=None, offset=0.0, dim=2):
        A = np.eye(dim) if matrix is None else np.array(matrix, dtype=float)
        A = np.atleast_2d(A)
        self.dim = A.shape[0]
        self.A = 0.5 * (A + A.T)
        self.Ainv = np.linalg.inv(self.A)
        self.c = np.zeros(self.dim) if center is None else _vec(center, self.dim)
        self.k = float(offset)
        if np.any(np.linalg.eigvalsh(self.A) <= 0):
            raise ValueError("Gaussian matrix must be positive definite")
        self.even = bool(np.allclose(self.c, 0.0, atol=1e-15))

    @property
    def is_standard(self):
        return self.even and self.k == 0.0 and np.allclose(self.A, np.eye(self.dim), atol=1e-15)

    def potential(self, x):
        d = _points(x, self.dim) - self.c
        return 0.5 * np.einsum("...i,ij,...j->...", d, self.A, d) + self.k

    def conjugate(self, y):
        y = _points(y, self.dim)
        return 0.5 * np.einsum("...i,ij,...j->...", y, self.Ainv, y) + y @ self.c - self.k

    def _make_polar(self):
        return Gaussian(self.Ainv, -self.A @ self.c, -0.5 * self.c @ self.A @ self.c - self.k)

    def mass(self):
        return math.exp(-self.k) * (2 * math.pi) ** (self.dim / 2) / math.sqrt(np.linalg.det(self.A))

    def tilted_mass(self, b):
        b = _vec(b, self.dim)
        return self.mass() * math.exp(-b @ self.c + 0.5 * b @ self.Ainv @ b)

    def tilted_moment(self, b):
        b = _vec(b, self.dim)
        return self.tilted_mass(b) * (self.c - self.Ainv @ b)

    def tail_mass(self, theta, h):
        theta = _vec(theta, self.dim)
        sigma = math.sqrt(theta @ self.Ainv @ theta)
        return self.mass() * 0.5 * float(erfc((h - theta @ self.c) / (sigma * math.sqrt(2))))

    def box(self):
        half = np.sqrt(2.0 * (CUT + 3.0) * np.diag(self.Ainv))
        return np.column_stack([self.c - half, self.c + half])


# -- indicator and support-function exponential ----------------------------

def _as_body(body):
    if isinstance(body, Polygon):
        return body, 2
    lo, hi = (float(v) for v in np.asarray(body, float).ravel())
    if not hi > lo:
        raise ValueError("interval must have positive length")
    return (lo, hi), 1


def _gl_order(scale):
    return int(min(128, 16 + math.ceil(1.5 * scale)))


class Indicator(LogConcaveFn):
    """1_K for a convex polygon K (2D) or an interval (1D)."""

    kind = "indicator"

    def __init__(self, body):
        self.body, self.dim = _as_body(body)
        if self.dim == 2:
            K = self.body
            self.even = bool(np.all(K.contains(-K.vertices, tol=1e-12)))
        else:
            lo, hi = self.body
            self.even = abs(lo + hi) <= 1e-15 * max(1.0, abs(lo))

    def potential(self, x):
        x = _points(x, self.dim)
        if self.dim == 2:
            inside = self.body.contains(x)
        else:
            lo, hi = self.body
            tol = 1e-12 * max(1.0, abs(lo), abs(hi))
            inside = (x[..., 0] >= lo - tol) & (x[..., 0] <= hi + tol)
        return np.where(inside, 0.0, np.inf)

    def conjugate(self, y):
        y = _points(y, self.dim)
        if self.dim == 2:
            return np.max(y @ self.body.vertices.T, axis=-1)
        lo, hi = self.body
        return np.maximum(lo * y[..., 0], hi * y[..., 0])

    def _make_polar(self):
        return SupportExp(self.body)

    def mass(self):
        if self.dim == 2:
            return self.body.area
        return self.body[1] - self.body[0]

    def _rule(self, b):
        if self.dim == 2:
            K = self.body
            diam = 2.0 * float(np.max(np.linalg.norm(K.vertices - K.centroid, axis=1)))
            return polygon_rule(K.vertices, _gl_order(np.linalg.norm(b) * diam))
        lo, hi = self.body
        x, w = gl_panels(lo, hi, panels=1, order=_gl_order(abs(b[0]) * (hi - lo)))
        return x[:, None], w

    def tilted_mass(self, b):
        b = _vec(b, self.dim)
        x, w = self._rule(b)
        return float(np.sum(w * np.exp(-(x @ b))))

    def tilted_moment(self, b):
        b = _vec(b, self.dim)
        x, w = self._rule(b)
        return (w * np.exp(-(x @ b))) @ x

    def tail_mass(self, theta, h):
        theta = _vec(theta, self.dim)
        if self.dim == 2:
            n = float(np.linalg.norm(theta))
            return clipped_area(self.body, theta / n, h / n)
        lo, hi = self.body
        if theta[0] > 0:
            return max(0.0, hi - max(lo, h / theta[0]))
        return max(0.0, min(hi, h / theta[0]) - lo)

    def box(self):
        if self.dim == 2:
            v = self.body.vertices
            return np.column_stack([v.min(axis=0), v.max(axis=0)])
        return np.array([list(self.body)])

    def support_box(self):
        return self.box()


class SupportExp(LogConcaveFn):
    """e^{-h_K} for a convex polygon or interval K; the polar of 1_K.

    Finite mass needs 0 in the interior of K; tilted integrals are finite
    exactly when -b is interior to K and are reported as OVERFLOW otherwise.
    """

    kind = "supportexp"

    def __init__(self, body):
        self.body, self.dim = _as_body(body)
        if self.dim == 2:
            K = self.body
            self.even = bool(np.all(K.contains(-K.vertices, tol=1e-12)))
            self._angles = np.sort(np.arctan2(K.normals[:, 1], K.normals[:, 0]))
        else:
            lo, hi = self.body
            self.even = abs(lo + hi) <= 1e-15 * max(1.0, abs(lo))

    def potential(self, x):
        return Indicator.conjugate(self, x)

    def conjugate(self, y):
        return Indicator.potential(self, y)

    def _make_polar(self):
        return Indicator(self.body)

    def tilted_mass(self, b):
        b = _vec(b, self.dim)
        if self.dim == 2:
            a = polar_area(self.body, -b)
            return OVERFLOW if math.isinf(a) else 2.0 * a
        lo, hi = self.body[0] + b[0], self.body[1] + b[0]
        if not (lo < 0 < hi):
            return OVERFLOW
        return 1.0 / hi - 1.0 / lo

    def tilted_moment(self, b):
        b = _vec(b, self.dim)
        if self.dim == 2:
            try:
                _, grad = _polar_area_grad(self.body, -b)
            except CenterOutside:
                return np.full(2, np.inf)
            return 2.0 * grad
        lo, hi = self.body[0] + b[0], self.body[1] + b[0]
        if not (lo < 0 < hi):
            return np.full(1, np.inf)
        return np.array([1.0 / hi ** 2 - 1.0 / lo ** 2])

    def _tail_pos(self, theta, h):
        # h >= 0: integrate e^{-rho}(rho + 1)/h_K(u)^2 over directions u with <u,θ> > 0
        a0 = math.atan2(theta[1], theta[0])
        rel = np.mod(self._angles - a0 + np.pi, 2 * np.pi) - np.pi
        breaks = np.sort(rel[np.abs(rel) < 0.5 * np.pi])
        edges = np.concatenate([[-0.5 * np.pi], breaks, [0.5 * np.pi]])
        pieces = np.unique(np.concatenate([np.linspace(lo, hi, 5) for lo, hi in
                                           zip(edges[:-1], edges[1:]) if hi > lo]))
        total = 0.0
        from .quadrature import _leggauss
        xg, wg = _leggauss(48)
        for lo, hi in zip(pieces[:-1], pieces[1:]):
            beta = 0.5 * (hi + lo) + 0.5 * (hi - lo) * xg
            u = np.column_stack([np.cos(a0 + beta), np.sin(a0 + beta)])
            H = np.max(u @ self.body.vertices.T, axis=1)
            cosb = np.cos(beta)
            with np.errstate(divide="ignore", over="ignore", invalid="ignore"):
                rho = h * H / cosb
                val = np.where(cosb > 0, np.exp(-rho) * (rho + 1.0) / H ** 2, 0.0)
            total += 0.5 * (hi - lo) * float(np.sum(wg * np.nan_to_num(val)))
        return total

    def tail_mass(self, theta, h):
        theta = _vec(theta, self.dim)
        nrm = float(np.linalg.norm(theta))
        theta, h = theta / nrm, h / nrm
        if self.dim == 1:
            lo, hi = self.body
            if theta[0] < 0:
                lo, hi, h = -hi, -lo, h
            # density e^{-hi x} for x > 0 and e^{-lo x} for x < 0
            if h >= 0:
                return math.exp(-hi * h) / hi
            return 1.0 / hi + (math.expm1(-lo * h)) / lo
        if h >= 0:
            return self._tail_pos(theta, h)
        return self.mass() - self._tail_pos(-theta, -h)

    def box(self):
        c = CUT + 3.0
        if self.dim == 1:
            lo, hi = self.body
            return np.array([[c / lo, c / hi]])
        P = Polygon(self.body.normals / self.body.offsets[:, None])
        v = c * P.vertices
        return np.column_stack([v.min(axis=0), v.max(axis=0)])

    def support_box(self):
        return np.full((self.dim, 2), [-np.inf, np.inf])


def expnorm(p=1, dim=2):
    """e^{-||x||_p} for p in {1, 2, inf}."""
    if dim == 1:
        return SupportExp((-1.0, 1.0))
    if p in (1, "1"):
        return SupportExp(SQUARE)
    if p in (math.inf, "inf", "infinity"):
        return SupportExp(Polygon([[1, 0], [0, 1], [-1, 0], [0, -1]]))
    if p in (2, "2"):
        return RadialFn(lambda r: r, lambda q: np.where(q <= 1.0, 0.0, np.inf), dim=dim,
                        conj_radius=1.0, kind="expnorm")
    raise ValueError(f"unsupported p = {p!r}")


# -- radial kernels -----------------------------------------------------

def _gauss_family_profile(s, R):
    if s is None:
        prof = lambda r: 0.5 * r * r
        rstar = lambda q: q
    else:
        def prof(r):
            u = r * r / (2.0 * s)
            with np.errstate(divide="ignore", invalid="ignore"):
                return np.where(u < 1.0, -s * np.log1p(-np.minimum(u, 1.0)), np.inf)
        rstar = lambda q: 2.0 * q / (1.0 + np.sqrt(1.0 + 2.0 * q * q / s))

    def conj(q):
        q = np.asarray(q, dtype=float)
        r = np.minimum(rstar(q), R)
        return q * r - prof(r)
    return prof, conj


def gauss_family(dim=2, s=None, radius=math.inf):
    """Standard Gaussian, its truncation to |x| <= radius, and their s-approximations.

    The s-approximation has profile -s·log(1 - r²/(2s)); conjugates are
    closed form (the maximizing radius is explicit and capped at `radius`).
    """
    R = float(radius)
    if s is not None:
        R = min(R, math.sqrt(2.0 * s))
    prof, conj = _gauss_family_profile(s, R)
    breaks = ()
    if math.isfinite(R) and (s is None or R < math.sqrt(2.0 * s)):
        q_cap = R if s is None else R / (1.0 - R * R / (2.0 * s))
        breaks = (q_cap,)
    return RadialFn(prof, conj, dim=dim, radius=R, conj_breaks=breaks,
                    family=(s, float(radius)))


class RadialFn(LogConcaveFn):
    """f(x) = e^{-p(|x|)} with a convex nondecreasing profile p on [0, radius].

    Parameters
    ----------
    profile, conj : callables on radii (vectorized); ``conj`` is the
        conjugate profile q -> sup_r (r q - p(r)); if omitted it is
        computed numerically on a fine radial grid.
    radius, conj_radius : supports of the profile and of its conjugate.
    breaks, conj_breaks : kink locations used as quadrature panel edges.
    """

    even = True
    kind = "radial"

    def __init__(self, profile, conj=None, *, dim=2, radius=math.inf, conj_radius=math.inf,
                 breaks=(), conj_breaks=(), family=None, kind=None):
        self.dim = dim
        self.profile = profile
        self._conj = conj
        self.radius = float(radius)
        self.conj_radius = float(conj_radius)
        self.breaks = tuple(breaks)
        self.conj_breaks = tuple(conj_breaks)
        self.family = family
        if kind:
            self.kind = kind

    def _prof(self, r):
        r = np.asarray(r, dtype=float)
        out = np.full(r.shape, np.inf)
        inside = r <= self.radius
        if inside.any():
            out[inside] = self.profile(r[inside])
        return out

    def potential(self, x):
        return self._prof(np.linalg.norm(_points(x, self.dim), axis=-1))

    def conj_profile(self, q):
        q = np.asarray(q, dtype=float)
        out = np.full(q.shape, np.inf)
        inside = q <= self.conj_radius
        if inside.any():
            if self._conj is None:
                rr = np.linspace(0.0, min(self.radius, 4.0 * self.reach()), 8193)
                out[inside] = conjugate_1d(rr, self._prof(rr), q[inside])
            else:
                out[inside] = self._conj(q[inside])
        return out

    def conjugate(self, y):
        return self.conj_profile(np.linalg.norm(_points(y, self.dim), axis=-1))

    def _make_polar(self):
        return RadialFn(self.conj_profile, self._prof, dim=self.dim, radius=self.conj_radius,
                        conj_radius=self.radius, breaks=self.conj_breaks,
                        conj_breaks=self.breaks)

    def reach(self) -> float:
        """Radius where the profile exceeds its value at 0 by CUT (or the support radius)."""
        r_cache = self.__dict__.get("_reach")
        if r_cache is not None:
            return r_cache
        p0 = float(self._prof(np.array([0.0]))[0])
        level = p0 + CUT + 3.0
        hi = 1.0
        while float(self._prof(np.array([hi]))[0]) <= level:
            if hi >= self.radius:
                break
            hi *= 2.0
            if hi > 1e8:
                raise NotIntegrable("radial profile does not grow")
        hi = min(hi, self.radius)
        lo = 0.0
        if float(self._prof(np.array([hi]))[0]) > level:
            for _ in range(60):
                mid = 0.5 * (lo + hi)
                if float(self._prof(np.array([mid]))[0]) > level:
                    hi = mid
                else:
                    lo = mid
        self.__dict__["_reach"] = hi
        return hi

    def _tilted_end(self, beta):
        """Right end of the radial integration range for tilt |b| = beta."""
        R0 = self.reach()
        if beta == 0.0:
            return R0, 0.0
        r = R0 * np.concatenate([np.linspace(0.0, 4.0, 513), np.geomspace(4.0, 1e5, 600)[1:]])
        if math.isfinite(self.radius):
            r = np.concatenate([r[r < self.radius], [self.radius]])
        g = beta * r - self._prof(r)
        m = int(np.argmax(g))
        below = np.flatnonzero(g[m:] < g[m] - CUT - 3.0)
        if below.size == 0:
            if math.isfinite(self.radius):
                return self.radius, r[m]
            return None, r[m]
        return float(r[m + below[0]]), float(r[m])

    def _panels(self, end, peak):
        brk = [b for b in self.breaks if b < end] + [peak]
        return gl_panels(0.0, end, brk, panels=64, order=16)

    def tilted_mass(self, b):
        b = _vec(b, self.dim)
        beta = float(np.linalg.norm(b))
        end, peak = self._tilted_end(beta)
        if end is None:
            return OVERFLOW
        r, w = self._panels(end, peak)
        p = self._prof(r)
        if self.dim == 1:
            val = np.exp(beta * r - p) + np.exp(-beta * r - p)
        else:
            val = 2.0 * np.pi * i0e(beta * r) * np.exp(beta * r - p) * r
        total = float(np.sum(w * np.where(np.isfinite(p), val, 0.0)))
        return OVERFLOW if math.isinf(total) else total

    def tilted_moment(self, b):
        b = _vec(b, self.dim)
        beta = float(np.linalg.norm(b))
        if beta == 0.0:
            return np.zeros(self.dim)
        end, peak = self._tilted_end(beta)
        if end is None:
            return np.full(self.dim, np.inf)
        r, w = self._panels(end, peak)
        p = self._prof(r)
        if self.dim == 1:
            val = r * (np.exp(beta * r - p) - np.exp(-beta * r - p))
        else:
            val = 2.0 * np.pi * i1e(beta * r) * np.exp(beta * r - p) * r * r
        total = float(np.sum(w * np.where(np.isfinite(p), val, 0.0)))
        return -(b / beta) * total

    def _tail_pos(self, h):
        end = self.reach()
        if h >= end:
            return 0.0
        wmax = math.sqrt(end - h)
        brk = [math.sqrt(c - h) for c in self.breaks if h < c < end]
        w, wt = gl_panels(0.0, wmax, brk, panels=48, order=16)
        r = h + w * w
        p = self._prof(r)
        if self.dim == 1:
            val = np.exp(-p) * 2.0 * w
        else:
            ang = 2.0 * np.arcsin(np.minimum(1.0, w / np.sqrt(2.0 * r)))
            val = np.exp(-p) * r * 2.0 * ang * 2.0 * w
        return float(np.sum(wt * np.where(np.isfinite(p), val, 0.0)))

    def tail_mass(self, theta, h):
        theta = _vec(theta, self.dim)
        h = h / float(np.linalg.norm(theta))
        if h >= 0:
            return self._tail_pos(h)
        return self.mass() - self._tail_pos(-h)

    def box(self):
        R = self.reach()
        return np.tile([-R, R], (self.dim, 1)).astype(float)

    def support_box(self):
        return np.tile([-self.radius, self.radius], (self.dim, 1)).astype(float)


def triangle(dim=1):
    """(1 - |x|)_+ as a radial kernel; conjugate profile q - 1 - log q for q > 1."""
    def prof(r):
        with np.errstate(divide="ignore"):
            return np.where(r < 1.0, -np.log1p(-np.minimum(r, 1.0)), np.inf)

    def conj(q):
        q = np.asarray(q, dtype=float)
        with np.errstate(divide="ignore"):
            return np.where(q > 1.0, q - 1.0 - np.log(np.maximum(q, 1.0)), 0.0)
    return RadialFn(prof, conj, dim=dim, radius=1.0, conj_breaks=(1.0,), kind="triangle")


# -- grid-backed kernels ----------------------------------------------------

class GridBacked(LogConcaveFn):
    """Density e^{-φ} with φ a GridFn, multilinearly interpolated."""

    kind = "grid"

    def __init__(self, grid: GridFn, even: bool = False):
        self.grid = grid
        self.dim = grid.dim
        self.even = bool(even)

    def potential(self, x):
        return _clean_inf(self.grid.evaluate(_points(x, self.dim)))

    def conjugate(self, y):
        y = _points(y, self.dim)
        if self.dim == 1:
            return conjugate_1d(self.grid.axes()[0], self.grid.values, y[..., 0])
        return self.polar().potential(y)

    def _make_polar(self):
        return GridBacked(legendre(self.grid), even=self.even)

    def _node_integrals(self, b, moment):
        g = self.grid
        pts = g.nodes()
        logint = -(g.values + pts @ b)
        fin = g.finite
        top = logint[fin].max()
        w = np.where(fin, np.exp(np.where(fin, logint - top, 0.0)), 0.0)
        if _edge_ratio(w) > DECAY:
            raise NotIntegrable("grid density does not decay at the grid boundary")
        scale = math.exp(top) if top < 709 else math.inf
        h = list(g.spacing)
        odd = all(k % 2 == 1 for k in g.shape)
        if not odd:
            integ = lambda a: np.trapz(a, dx=h[0]) if self.dim == 1 else \
                np.trapz(np.trapz(a, dx=h[1], axis=1), dx=h[0])
            val = integ(w) * scale
            mom = np.array([integ(w * pts[..., k]) for k in range(self.dim)]) * scale
            return float(val), mom
        val = simpson_nd(w, h)
        mom = np.array([simpson_nd(w * pts[..., k], h) for k in range(self.dim)])
        if all((k - 1) % 4 == 0 for k in g.shape):
            sl = tuple([slice(None, None, 2)] * self.dim)
            h2 = [2 * x for x in h]
            coarse = simpson_nd(w[sl], h2)
            cmom = np.array([simpson_nd((w * pts[..., k])[sl], h2) for k in range(self.dim)])
            val = val + (val - coarse) / 15.0
            mom = mom + (mom - cmom) / 15.0
        return float(val * scale), mom * scale

    def tilted_mass(self, b):
        return self._node_integrals(_vec(b, self.dim), False)[0]

    def tilted_moment(self, b):
        return self._node_integrals(_vec(b, self.dim), True)[1]

    def box(self):
        g = self.grid
        fin = g.finite
        keep = fin & (g.values <= g.values[fin].min() + CUT + 3.0)
        idx = np.argwhere(keep)
        lo = np.maximum(idx.min(axis=0) - 1, 0)
        hi = np.minimum(idx.max(axis=0) + 1, np.array(g.shape) - 1)
        axes = g.axes()
        return np.array([[axes[k][lo[k]], axes[k][hi[k]]] for k in range(self.dim)])

    def support_box(self):
        g = self.grid
        idx = np.argwhere(g.finite)
        axes = g.axes()
        return np.array([[axes[k][idx[:, k].min()], axes[k][idx[:, k].max()]]
                         for k in range(self.dim)])


# -- wrappers -------------------------------------------------------------

class Translated(LogConcaveFn):
    """f_a(x) = f(x - a)."""

    kind = "translated"

    def __init__(self, base: LogConcaveFn, shift):
        self.base = base
        self.dim = base.dim
        self.shift = _vec(shift, base.dim)
        self.even = base.even and bool(np.allclose(self.shift, 0.0))

    def potential(self, x):
        return self.base.potential(_points(x, self.dim) - self.shift)

    def conjugate(self, y):
        y = _points(y, self.dim)
        return y @ self.shift + self.base.conjugate(y)

    def _make_polar(self):
        return Tilted(self.base.polar(), self.shift)

    def tilted_mass(self, b):
        b = _vec(b, self.dim)
        m = self.base.tilted_mass(b)
        return m if is_overflow(m) else m * math.exp(-b @ self.shift)

    def tilted_moment(self, b):
        b = _vec(b, self.dim)
        e = math.exp(-b @ self.shift)
        return e * (self.base.tilted_moment(b) + self.shift * self.base.tilted_mass(b))

    def tail_mass(self, theta, h):
        theta = _vec(theta, self.dim)
        return self.base.tail_mass(theta, h - theta @ self.shift)

    def box(self):
        return self.base.box() + self.shift[:, None]

    def support_box(self):
        return self.base.support_box() + self.shift[:, None]


class Tilted(LogConcaveFn):
    """e^{-<b,x>} f(x)."""

    kind = "tilted"

    def __init__(self, base: LogConcaveFn, tilt):
        self.base = base
        self.dim = base.dim
        self.tilt = _vec(tilt, base.dim)
        self.even = base.even and bool(np.allclose(self.tilt, 0.0))

    def potential(self, x):
        x = _points(x, self.dim)
        return self.base.potential(x) + x @ self.tilt

    def conjugate(self, y):
        return self.base.conjugate(_points(y, self.dim) - self.tilt)

    def _make_polar(self):
        return Translated(self.base.polar(), self.tilt)

    def tilted_mass(self, b):
        return self.base.tilted_mass(self.tilt + _vec(b, self.dim))

    def tilted_moment(self, b):
        return self.base.tilted_moment(self.tilt + _vec(b, self.dim))

    def support_box(self):
        return self.base.support_box()

    def box(self):
        sb = np.asarray(self.base.support_box(), float)
        if np.all(np.isfinite(sb)):
            return sb
        return LogConcaveFn.box(self)


class LinearImage(LogConcaveFn):
    """g(x) = f(A^{-1} x) for an invertible matrix A."""

    kind = "linear"

    def __init__(self, base: LogConcaveFn, matrix):
        self.base = base
        self.dim = base.dim
        self.A = np.array(matrix, dtype=float).reshape(self.dim, self.dim)
        self.Ainv = np.linalg.inv(self.A)
        self.det = abs(float(np.linalg.det(self.A)))
        self.even = base.even

    def potential(self, x):
        return self.base.potential(_points(x, self.dim) @ self.Ainv.T)

    def conjugate(self, y):
        return self.base.conjugate(_points(y, self.dim) @ self.A)

    def _make_polar(self):
        return LinearImage(self.base.polar(), self.Ainv.T)

    def tilted_mass(self, b):
        m = self.base.tilted_mass(self.A.T @ _vec(b, self.dim))
        return m if is_overflow(m) else self.det * m

    def tilted_moment(self, b):
        return self.det * (self.A @ self.base.tilted_moment(self.A.T @ _vec(b, self.dim)))

    def tail_mass(self, theta, h):
        t = self.A.T @ _vec(theta, self.dim)
        n = float(np.linalg.norm(t))
        return self.det * self.base.tail_mass(t / n, h / n)

    def _image_box(self, box):
        box = np.asarray(box, float)
        if not np.all(np.isfinite(box)):
            return np.full((self.dim, 2), [-np.inf, np.inf])
        corners = np.array(np.meshgrid(*box, indexing="ij")).reshape(self.dim, -1).T
        img = corners @ self.A.T
        return np.column_stack([img.min(axis=0), img.max(axis=0)])

    def box(self):
        return self._image_box(self.base.box())

    def support_box(self):
        return self._image_box(self.base.support_box())


class PolarFn(LogConcaveFn):
    """Generic polar e^{-Lφ} built from a kernel's conjugate."""

    kind = "polar"

    def __init__(self, base: LogConcaveFn):
        self.base = base
        self.dim = base.dim
        self.even = base.even

    def potential(self, x):
        return _clean_inf(self.base.conjugate(x))

    def conjugate(self, y):
        return self.base.potential(y)

    def _make_polar(self):
        return self.base


class FunctionKernel(LogConcaveFn):
    """Kernel from callables (used for homotheties and powers of other kernels)."""

    def __init__(self, potential, dim, *, conjugate=None, even=False, box=None,
                 support_box=None, kind="function"):
        self._potential = potential
        self._conjugate = conjugate
        self.dim = dim
        self.even = even
        self._fixed_box = None if box is None else np.asarray(box, float)
        self._support = None if support_box is None else np.asarray(support_box, float)
        self.kind = kind

    def potential(self, x):
        return _clean_inf(self._potential(_points(x, self.dim)))

    def conjugate(self, y):
        if self._conjugate is None:
            return LogConcaveFn.conjugate(self, y)
        return self._conjugate(_points(y, self.dim))

    def box(self):
        return self._fixed_box if self._fixed_box is not None else LogConcaveFn.box(self)

    def support_box(self):
        return self._support if self._support is not None else self.box()


class Truncated(LogConcaveFn):
    """f_[t]: f on {φ <= t} and 0 elsewhere (generic wrapper)."""

    kind = "truncated"

    def __init__(self, base: LogConcaveFn, t: float):
        self.base = base
        self.t = float(t)
        self.dim = base.dim
        self.even = base.even

    def potential(self, x):
        p = _clean_inf(self.base.potential(x))
        return np.where(p <= self.t, p, np.inf)

    def support_box(self):
        return self.box()


class SConcaveFn(LogConcaveFn):
    """f_s = (1 + log f / s)_+^s, i.e. potential -s·log(1 - φ/s) where φ < s.

    When the base is recognized (Gaussian family, indicator, grid) an
    explicit realization is used for all integrals; otherwise the generic
    quadrature applies.
    """

    kind = "sconcave"

    def __init__(self, base: LogConcaveFn, s: float, impl: LogConcaveFn | None = None):
        if s <= 0:
            raise ValueError("s must be positive")
        self.base = base
        self.s = float(s)
        self.dim = base.dim
        self.even = base.even
        self.impl = impl

    def potential(self, x):
        if self.impl is not None:
            return self.impl.potential(x)
        return sconcave_potential(self.base.potential(x), self.s)

    def __getattribute__(self, name):
        if name in ("conjugate", "tilted_mass", "tilted_moment", "tail_mass", "box",
                    "support_box", "_make_polar", "mass"):
            impl = object.__getattribute__(self, "impl")
            if impl is not None:
                return getattr(impl, name)
        return object.__getattribute__(self, name)

    def support_box(self):
        sb = np.asarray(self.base.support_box(), float)
        if self.dim != 1:
            return self.box()
        out = []
        for sign in (-1.0, 1.0):
            lim = sb[0, 1] if sign > 0 else -sb[0, 0]
            hi = lim if math.isfinite(lim) else 1.0
            inside = lambda r: float(_clean_inf(self.potential(np.array([[sign * r]])))[0]) < np.inf
            if not math.isfinite(lim):
                while inside(hi):
                    hi *= 2.0
            elif inside(hi):
                out.append(sign * hi)
                continue
            lo = 0.0
            for _ in range(80):
                mid = 0.5 * (lo + hi)
                if inside(mid):
                    lo = mid
                else:
                    hi = mid
            out.append(sign * lo)
        return np.array([[out[0], out[1]]])

    def box(self):
        if self.dim == 1:
            return self.support_box()
        return LogConcaveFn.box(self)


def sconcave_potential(phi, s):
    phi = _clean_inf(phi)
    with np.errstate(divide="ignore", invalid="ignore"):
        return np.where(phi < s, -s * np.log1p(-np.minimum(phi, s) / s), np.inf)


# -- operations -----------------------------------------------------------

def polar_fn(f: LogConcaveFn) -> LogConcaveFn:
    """f° = e^{-Lφ}; symbolic for recognized kernels, grid or generic otherwise."""
    return f.polar()


def homothety(f: LogConcaveFn, lam: float) -> LogConcaveFn:
    """(λ·f)(x) = f(x/λ)^λ."""
    if lam <= 0:
        raise ValueError("lambda must be positive")
    if lam == 1.0:
        return f
    if isinstance(f, Gaussian):
        return Gaussian(f.A / lam, lam * f.c, lam * f.k)
    if isinstance(f, Indicator):
        if f.dim == 2:
            return Indicator(f.body.scaled(lam))
        return Indicator((lam * f.body[0], lam * f.body[1]))
    box = np.asarray(f.box(), float) * lam
    return FunctionKernel(lambda x: lam * f.potential(x / lam), f.dim,
                          conjugate=lambda y: lam * f.conjugate(y), even=f.even, box=box,
                          kind="homothety")


def power(f: LogConcaveFn, lam: float) -> LogConcaveFn:
    """f^λ as a kernel (potential λφ)."""
    return FunctionKernel(lambda x: lam * f.potential(x), f.dim,
                          conjugate=lambda y: lam * f.conjugate(_points(y, f.dim) / lam),
                          even=f.even, kind="power")


def _gaussian_radial_image(g: Gaussian, radial: RadialFn) -> LogConcaveFn:
    w, V = np.linalg.eigh(g.A)
    root_inv = V @ np.diag(1.0 / np.sqrt(w)) @ V.T
    out = radial
    if not np.allclose(root_inv, np.eye(g.dim)):
        out = LinearImage(out, root_inv)
    if not g.even:
        out = Translated(out, g.c)
    return out


def _min_potential(f):
    if isinstance(f, GridBacked):
        return float(f.grid.values[f.grid.finite].min())
    axes, pts = _grid_points(np.asarray(f.box(), float), 65 if f.dim == 2 else 1025)
    return float(np.min(_clean_inf(f.potential(pts))))


def truncate(f: LogConcaveFn, t: float) -> LogConcaveFn:
    """f_[t] = f on A_t = {φ <= t}, zero outside."""
    if t <= 0:
        raise ValueError("t must be positive")
    if isinstance(f, Indicator):
        return f
    if isinstance(f, Gaussian) and f.k == 0.0:
        return _gaussian_radial_image(f, gauss_family(f.dim, radius=math.sqrt(2.0 * t)))
    if isinstance(f, RadialFn) and f.family is not None:
        s, R = f.family
        if s is None:
            return gauss_family(f.dim, radius=min(R, math.sqrt(2.0 * t)))
        return gauss_family(f.dim, s, radius=min(R, math.sqrt(2.0 * s * -math.expm1(-t / s))))
    if _min_potential(f) >= t:
        raise EmptyLevel(f"sublevel set {{phi <= {t}}} has empty interior")
    if isinstance(f, GridBacked):
        g = f.grid
        return GridBacked(g.with_values(np.where(g.values <= t, g.values, INF)), f.even)
    return Truncated(f, t)


def s_approx(f: LogConcaveFn, s: float) -> SConcaveFn:
    """The s-concave approximation f_s = (1 + log f / s)_+^s <= f."""
    if s < 1:
        raise ValueError("s must be >= 1")
    impl = None
    if isinstance(f, Indicator):
        impl = f
    elif isinstance(f, Gaussian) and f.is_standard:
        impl = gauss_family(f.dim, s)
    elif isinstance(f, RadialFn) and f.family is not None and f.family[0] is None:
        impl = gauss_family(f.dim, s, radius=f.family[1])
    elif isinstance(f, GridBacked):
        g = f.grid
        impl = GridBacked(g.with_values(np.where(g.finite, sconcave_potential(g.values, s), INF)),
                          f.even)
    return SConcaveFn(f, s, impl)


def dual_mass(f: LogConcaveFn, a) -> float:
    """G(a) = ∫ e^{-<a,x>} f°(x) dx; OVERFLOW when the integrand does not decay."""
    try:
        val = f.polar().tilted_mass(_vec(a, f.dim))
    except NotIntegrable:
        return OVERFLOW
    if is_overflow(val) or not math.isfinite(val):
        return OVERFLOW
    return float(val)


def grad_dual_mass(f: LogConcaveFn, a) -> np.ndarray:
    """∇G(a) = -∫ x e^{-<a,x>} f°(x) dx."""
    return -np.asarray(f.polar().tilted_moment(_vec(a, f.dim)), dtype=float)


def normalized_product(f: LogConcaveFn, a) -> float:
    """∫f · G(a) / (2π)^n."""
    G = dual_mass(f, a)
    if is_overflow(G):
        return math.inf
    return f.mass() * G / (2.0 * math.pi) ** f.dim


def center_of_mass(f: LogConcaveFn) -> np.ndarray:
    if f.even:
        return np.zeros(f.dim)
    return np.asarray(f.tilted_moment(np.zeros(f.dim)), float) / f.mass()


def santalo_point_fn(f: LogConcaveFn, *, rtol: float = 1e-8, maxiter: int = 100) -> np.ndarray:
    """Minimizer of the strictly convex dual mass G by damped Newton.

    The Hessian is a central difference of the analytic gradient; when it
    is not positive definite the step falls back to steepest descent.
    Armijo backtracking rejects steps where G overflows.
    """
    n = f.dim
    x = np.zeros(n) if f.even else -center_of_mass(f)
    G = dual_mass(f, x)
    if is_overflow(G):
        x = np.zeros(n)
        G = dual_mass(f, x)
        if is_overflow(G):
            raise NoConvergence("dual mass is infinite at the starting point")
    g = grad_dual_mass(f, x)
    scale = float(np.max(np.abs(np.asarray(f.box())))) or 1.0
    h = 1e-5 * scale
    for _ in range(maxiter):
        if np.linalg.norm(g) <= rtol * G:
            return x
        H = np.empty((n, n))
        for i in range(n):
            e = np.zeros(n)
            e[i] = h
            H[:, i] = (grad_dual_mass(f, x + e) - grad_dual_mass(f, x - e)) / (2 * h)
        H = 0.5 * (H + H.T)
        step = None
        if np.all(np.isfinite(H)) and np.all(np.linalg.eigvalsh(H) > 0):
            step = -np.linalg.solve(H, g)
        if step is None or step @ g >= 0:
            step = -g / max(np.linalg.norm(g), 1e-300) * h * 100
        alpha = 1.0
        for _ in range(60):
            trial = x + alpha * step
            Gt = dual_mass(f, trial)
            if not is_overflow(Gt) and Gt <= G + 1e-4 * alpha * (g @ step):
                break
            alpha *= 0.5
        else:
            if np.linalg.norm(g) <= 1e3 * rtol * G:
                return x
            raise NoConvergence("line search failed in santalo_point_fn")
        x, G = trial, Gt
        g = grad_dual_mass(f, x)
    raise NoConvergence("santalo_point_fn exceeded max iterations")


# -- property probes ----------------------------------------------------

def log_concavity_defect(f: LogConcaveFn, rng, count=100) -> float:
    """max over random segments of φ(mid) - (φ(a)+φ(b))/2 where both ends are finite."""
    box = np.asarray(f.box(), float)
    a = box[:, 0] + rng.random((count, f.dim)) * (box[:, 1] - box[:, 0])
    b = box[:, 0] + rng.random((count, f.dim)) * (box[:, 1] - box[:, 0])
    pa, pb = _clean_inf(f.potential(a)), _clean_inf(f.potential(b))
    pm = _clean_inf(f.potential(0.5 * (a + b)))
    ok = np.isfinite(pa) & np.isfinite(pb)
    if not ok.any():
        return 0.0
    return float(np.max(pm[ok] - 0.5 * (pa[ok] + pb[ok])))


def evenness_defect(f: LogConcaveFn, rng, count=100) -> float:
    box = np.asarray(f.box(), float)
    x = box[:, 0] + rng.random((count, f.dim)) * (box[:, 1] - box[:, 0])
    return float(np.max(np.abs(f(x) - f(-x))))


# -- JSON function specs --------------------------------------------------

_NAMED_BODIES = {"square": SQUARE, "hexagon": HEXAGON}


def function_from_spec(spec: dict) -> LogConcaveFn:
    """Build a kernel from {"kind": ..., "params": {...}, "even": bool}."""
    problems = []
    if not isinstance(spec, dict) or "kind" not in spec:
        raise InputError("function spec must be an object with a 'kind' field")
    kind = spec["kind"]
    p = spec.get("params", {}) or {}
    try:
        if kind == "gaussian":
            dim = int(p.get("dim", 2))
            f = Gaussian(p.get("matrix"), p.get("center"), float(p.get("offset", 0.0)), dim=dim)
        elif kind == "expnorm":
            f = expnorm(p.get("p", 1), int(p.get("dim", 2)))
        elif kind == "indicator":
            if "interval" in p:
                f = Indicator(tuple(p["interval"]))
            elif "body" in p:
                f = Indicator(_NAMED_BODIES[p["body"]])
            else:
                f = Indicator(Polygon(p["vertices"]))
        elif kind == "triangle":
            f = triangle(int(p.get("dim", 1)))
        elif kind == "grid":
            f = GridBacked(GridFn.from_json(p), even=bool(spec.get("even", False)))
        elif kind == "truncated":
            f = truncate(function_from_spec(p["base"]), float(p["t"]))
        elif kind == "sconcave":
            f = s_approx(function_from_spec(p["base"]), float(p["s"]))
        else:
            problems.append(f"kind: unknown function kind {kind!r}")
    except InputError:
        raise
    except (KeyError, TypeError, ValueError) as exc:
        problems.append(f"params: {exc!s}")
    if problems:
        raise InputError(problems)
    if "even" in spec and bool(spec["even"]) and not f.even:
        raise InputError("even: declared even but the kernel is not symmetric")
    f.spec = spec
    return f
