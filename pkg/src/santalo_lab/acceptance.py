"""Acceptance criteria 1-11 as runnable checks.

Each ``criterion_k`` returns a CriterionResult holding its verdict,
wall time, time budget, and the report rows that go to its CSV. Tolerances
and budgets are fixed here and nowhere else.
"""

from __future__ import annotations

import math
import os
import time
from dataclasses import dataclass, field

import numpy as np

from ._parallel import max_threads, threads
from .convexfun import GridFn, conjugate_1d, legendre, legendre_brute, ls_transform
from .geom2d import (CORPUS_SEED, HEXAGON, SQUARE, HalfSpace, Polygon,
                     floating_body_body, product_body, random_polygon, random_polygon_corpus,
                     santalo_point_body, section_witness)
from .io import csv_text, report_row, strip_wall_time, write_csv
from .lifting import (lift_body, lifted_volume, psi_properties, random_biaxial_polygon,
                      ball_ratio, verify_polar_lift, verify_projection_floating)
from .logconcave import (Gaussian, GridBacked, Indicator, dual_mass, expnorm, grad_dual_mass,
                         s_approx, triangle, truncate)
from .regions import (check_inclusion, floating_body_fn, meyer_constant, normalized_product,
                      region_convergence, santalo_region_fn)

LAMBDAS = (0.05, 0.15, 0.25, 0.35, 0.45)
TITLES = {
    1: "Gaussian equality case of the functional Santalo inequality",
    2: "Gaussian Santalo region at t=1 collapses to a point",
    3: "Floating body inside the Santalo region at 1/(4 lambda (1-lambda))",
    4: "Body-level floating body inside the Santalo region",
    5: "Section witness bound on random chords",
    6: "Mahler products of the square and the 256-gon",
    7: "Duality suite (Legendre and L_s)",
    8: "Gradient of the dual mass vs central differences",
    9: "Lifting suite",
    10: "Convergence suites",
    11: "Determinism across runs and thread counts",
}
BUDGETS = {1: 10, 2: 60, 3: 600, 4: 300, 5: 120, 6: 30, 7: 120, 8: 120, 9: 180, 10: 600,
           11: 1800}


@dataclass
class CriterionResult:
    number: int
    passed: bool
    elapsed: float
    rows: list = field(default_factory=list)
    detail: str = ""

    @property
    def title(self) -> str:
        return TITLES[self.number]

    @property
    def budget(self) -> float:
        return BUDGETS[self.number]

    def line(self) -> str:
        tag = "PASS" if self.passed else "FAIL"
        return (f"criterion {self.number:2d} {tag}  {self.title}  "
                f"[{self.elapsed:.1f}s / {self.budget}s]  {self.detail}")

    def csv(self) -> str:
        return csv_text(self.rows)


class _Rows:
    """Collects report rows; every check records value, tolerance, verdict."""

    def __init__(self, number):
        self.task = f"criterion-{number}"
        self.scenario = f"acceptance-{number:02d}"
        self.rows = []
        self.ok = True
        self.notes = []

    def add(self, params, quantity, value, tolerance, passed, note=None):
        passed = bool(passed)
        self.rows.append(report_row(self.scenario, self.task, params, quantity, value,
                                    tolerance, passed))
        if not passed:
            self.ok = False
            if note:
                self.notes.append(note)

    def info(self, params, quantity, value):
        self.rows.append(report_row(self.scenario, self.task, params, quantity, value, "",
                                    "info"))


def _finish(number, R: _Rows, start, extra=""):
    elapsed = time.perf_counter() - start
    in_time = elapsed <= BUDGETS[number]
    detail = "; ".join(R.notes + ([extra] if extra else []))
    if not in_time:
        detail = (detail + "; " if detail else "") + "over time budget"
    return CriterionResult(number, R.ok and in_time, elapsed, R.rows, detail)


def inclusion_corpus() -> dict:
    return {"gaussian": Gaussian(), "expnorm-l1": expnorm(1), "square": Indicator(SQUARE),
            "hexagon": Indicator(HEXAGON), "gaussian-trunc4": truncate(Gaussian(), 4.0)}


def gaussian_grid(nodes=257, half_width=8.0) -> GridBacked:
    box = [[-half_width, half_width]] * 2
    g = GridFn.sample(lambda x: 0.5 * np.sum(x * x, axis=-1), box, nodes)
    return GridBacked(g, even=True)


# -- criteria -------------------------------------------------------------

def criterion_1() -> CriterionResult:
    start = time.perf_counter()
    R = _Rows(1)
    target = (2 * math.pi) ** 2
    for name, f in (("closed-form", Gaussian()), ("grid-257", gaussian_grid())):
        val = f.mass() * dual_mass(f, [0.0, 0.0])
        err = abs(val / target - 1.0)
        R.info({"path": name}, "mass_times_dual_mass", val)
        R.add({"path": name}, "relative_error", err, 1e-3, err <= 1e-3, f"{name} err {err:.2e}")
    return _finish(1, R, start)


def criterion_2() -> CriterionResult:
    start = time.perf_counter()
    R = _Rows(2)
    S = santalo_region_fn(Gaussian(), 1.0, 256)
    rmax = float(np.max(S.radii)) if S.radii is not None else 0.0
    R.info({"t": 1, "rays": 256}, "rays_traced", 0 if S.radii is None else len(S.radii))
    R.add({"t": 1, "rays": 256}, "max_radius", rmax, 1e-4,
          S.radii is not None and len(S.radii) == 256 and rmax <= 1e-4)
    return _finish(2, R, start)


def criterion_3() -> CriterionResult:
    start = time.perf_counter()
    R = _Rows(3)
    for name, f in inclusion_corpus().items():
        for lam in LAMBDAS:
            d = meyer_constant(lam)
            F = floating_body_fn(f, lam)
            rep = check_inclusion(F, f, d, tol=1e-4)
            p = {"f": name, "lambda": lam, "d": d}
            R.info(p, "max_normalized_product", float(np.max(rep.values)))
            R.info(p, "max_slack", float(np.max(rep.slacks)))
            R.add(p, "max_violation", rep.max_violation, 1e-4, rep.holds,
                  f"{name} lambda={lam}")
    return _finish(3, R, start)


def criterion_4() -> CriterionResult:
    start = time.perf_counter()
    R = _Rows(4)
    for k, K in enumerate(random_polygon_corpus(20, CORPUS_SEED)):
        for lam in LAMBDAS:
            d = meyer_constant(lam)
            F = floating_body_body(K, lam)
            rep = check_inclusion(F, K, d, tol=1e-6)
            raw = float(np.max(rep.values) - d)
            p = {"polygon": k, "lambda": lam}
            R.info(p, "max_product_minus_threshold", raw)
            R.add(p, "max_violation", rep.max_violation, 1e-6, rep.holds,
                  f"polygon {k} lambda={lam}")
    return _finish(4, R, start)


def random_chords(count=100, seed=CORPUS_SEED):
    rng = np.random.default_rng(seed + 1)
    out = []
    while len(out) < count:
        K = random_polygon(rng, symmetric=bool(rng.integers(0, 2)))
        phi = 2 * math.pi * rng.random()
        u = np.array([math.cos(phi), math.sin(phi)])
        p = K.vertices @ u
        a = p.min() + (0.05 + 0.9 * rng.random()) * (p.max() - p.min())
        out.append((K, HalfSpace(u, a)))
    return out


def criterion_5() -> CriterionResult:
    start = time.perf_counter()
    R = _Rows(5)
    for k, (K, H) in enumerate(random_chords()):
        w = section_witness(K, H)
        p = {"pair": k, "lambda": round(w.fraction, 12)}
        R.add(p, "product_over_bound", w.product / w.bound, 1.0, w.holds, f"pair {k}")
    return _finish(5, R, start)


def criterion_6() -> CriterionResult:
    start = time.perf_counter()
    R = _Rows(6)
    for name, K, target, tol in (("square", SQUARE, 8.0, 1e-6),
                                 ("256-gon", Polygon.regular(256), math.pi ** 2, 1e-2)):
        x0 = santalo_point_body(K)
        val = product_body(K, x0)
        R.info({"body": name}, "min_product", val)
        R.add({"body": name}, "abs_error", abs(val - target), tol, abs(val - target) <= tol)
    return _finish(6, R, start)


def _quadratic_grid(A, n, half=6.0):
    box = [[-half, half]] * 2
    return GridFn.sample(lambda x: 0.5 * np.einsum("...i,ij,...j->...", x, A, x), box, n)


def criterion_7() -> CriterionResult:
    start = time.perf_counter()
    R = _Rows(7)
    # double-Legendre idempotence L L L = L, compared on [-3, 3]^2
    for name, pot in (("quadratic", lambda x: 0.5 * np.sum(x * x, axis=-1)),
                      ("l1-plus-quadratic", lambda x: np.sum(np.abs(x), axis=-1)
                       + 0.25 * np.sum(x * x, axis=-1))):
        phi = GridFn.sample(pot, [[-6.0, 6.0]] * 2, 257)
        L1 = legendre(phi)
        L3 = legendre(legendre(L1))
        nodes = L1.nodes()
        win = np.all(np.abs(nodes) <= 3.0, axis=-1)
        err = float(np.max(np.abs(L3.evaluate(nodes[win]) - L1.values[win])))
        R.add({"phi": name, "nodes": 257}, "LLL_minus_L_sup", err, 5e-3, err <= 5e-3)
    # legendre vs brute at all dual nodes, 20 random convex quadratics
    rng = np.random.default_rng(CORPUS_SEED)
    worst = 0.0
    for _ in range(20):
        B = rng.normal(size=(2, 2))
        A = B @ B.T + 0.2 * np.eye(2)
        phi = _quadratic_grid(A, 65, 3.0)
        L = legendre(phi)
        worst = max(worst, float(np.max(np.abs(L.values - legendre_brute(phi, L.nodes())))))
    R.add({"count": 20, "nodes": 65}, "legendre_vs_brute_max", worst, 1e-9, worst <= 1e-9)
    phi = _quadratic_grid(np.eye(2), 257)
    L = legendre(phi)
    probe = L.nodes().reshape(-1, 2)[rng.choice(257 * 257, 2000, replace=False)]
    err = float(np.max(np.abs(L.evaluate(probe) - legendre_brute(phi, probe))))
    R.add({"count": 2000, "nodes": 257}, "legendre_vs_brute_max", err, 1e-9, err <= 1e-9)
    # L_1 L_1 g = g on the triangle
    tri = GridFn.sample(triangle().potential, [[-1.0, 1.0]], 1025)
    back = ls_transform(ls_transform(tri, 1), 1)
    d = np.abs(np.exp(-back.values) - np.exp(-np.minimum(tri.values, 700.0)))
    err = float(np.max(d))
    R.add({"g": "triangle", "s": 1}, "L1L1_minus_g_sup", err, 5e-3, err <= 5e-3)
    # L_s g <= g° on the node set, for g the s-approximations of the Gaussian
    worst = -math.inf
    for s in (1, 2, 4, 8, 16):
        fs = s_approx(Gaussian(dim=1), s)
        box = fs.support_box()
        g = GridFn.sample(fs.potential, box, 1025)
        Ls = ls_transform(g, s, out_grid=([[-6.0, 6.0]], 513))
        xs = Ls.axes()[0]
        fin = ~(g.values >= 1e299)
        polar_pot = conjugate_1d(g.axes()[0][fin], g.values[fin], xs)
        excess = float(np.max(np.exp(-Ls.values) - np.exp(-polar_pot)))
        worst = max(worst, excess)
    R.add({"s": "1..16", "dim": 1}, "max_Ls_minus_polar", worst, 0.0, worst <= 0.0)
    f2 = s_approx(Gaussian(), 2)
    g2 = GridFn.sample(f2.potential, [[-2.0, 2.0]] * 2, 65)
    Ls2 = ls_transform(g2, 2, out_grid=([[-3.0, 3.0]] * 2, 33))
    pol = legendre_brute(g2, Ls2.nodes())
    excess = float(np.max(np.exp(-Ls2.values) - np.exp(-pol)))
    R.add({"s": 2, "dim": 2}, "max_Ls_minus_polar", excess, 0.0, excess <= 0.0)
    return _finish(7, R, start)


def gradient_probes(f, count=20, seed=CORPUS_SEED, level=4.0):
    """Points a with normalized product between the minimum and `level`."""
    rng = np.random.default_rng(seed)
    out = []
    for k in range(count):
        phi = 2 * math.pi * rng.random()
        u = np.array([math.cos(phi), math.sin(phi)])
        frac = 0.2 + 0.6 * rng.random()
        lo, hi = 0.0, 0.05
        while normalized_product(f, hi * u) <= level:
            hi *= 2.0
        for _ in range(30):
            mid = 0.5 * (lo + hi)
            if normalized_product(f, mid * u) <= level:
                lo = mid
            else:
                hi = mid
        out.append(frac * lo * u)
    return out


def criterion_8() -> CriterionResult:
    start = time.perf_counter()
    R = _Rows(8)
    for name, f in inclusion_corpus().items():
        worst = 0.0
        for a in gradient_probes(f):
            h = 1e-5
            fd = np.array([(dual_mass(f, a + h * e) - dual_mass(f, a - h * e)) / (2 * h)
                           for e in np.eye(2)])
            g = grad_dual_mass(f, a)
            worst = max(worst, float(np.linalg.norm(g - fd) / np.linalg.norm(fd)))
        R.add({"f": name, "probes": 20}, "max_relative_error", worst, 1e-4, worst <= 1e-4, name)
    return _finish(8, R, start)


def criterion_9() -> CriterionResult:
    start = time.perf_counter()
    R = _Rows(9)
    gauss_s1, gauss_s2 = s_approx(Gaussian(dim=1), 1), s_approx(Gaussian(dim=1), 2)
    ind = Indicator((-1.0, 1.0))
    for name, g, s in (("triangle", triangle(), 1), ("triangle", triangle(), 2),
                       ("indicator", ind, 1), ("indicator", ind, 2),
                       ("gaussian-s1", gauss_s1, 1), ("gaussian-s2", gauss_s2, 2)):
        direct = lift_body(g, s).volume()
        formula = lifted_volume(g, s)
        err = abs(direct / formula - 1.0)
        R.add({"g": name, "s": s}, "volume_identity_rel", err, 1e-3, err <= 1e-3)
    for name, g in (("triangle", triangle()), ("indicator", ind), ("gaussian-s1", gauss_s1)):
        rep = verify_polar_lift(g, 1)
        R.add({"g": name}, "polar_lift_hausdorff", rep.hausdorff, 5e-3, rep.hausdorff <= 5e-3)
        R.add({"g": name}, "body_product", rep.body_product, rep.body_bound,
              rep.body_product <= rep.body_bound)
        R.add({"g": name}, "function_product", rep.function_product, rep.function_bound,
              rep.function_product <= rep.function_bound)
    for name, f in (("gaussian", Gaussian(dim=1)), ("indicator", ind)):
        for lam in (0.05, 0.25, 0.45):
            rep = verify_projection_floating(f, lam, 1)
            R.add({"f": name, "lambda": lam}, "projection_defect", rep.defect, 1e-3,
                  rep.defect <= 1e-3)
    rng = np.random.default_rng(CORPUS_SEED)
    sym = sec = 0.0
    minimal = True
    for _ in range(20):
        K = random_biaxial_polygon(rng)
        probes = (rng.random((20, 2)) * 2 - 1) * 0.9 * K.vertices.max(axis=0).min()
        rep = psi_properties(K, probes)
        sym, sec = max(sym, rep.symmetry_defect), max(sec, rep.section_defect)
        minimal = minimal and rep.min_at_origin
    R.add({"bodies": 20, "probes": 20}, "psi_symmetry_rel", sym, 1e-8, sym <= 1e-8)
    R.add({"bodies": 20, "probes": 20}, "psi_section_rel", sec, 1e-8, sec <= 1e-8)
    R.add({"bodies": 20, "probes": 20}, "psi_min_at_origin", minimal, "", minimal)
    ok_ge1, ok_dec = True, True
    for n in (1, 2, 3):
        vals = [ball_ratio(n, s) for s in range(1, 401)]
        ok_ge1 &= min(vals) >= 1.0
        ok_dec &= all(b < a for a, b in zip(vals[:-1], vals[1:]))
    R.add({"n": "1..3", "s": "1..400"}, "ball_ratio_at_least_one", ok_ge1, "", ok_ge1)
    R.add({"n": "1..3", "s": "1..400"}, "ball_ratio_decreasing", ok_dec, "", ok_dec)
    v = ball_ratio(2, 200)
    R.add({"n": 2, "s": 200}, "ball_ratio_minus_one", v - 1.0, 0.02, abs(v - 1.0) <= 0.02,
          f"ball ratio at (n=2, s=200) is {v:.6f} = (202/200)^2, not within 2% of 1")
    return _finish(9, R, start)


SANTALO_CONVERGENCE_D = 2.0


def criterion_10() -> CriterionResult:
    start = time.perf_counter()
    R = _Rows(10)
    g = Gaussian()
    suites = (("truncation-floating", 0.25, (1, 2, 4, 8)),
              ("truncation-santalo", SANTALO_CONVERGENCE_D, (1, 2, 4, 8)),
              ("sconcave-floating", 0.25, (1, 2, 4, 8, 16, 32, 64)))
    for kind, param, sched in suites:
        T = region_convergence(g, param, kind, sched)
        for p, dist in zip(sched, T.distances):
            R.info({"kind": kind, "param": param, "stage": p}, "hausdorff", dist)
        R.add({"kind": kind, "param": param}, "monotone_10pct", T.monotone, "", T.monotone,
              f"{kind} not monotone")
        R.add({"kind": kind, "param": param}, "final_hausdorff", T.final, 1e-2,
              T.final <= 1e-2, f"{kind} final {T.final:.3g}")
    # informational: d = 4/3, where the t=1 radius happens to cross the limit radius
    T = region_convergence(g, 4.0 / 3.0, "truncation-santalo", (1, 2, 4, 8))
    for p, dist in zip((1, 2, 4, 8), T.distances):
        R.info({"kind": "truncation-santalo", "param": 4.0 / 3.0, "stage": p}, "hausdorff", dist)
    return _finish(10, R, start)


CRITERIA = {1: criterion_1, 2: criterion_2, 3: criterion_3, 4: criterion_4, 5: criterion_5,
            6: criterion_6, 7: criterion_7, 8: criterion_8, 9: criterion_9, 10: criterion_10}


def determinism_threads() -> int:
    """Thread count used as "max" (at least 2 so the pool is exercised)."""
    return max(2, max_threads())


def criterion_11(reference: dict | None = None, numbers=tuple(range(1, 11))) -> CriterionResult:
    """Rerun criteria 1-10 at 1 and max threads; compare CSVs without wall time.

    `reference` may hold CSV texts from an earlier run (number -> text) so a
    test session does not repeat that run.
    """
    start = time.perf_counter()
    R = _Rows(11)
    nmax = determinism_threads()
    runs = {}
    if reference is None:
        with threads(nmax):
            reference = {k: CRITERIA[k]().csv() for k in numbers}
    with threads(1):
        runs[1] = {k: CRITERIA[k]().csv() for k in numbers}
    with threads(nmax):
        runs[nmax] = {k: CRITERIA[k]().csv() for k in numbers}
    for k in numbers:
        ref = strip_wall_time(reference[k])
        for n, texts in runs.items():
            same = strip_wall_time(texts[k]) == ref
            R.add({"criterion": k, "threads": n}, "csv_identical", same, "", same,
                  f"criterion {k} differs at {n} threads")
    return _finish(11, R, start)


def run_all(out_dir=None, numbers=None) -> list[CriterionResult]:
    numbers = list(numbers or range(1, 12))
    results, texts = [], {}
    for k in numbers:
        if k == 11:
            res = criterion_11(texts if all(j in texts for j in range(1, 11)) else None)
        else:
            res = CRITERIA[k]()
            texts[k] = res.csv()
        results.append(res)
        if out_dir is not None:
            write_csv(os.path.join(out_dir, f"criterion_{k:02d}.csv"), res.rows)
    return results
