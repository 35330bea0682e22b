"""Command-line scenario runner.

    santalo-lab run SCENARIO.json [--dirs N] [--rays N] [--grid N] [--seed S] [--out DIR]
    santalo-lab sweep --task mahler --corpus random --count N --seed S [--out DIR]
    santalo-lab converge --kind truncation|sconcave [--out DIR]
    santalo-lab acceptance [--criteria 1,2,...] [--out DIR]

Exit status: 0 when every verdict holds, 2 when some verdict fails,
1 on malformed input.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys
import time

import numpy as np

from ._parallel import set_threads
from .errors import InputError, SantaloError
from .geom2d import (CORPUS_SEED, DEFAULT_DIRS, HEXAGON, SQUARE, Polygon, floating_body_body,
                     polar_body, product_body, random_polygon_corpus, santalo_point_body,
                     santalo_region_body)
from .io import emit_svg, report_row, write_csv, write_json
from .logconcave import GridBacked, LogConcaveFn, dual_mass, function_from_spec, santalo_point_fn
from .convexfun import GridFn

TASKS = ("polar", "floating", "santalo-region", "check-inclusion", "converge", "lift-verify",
         "mahler-sweep")
NAMED_POLYGONS = {"square": SQUARE, "hexagon": HEXAGON}


# -- scenario parsing -----------------------------------------------------

def _as_list(v):
    return list(v) if isinstance(v, (list, tuple)) else [v]


def validate(scn: dict, overrides: dict) -> dict:
    """Normalize a scenario and collect every field problem before failing."""
    problems = []
    if not isinstance(scn, dict):
        raise InputError("scenario must be a JSON object")
    task = scn.get("task")
    if task not in TASKS:
        problems.append(f"task: must be one of {', '.join(TASKS)}")
    params = dict(scn.get("params", {}) or {})
    for k in ("dirs", "rays", "grid", "seed"):
        if overrides.get(k) is not None:
            params[k] = overrides[k]
    for key in ("lambda",):
        if key in params:
            for lam in _as_list(params[key]):
                if not isinstance(lam, (int, float)) or not 0 < lam < 0.5:
                    problems.append(f"params.lambda: {lam!r} violates 0 < lambda < 1/2")
    for key in ("t", "d"):
        if key in params:
            for t in _as_list(params[key]):
                if not isinstance(t, (int, float)) or not t > 0:
                    problems.append(f"params.{key}: {t!r} violates {key} > 0")
    for key in ("dirs", "rays"):
        if key in params and (not isinstance(params[key], int) or params[key] < 16):
            problems.append(f"params.{key}: {params[key]!r} violates {key} >= 16")
    if "grid" in params and (not isinstance(params["grid"], int) or params["grid"] < 3):
        problems.append(f"params.grid: {params['grid']!r} must be an integer >= 3")
    params.setdefault("seed", CORPUS_SEED)
    inp = scn.get("input", {}) or {}
    obj = None
    if task != "mahler-sweep" and task != "converge" or inp:
        try:
            obj = load_input(inp, params.get("grid"))
        except InputError as exc:
            problems.extend(f"input: {p}" for p in exc.problems)
        except (ValueError, KeyError, TypeError) as exc:
            problems.append(f"input: {exc}")
    if problems:
        raise InputError(problems)
    return {"id": str(scn.get("id", "scenario")), "task": task, "params": params,
            "input": obj, "out": scn.get("out", {}) or {}}


def load_input(inp: dict, grid=None):
    if "polygon" in inp:
        p = inp["polygon"]
        if isinstance(p, str):
            if p not in NAMED_POLYGONS:
                raise InputError(f"unknown named polygon {p!r}")
            return NAMED_POLYGONS[p]
        return Polygon.from_json(p)
    if "function" in inp:
        f = function_from_spec(inp["function"])
        if grid:
            box = np.asarray(f.box(), float)
            g = GridFn.sample(f.potential, box, int(grid))
            f = GridBacked(g, even=f.even)
        return f
    raise InputError("input needs a 'function' or 'polygon' entry")


# -- tasks --------------------------------------------------------------------

class _Report:
    def __init__(self, scn):
        self.scn = scn
        self.rows = []
        self.ok = True
        self.start = time.perf_counter()
        self.info({"seed": scn["params"]["seed"]}, "seed", scn["params"]["seed"])

    def add(self, params, quantity, value, tolerance, passed):
        self.ok &= bool(passed)
        self.rows.append(report_row(self.scn["id"], self.scn["task"], params, quantity, value,
                                    tolerance, bool(passed),
                                    time.perf_counter() - self.start))

    def info(self, params, quantity, value):
        self.rows.append(report_row(self.scn["id"], self.scn["task"], params, quantity, value,
                                    "", "info", time.perf_counter() - self.start))


def _body_layer(obj):
    if isinstance(obj, Polygon):
        return obj
    if obj.dim == 2 and obj.kind == "indicator":
        return obj.body
    return None


def task_polar(scn, rep, art):
    obj = scn["input"]
    if isinstance(obj, Polygon):
        x0 = santalo_point_body(obj)
        P = polar_body(obj, x0)
        prod = product_body(obj, x0) / math.pi ** 2
        rep.info({}, "santalo_point_x", x0[0])
        rep.info({}, "santalo_point_y", x0[1])
        rep.info({}, "polar_area", P.area)
        rep.add({}, "normalized_min_product", prod, 1.0, prod <= 1.0 + 1e-12)
        art["json"] = {"polar": P.to_json(), "center": x0.tolist()}
        art["svg"] = ([obj, P], ["body", "polar at Santalo point"])
        return
    f = obj
    x0 = santalo_point_fn(f)
    M = f.mass()
    G = dual_mass(f, x0)
    prod = M * G / (2 * math.pi) ** f.dim
    rep.info({}, "mass", M)
    rep.info({}, "polar_mass", f.polar().mass())
    for k, v in enumerate(x0):
        rep.info({"axis": k}, "santalo_point", v)
    rep.add({}, "normalized_min_product", prod, 1.0, prod <= 1.0 + 1e-6)
    art["json"] = {"santalo_point": x0.tolist(), "mass": M, "dual_mass": G}


def task_floating(scn, rep, art):
    from .regions import floating_body_fn
    obj, p = scn["input"], scn["params"]
    dirs = p.get("dirs", DEFAULT_DIRS)
    layers, labels, regions = [], [], []
    body = _body_layer(obj)
    if body is not None:
        layers.append(body)
        labels.append("body")
    for lam in _as_list(p.get("lambda", 0.25)):
        F = floating_body_body(obj, lam, dirs) if isinstance(obj, Polygon) else \
            floating_body_fn(obj, lam, dirs)
        regions.append(F.to_json())
        rp = {"lambda": lam, "dirs": dirs}
        if F.is_empty:
            rep.add(rp, "empty", True, "", not getattr(obj, "even", True))
            continue
        rep.info(rp, "diameter", F.diameter())
        if F.polygon is not None:
            rep.info(rp, "area", F.polygon.area)
            layers.append(F)
            labels.append(f"F lambda={lam:g}")
        res = float(np.max(F.residuals))
        rep.add(rp, "max_mass_residual", res, 1e-10, res <= 1e-10)
    art["json"] = {"regions": regions}
    art["svg"] = (layers, labels)


def task_santalo(scn, rep, art):
    from .regions import santalo_region_fn
    obj, p = scn["input"], scn["params"]
    rays = p.get("rays", DEFAULT_DIRS)
    layers, labels, regions = [], [], []
    body = _body_layer(obj)
    if body is not None:
        layers.append(body)
        labels.append("body")
    for t in _as_list(p.get("t", 1.0)):
        S = santalo_region_body(obj, t, rays) if isinstance(obj, Polygon) else \
            santalo_region_fn(obj, t, rays)
        regions.append(S.to_json())
        rp = {"t": t, "rays": rays}
        rep.info(rp, "empty", S.is_empty)
        if S.is_empty:
            continue
        rmax = float(np.max(S.radii))
        if "max_radius" in p:
            rep.add(rp, "max_radius", rmax, p["max_radius"], rmax <= p["max_radius"])
        else:
            rep.info(rp, "max_radius", rmax)
        res = float(np.max(S.residuals))
        rep.add(rp, "max_radius_residual", res, 1e-8, res <= 1e-8 * max(1.0, rmax))
        if S.polygon is not None:
            rep.info(rp, "area", S.polygon.area)
            layers.append(S)
            labels.append(f"S t={t:g}")
    art["json"] = {"regions": regions}
    art["svg"] = (layers, labels)


def task_inclusion(scn, rep, art):
    from .regions import check_inclusion, floating_body_fn, meyer_constant, santalo_region_fn
    obj, p = scn["input"], scn["params"]
    dirs = p.get("dirs", DEFAULT_DIRS)
    rays = p.get("rays", DEFAULT_DIRS)
    tol = float(p.get("tol", 1e-6))
    lams = _as_list(p.get("lambda", 0.25))
    ds = _as_list(p["d"]) if "d" in p else [meyer_constant(lam) for lam in lams]
    if len(ds) != len(lams):
        raise InputError("params.d: needs one value per lambda")
    layers, labels, reports = [], [], []
    body = _body_layer(obj)
    if body is not None:
        layers.append(body)
        labels.append("body")
    for lam, d in zip(lams, ds):
        if isinstance(obj, Polygon):
            F = floating_body_body(obj, lam, dirs)
        else:
            F = floating_body_fn(obj, lam, dirs)
        r = check_inclusion(F, obj, d, tol=tol)
        rp = {"lambda": lam, "d": d}
        rep.info(rp, "max_normalized_product", float(np.max(r.values)))
        rep.add(rp, "max_violation", r.max_violation, tol, r.holds)
        reports.append({"lambda": lam, "d": d, "max_violation": r.max_violation,
                        "holds": r.holds})
        if F.polygon is not None:
            S = santalo_region_body(obj, d, rays) if isinstance(obj, Polygon) else \
                santalo_region_fn(obj, d, rays)
            layers += [F, S]
            labels += [f"F lambda={lam:g}", f"S d={d:.6g}"]
    art["json"] = {"inclusion": reports}
    art["svg"] = (layers, labels)


def task_converge(scn, rep, art):
    from .logconcave import Gaussian
    from .regions import region_convergence
    p = scn["params"]
    f = scn["input"] if scn["input"] is not None else Gaussian()
    kind = p.get("kind", "truncation-floating")
    param = float(p.get("param", 0.25))
    default = (1, 2, 4, 8, 16, 32, 64) if kind.startswith(("sconcave", "ls")) else (1, 2, 4, 8)
    schedule = tuple(p.get("schedule", default))
    T = region_convergence(f, param, kind, schedule, dirs=p.get("dirs", DEFAULT_DIRS),
                           threshold=float(p.get("threshold", 1e-2)))
    for stage, dist in zip(schedule, T.distances):
        rep.info({"kind": kind, "param": param, "stage": stage}, "hausdorff", dist)
    rep.add({"kind": kind, "param": param}, "monotone_10pct", T.monotone, "", T.monotone)
    rep.add({"kind": kind, "param": param}, "final_hausdorff", T.final, T.threshold,
            T.final <= T.threshold)
    art["json"] = {"kind": kind, "param": param, "schedule": list(schedule),
                   "distances": list(T.distances)}


def task_lift(scn, rep, art):
    from .lifting import (lift_body, lifted_volume, verify_polar_lift,
                          verify_projection_floating)
    from .logconcave import s_approx
    f, p = scn["input"], scn["params"]
    if not isinstance(f, LogConcaveFn) or f.dim != 1:
        raise InputError("input: lift-verify needs a 1D function")
    for s in _as_list(p.get("s", [1, 2])):
        g = s_approx(f, s) if p.get("approximate", True) else f
        L = lift_body(g, s)
        err = abs(L.volume() / lifted_volume(g, s) - 1.0)
        rep.add({"s": s}, "volume_identity_rel", err, 1e-3, err <= 1e-3)
        if s == 1:
            pl = verify_polar_lift(g, 1)
            rep.add({"s": 1}, "polar_lift_hausdorff", pl.hausdorff, 5e-3, pl.hausdorff <= 5e-3)
            art.setdefault("svg", ([L.polygon], ["K_1(g)"]))
    for lam in _as_list(p.get("lambda", [0.25])):
        pr = verify_projection_floating(f, lam, 1)
        rep.add({"lambda": lam}, "projection_defect", pr.defect, 1e-3, pr.defect <= 1e-3)


def task_mahler(scn, rep, art):
    p = scn["params"]
    count = int(p.get("count", 20))
    corpus = p.get("corpus", "random")
    if corpus == "random":
        bodies = random_polygon_corpus(count, int(p["seed"]))
    elif corpus == "regular":
        bodies = [Polygon.regular(m) for m in range(3, 3 + count)]
    else:
        raise InputError(f"params.corpus: unknown corpus {corpus!r}")
    values = []
    for k, K in enumerate(bodies):
        prod = product_body(K, santalo_point_body(K))
        values.append(prod)
        rep.add({"body": k, "vertices": len(K)}, "min_product", prod, math.pi ** 2,
                prod <= math.pi ** 2)
    art["json"] = {"corpus": corpus, "seed": p["seed"], "min_products": values}


RUNNERS = {"polar": task_polar, "floating": task_floating, "santalo-region": task_santalo,
           "check-inclusion": task_inclusion, "converge": task_converge,
           "lift-verify": task_lift, "mahler-sweep": task_mahler}


def run_scenario(scn: dict, base_dir: str, out_dir: str | None = None) -> bool:
    rep = _Report(scn)
    art = {}
    RUNNERS[scn["task"]](scn, rep, art)
    folder = out_dir or base_dir
    outs = scn["out"]
    write_csv(os.path.join(folder, outs.get("csv", f"{scn['id']}.csv")), rep.rows)
    if "json" in art:
        payload = dict(art["json"], id=scn["id"], task=scn["task"], seed=scn["params"]["seed"])
        write_json(os.path.join(folder, outs.get("json", f"{scn['id']}.json")), payload)
    if "svg" in art:
        layers, labels = art["svg"]
        emit_svg(layers, os.path.join(folder, outs.get("svg", f"{scn['id']}.svg")), labels,
                 title=scn["id"])
    return rep.ok


# -- entry point -------------------------------------------------------------

def _parser():
    ap = argparse.ArgumentParser(prog="santalo-lab", description=__doc__.split("\n")[0])
    ap.add_argument("--threads", type=int, default=None, help="worker threads for sweeps")
    sub = ap.add_subparsers(dest="command", required=True)
    r = sub.add_parser("run", help="run one scenario file")
    r.add_argument("scenario")
    for flag in ("--dirs", "--rays", "--grid", "--seed"):
        r.add_argument(flag, type=int, default=None)
    r.add_argument("--out", default=None, help="output directory (default: scenario folder)")
    s = sub.add_parser("sweep", help="corpus sweeps")
    s.add_argument("--task", choices=["mahler"], default="mahler")
    s.add_argument("--corpus", choices=["random", "regular"], default="random")
    s.add_argument("--count", type=int, default=20)
    s.add_argument("--seed", type=int, default=CORPUS_SEED)
    s.add_argument("--out", default=".")
    c = sub.add_parser("converge", help="convergence suites for the Gaussian")
    c.add_argument("--kind", choices=["truncation", "truncation-santalo", "sconcave", "ls"],
                   default="truncation")
    c.add_argument("--param", type=float, default=None)
    c.add_argument("--dirs", type=int, default=DEFAULT_DIRS)
    c.add_argument("--out", default=".")
    a = sub.add_parser("acceptance", help="run acceptance criteria 1-11")
    a.add_argument("--criteria", default="1-11", help="e.g. 1,2,5 or 1-10")
    a.add_argument("--out", default=None)
    return ap


def _parse_criteria(text):
    out = []
    for part in text.split(","):
        if "-" in part:
            lo, hi = part.split("-")
            out.extend(range(int(lo), int(hi) + 1))
        elif part.strip():
            out.append(int(part))
    return out


def main(argv=None) -> int:
    args = _parser().parse_args(argv)
    if args.threads:
        set_threads(args.threads)
    try:
        if args.command == "run":
            with open(args.scenario, encoding="utf-8") as fh:
                try:
                    raw = json.load(fh)
                except json.JSONDecodeError as exc:
                    raise InputError(f"scenario: invalid JSON ({exc})") from exc
            scn = validate(raw, {"dirs": args.dirs, "rays": args.rays, "grid": args.grid,
                                 "seed": args.seed})
            ok = run_scenario(scn, os.path.dirname(os.path.abspath(args.scenario)), args.out)
        elif args.command == "sweep":
            scn = validate({"id": f"mahler-{args.corpus}", "task": "mahler-sweep",
                            "params": {"count": args.count, "corpus": args.corpus,
                                       "seed": args.seed}}, {})
            ok = run_scenario(scn, args.out)
        elif args.command == "converge":
            kind = {"truncation": "truncation-floating", "sconcave": "sconcave-floating",
                    "truncation-santalo": "truncation-santalo", "ls": "ls-santalo"}[args.kind]
            params = {"kind": kind, "dirs": args.dirs}
            inp = {}
            if kind == "ls-santalo":
                inp = {"function": {"kind": "truncated", "params": {
                    "base": {"kind": "gaussian", "params": {"dim": 1}}, "t": 2.0}}}
            if args.param is not None:
                params["param"] = args.param
            elif kind in ("truncation-santalo", "ls-santalo"):
                params["param"] = 2.0
            scn = validate({"id": f"converge-{args.kind}", "task": "converge", "input": inp,
                            "params": params}, {})
            ok = run_scenario(scn, args.out)
        else:
            from .acceptance import run_all
            results = run_all(args.out, _parse_criteria(args.criteria))
            for res in results:
                print(res.line())
            ok = all(r.passed for r in results)
    except InputError as exc:
        for p in exc.problems:
            print(f"input error: {p}", file=sys.stderr)
        return 1
    except (OSError, SantaloError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    return 0 if ok else 2


if __name__ == "__main__":
    sys.exit(main())
