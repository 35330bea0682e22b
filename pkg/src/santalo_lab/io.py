"""File outputs: versioned CSV reports, region JSON, layered SVG overlays.

All writes are atomic (temporary file in the target directory, then
rename) and all number formatting is fixed, so reruns are byte-identical.
"""

from __future__ import annotations

import csv
import io
import json
import math
import os
import tempfile

import numpy as np

from .geom2d import Polygon, RegionApprox

CSV_HEADER = "# santalo-lab csv v1"
CSV_COLUMNS = ["scenario", "task", "params", "quantity", "value", "tolerance", "verdict",
               "wall_time_s"]
PALETTE = ["#1f4e79", "#c0392b", "#27ae60", "#8e44ad", "#d35400", "#16a085", "#7f8c8d",
           "#2c3e50"]


def atomic_write(path, text: str) -> None:
    path = os.fspath(path)
    folder = os.path.dirname(os.path.abspath(path))
    os.makedirs(folder, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=folder, prefix=".tmp-", suffix=os.path.basename(path))
    try:
        with os.fdopen(fd, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def fmt(value) -> str:
    """Fixed-width formatting for report values (12 significant digits)."""
    if isinstance(value, (bool, np.bool_)):
        return "true" if value else "false"
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    if isinstance(value, (float, np.floating)):
        v = float(value)
        if math.isnan(v):
            return "nan"
        if math.isinf(v):
            return "inf" if v > 0 else "-inf"
        return f"{v:.12g}"
    return str(value)


def fmt_params(params: dict) -> str:
    return ";".join(f"{k}={fmt(v)}" for k, v in sorted(params.items()))


def report_row(scenario, task, params, quantity, value, tolerance="", verdict="",
               wall_time=0.0) -> dict:
    return {"scenario": scenario, "task": task, "params": fmt_params(params),
            "quantity": quantity, "value": fmt(value),
            "tolerance": fmt(tolerance) if tolerance != "" else "",
            "verdict": verdict if isinstance(verdict, str) else ("pass" if verdict else "fail"),
            "wall_time_s": f"{wall_time:.3f}"}


def csv_text(rows) -> str:
    buf = io.StringIO()
    buf.write(CSV_HEADER + "\n")
    w = csv.DictWriter(buf, fieldnames=CSV_COLUMNS, lineterminator="\n")
    w.writeheader()
    for r in rows:
        w.writerow(r)
    return buf.getvalue()


def write_csv(path, rows) -> None:
    atomic_write(path, csv_text(rows))


def strip_wall_time(text: str) -> str:
    """Drop the wall-time column (the only nondeterministic field)."""
    out = []
    for line in text.splitlines():
        if line.startswith("#"):
            out.append(line)
        else:
            out.append(line.rsplit(",", 1)[0])
    return "\n".join(out) + "\n"


def write_json(path, obj) -> None:
    atomic_write(path, json.dumps(obj, indent=2, sort_keys=True) + "\n")


# -- SVG -------------------------------------------------------------------

def _layer_points(layer):
    if isinstance(layer, Polygon):
        return np.asarray(layer.vertices), True
    if isinstance(layer, RegionApprox):
        if layer.is_empty or layer.dim != 2:
            return np.empty((0, 2)), False
        return layer.boundary_points(), layer.polygon is not None
    pts = np.asarray(layer, float).reshape(-1, 2)
    return pts, len(pts) >= 3


def svg_text(layers, labels=None, title="") -> str:
    """Layered SVG with a 1000×1000 viewBox; world y points up."""
    labels = list(labels or [])
    geo = [_layer_points(layer) for layer in layers]
    allpts = [p for p, _ in geo if len(p)]
    lines = ['<?xml version="1.0" encoding="UTF-8"?>',
             '<svg xmlns="http://www.w3.org/2000/svg" viewBox="0 0 1000 1000" '
             'width="1000" height="1000">',
             '<rect x="0" y="0" width="1000" height="1000" fill="#ffffff"/>']
    if title:
        lines.append(f'<title>{title}</title>')
    if allpts:
        P = np.concatenate(allpts)
        lo, hi = P.min(axis=0), P.max(axis=0)
        c = 0.5 * (lo + hi)
        span = float(max(hi[0] - lo[0], hi[1] - lo[1], 1e-12))
        k = 800.0 / span
        tx, ty = 500.0 - k * c[0], 500.0 + k * c[1]
        lines.append(f'<g transform="matrix({k:.6f} 0 0 {-k:.6f} {tx:.6f} {ty:.6f})">')
        for idx, (pts, closed) in enumerate(geo):
            if not len(pts):
                continue
            color = PALETTE[idx % len(PALETTE)]
            d = " ".join(f"{'M' if i == 0 else 'L'}{x:.6f} {y:.6f}" for i, (x, y) in
                         enumerate(pts))
            if closed:
                d += " Z"
            lines.append(f'<path id="layer{idx}" d="{d}" fill="none" stroke="{color}" '
                         f'stroke-width="2" vector-effect="non-scaling-stroke"/>')
        lines.append("</g>")
    for idx, lab in enumerate(labels):
        color = PALETTE[idx % len(PALETTE)]
        y = 30 + 22 * idx
        lines.append(f'<rect x="20" y="{y - 12}" width="14" height="14" fill="{color}"/>')
        lines.append(f'<text x="42" y="{y}" font-family="monospace" font-size="16">{lab}</text>')
    lines.append("</svg>")
    return "\n".join(lines) + "\n"


def emit_svg(layers, path, labels=None, title="") -> None:
    atomic_write(path, svg_text(layers, labels, title))
