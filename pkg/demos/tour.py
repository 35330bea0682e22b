"""Short tour: regions of a square and of a Gaussian, nested-region overlay.

    python3 demos/tour.py [OUT_DIR]
"""

import math
import os
import sys

from santalo_lab.geom2d import SQUARE, floating_body_body, product_body, santalo_point_body
from santalo_lab.geom2d import santalo_region_body
from santalo_lab.io import emit_svg
from santalo_lab.logconcave import Gaussian, expnorm
from santalo_lab.regions import (check_inclusion, floating_body_fn, meyer_constant,
                                 normalized_product, santalo_region_fn)


def main(out):
    os.makedirs(out, exist_ok=True)
    x0 = santalo_point_body(SQUARE)
    print(f"square: Santalo point {x0}, product / pi^2 = {product_body(SQUARE, x0) / math.pi**2:.6f}")

    lam = 0.25
    d = meyer_constant(lam)
    F = floating_body_body(SQUARE, lam, 128)
    S = santalo_region_body(SQUARE, d, 128)
    print(f"square: F(K, {lam}) area {F.polygon.area:.6f}, S(K, {d:.4f}) area {S.polygon.area:.6f}")
    emit_svg([SQUARE, F, S], os.path.join(out, "square_nested.svg"),
             ["K", f"F(K, {lam})", f"S(K, {d:.4f})"], title="square")

    for slug, name, f in (("gaussian", "gaussian", Gaussian()), ("l1", "exp(-|x|_1)", expnorm(1))):
        Ff = floating_body_fn(f, lam, 128)
        rep = check_inclusion(Ff, f, d)
        print(f"{name}: max product on F = {max(rep.values):.6f} <= {d:.6f}: {rep.holds}")
        print(f"{name}: product at 0 = {normalized_product(f, [0.0, 0.0]):.6f}")
        Sf = santalo_region_fn(f, d, 128)
        emit_svg([Ff, Sf], os.path.join(out, f"{slug}_nested.svg"),
                 [f"F(f, {lam})", f"S(f, {d:.4f})"], title=name)


if __name__ == "__main__":
    main(sys.argv[1] if len(sys.argv) > 1 else "demo_out")
