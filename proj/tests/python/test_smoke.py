"""Smoke tests for the python bindings: build models, evaluate curvature,
run a couple of identity checks end to end."""

import math
import sys

import _staticlab as sl


def approx(a, b, tol):
    assert abs(a - b) <= tol, f"{a} != {b} (tol {tol})"


def main():
    names = sl.model_names()
    assert "s3" in names and "warped5" in names, names

    s3 = sl.build_model("s3")
    assert s3.dim == 3
    x = [1.1, 0.9, 0.4]
    approx(sl.scalar_curvature(s3, x), 6.0, 1e-9)
    approx(sl.vacuum_static_residual(s3, x), 0.0, 1e-8)

    ric = sl.ricci(s3, x)
    assert len(ric) == 3 and len(ric[0]) == 3

    p = sl.build_model("s1xs2")
    approx(sl.scalar_curvature(p, [0.8, 1.2, 0.5]), 2.0, 1e-9)

    # level-set geometry of the equatorial two-sphere
    eq = sl.slice_geometry(s3, 0.0)
    approx(eq["H"], 0.0, 1e-8)
    approx(eq["W"], 1.0, 1e-10)
    approx(eq["slice_scalar"], 2.0, 1e-8)

    # the manufactured model has nonzero D and satisfies the region identity
    m = sl.build_model("warped5")
    y = [1.9, 1.2, 0.7, 0.9, 1.4]
    approx(sl.unified_residual(m, y), 0.0, 1e-6)
    assert sl.d_two_routes_difference(m, y) < 1e-5
    d = sl.d_tensor(m, y)
    flat = [abs(v) for a in d for b in a for v in b]
    assert max(flat) > 1e-3

    ic = sl.check_main_identity(m, 0.5, 1.5, p=2, nodes=16)
    assert ic["pass"] and ic["converged"], ic

    pw = sl.find_periodic_warp(3, 6.0, 0.5)
    assert pw["found"] and pw["closure_error"] < 1e-8, pw

    print("python smoke: ok")
    return 0


if __name__ == "__main__":
    sys.exit(main())
