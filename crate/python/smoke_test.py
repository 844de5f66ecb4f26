#!/usr/bin/env python3
"""Smoke test for the cy4py extension module.

Builds nothing itself: point it at a compiled cdylib with

    cargo build -p cy4-py
    python3 python/smoke_test.py
"""

import json
import pathlib
import shutil
import sys
import tempfile

ROOT = pathlib.Path(__file__).resolve().parent.parent


def load_module():
    candidates = [
        ROOT / "target" / "debug" / "libcy4py.so",
        ROOT / "target" / "release" / "libcy4py.so",
    ]
    for built in candidates:
        if built.exists():
            break
    else:
        sys.exit("build the extension first: cargo build -p cy4-py")
    stage = pathlib.Path(tempfile.mkdtemp(prefix="cy4py-"))
    shutil.copy(built, stage / "cy4py.so")
    sys.path.insert(0, str(stage))
    import cy4py

    return cy4py


def main():
    cy4py = load_module()
    checks = 0

    def check(cond, label):
        nonlocal checks
        if not cond:
            sys.exit(f"FAIL: {label}")
        checks += 1
        print(f"ok: {label}")

    c4 = json.loads((ROOT / "fixtures" / "c4.json").read_text())
    q = cy4py.CY4Quiver(json.dumps(c4))
    check(q.is_dga(), "d^2 = 0 on the affine-4-space quiver")
    check(q.master_residue() == "", "master equation holds")
    check(len(q.generators()) == 15, "4 + 6 + 4 + 1 generators")
    check("x2;x1" in q.differential("c12"), "d(c12) is the commutator [x1, x2]")
    check(q.euler_form({"v": 3}, {"v": 5}) == 0, "Euler pairing vanishes on affine 4-space")

    js = q.graft("js")
    check(js.is_dga(), "JS graft stays a dg-quiver")
    check(len(js.generators()) == 18, "JS graft adds three generators")

    rep = {
        "dims": {"v": 1, "@v1": 1},
        "matrices": {
            "x1": [["0"]],
            "x2": [["0"]],
            "x3": [["0"]],
            "x4": [["0"]],
            "@e1:v": [["1"]],
        },
    }
    dims, ext = js.ext_dims(json.dumps(rep))
    check(ext == [1, 4, 6, 4, 1], "tangent dimensions of the one-point ideal")
    check(sum(d * (-1) ** i for i, d in enumerate(dims)) == 0, "deformation Euler characteristic")

    check(cy4py.fixed_point_count(4) == 26, "26 monomial ideals of colength 4")
    check(len(cy4py.fixed_points(2)) == 4, "4 staircases of size 2")

    series = cy4py.expand_power(1, "local", 5)
    check("z^0: ((1) / (l))" in series, "local expansion leading coefficient")
    check(cy4py.verify_pentagon(3, 4), "pentagon coherence")
    check(cy4py.double_dual_discrepancy(3) == "-1", "double-dual sign at odd degree")
    check(cy4py.ot_comparison(1, 1, 0) == "-1", "orientation comparison sign")

    classes = (ROOT / "fixtures" / "classes.json").read_text()
    check("[P,X_b]" in cy4py.js_rhs(classes, [1, 0]), "pair wall-crossing bracket")
    check("Om_bg" in cy4py.invert_js(classes, [1, 1]), "inversion in the generators")
    check(cy4py.bracket_pushdown_check(3), "pushdown collapse at rank 3")

    rows = cy4py.verify("quiver")
    check(all(passed for (_, passed, _) in rows), "quiver verification suite")

    print(f"\nall {checks} smoke checks passed")


if __name__ == "__main__":
    main()
