#!/usr/bin/env python3
"""Smoke test for the diffpuiseux_py extension module.

Build the module first:

    cargo build -p diffpuiseux-python --release

then run this script with the same Python the build configured:

    python3 python/smoke_test.py
"""

import json
import os
import shutil
import sys
import tempfile
from fractions import Fraction


def locate_library(repo_root):
    candidates = [
        os.path.join(repo_root, "target", profile, name)
        for profile in ("release", "debug")
        for name in ("libdiffpuiseux_py.so", "diffpuiseux_py.so", "libdiffpuiseux_py.dylib")
    ]
    for path in candidates:
        if os.path.exists(path):
            return path
    sys.exit("extension not found; run: cargo build -p diffpuiseux-python --release")


def import_module(repo_root):
    lib = locate_library(repo_root)
    stage = tempfile.mkdtemp(prefix="diffpuiseux_py_")
    shutil.copy(lib, os.path.join(stage, "diffpuiseux_py.so"))
    sys.path.insert(0, stage)
    import diffpuiseux_py

    return diffpuiseux_py


def frac(s):
    num, den = s.split("/")
    return Fraction(int(num), int(den))


def check(label, condition):
    if not condition:
        sys.exit(f"FAIL {label}")
    print(f"PASS {label}")


def main():
    repo_root = os.path.dirname(os.path.dirname(os.path.abspath(__file__)))
    dp = import_module(repo_root)

    # ramified exact solutions of y0^2 = x
    report = json.loads(dp.solve("y0^2 - x"))
    kinds = [s["kind"] for s in report["solutions"]]
    check("two exact leaves for y0^2 - x", kinds == ["exact-leaf", "exact-leaf"])
    check("ramification nu = 2", all(s["nu"] == 2 for s in report["solutions"]))
    exps = {frac(s["terms"][0]["exp"]) for s in report["solutions"]}
    check("leading exponent 1/2", exps == {Fraction(1, 2)})
    coeffs = sorted(frac(s["terms"][0]["coeff"]["coords"][0]) for s in report["solutions"])
    check("coefficients -1 and 1", coeffs == [Fraction(-1), Fraction(1)])
    check("degree bound holds", report["degree_bound"]["ok"])

    # the continuum example: free coefficient and exponent
    report = json.loads(dp.solve("x*y0*y2 - x*y1^2 + y0*y1"))
    kinds = sorted(s["kind"] for s in report["solutions"])
    check("continuum family reported", "continuum-family" in kinds)
    f = dp.DiffPoly.parse("x*y0*y2 - x*y1^2 + y0*y1")
    check("oracle: 5 x^(7/3) solves exactly", f.residual([("5/1", "7/3")]) == [])
    check("oracle: -2/3 x^(-4/5) solves exactly", f.residual([("-2/3", "-4/5")]) == [])

    # exponential truncation of y' = y + 1
    report = json.loads(dp.solve("y' - y - 1", max_exponent="4"))
    truncated = [s for s in report["solutions"] if s["kind"] == "truncated"]
    check("one truncated branch", len(truncated) == 1)
    terms = [(frac(t["coeff"]["coords"][0]), frac(t["exp"])) for t in truncated[0]["terms"]]
    expected = [
        (Fraction(1), Fraction(1)),
        (Fraction(1, 2), Fraction(2)),
        (Fraction(1, 6), Fraction(3)),
        (Fraction(1, 24), Fraction(4)),
    ]
    check("e^x - 1 coefficients", terms == expected)
    families = [s for s in report["solutions"] if s["kind"] == "parametric-family"]
    check("parametric family at mu = 0", len(families) == 1 and families[0]["free_parameters"]["mu"] == "0/1")

    # materialize the family: y = 4 e^x - 1 starts 3 + 4x + 2x^2
    report = json.loads(dp.solve("y' - y - 1", max_exponent="2", params={"c0": "3"}))
    materialized = [
        s
        for s in report["solutions"]
        if s["kind"] == "truncated" and s["terms"] and s["terms"][0]["exp"] == "0/1"
    ]
    check("materialized c0 = 3 branch", len(materialized) == 1)
    got = [frac(t["coeff"]["coords"][0]) for t in materialized[0]["terms"]]
    check("4 e^x - 1 coefficients", got == [Fraction(3), Fraction(4), Fraction(2)])

    # field extension: y0^2 = 2x needs sqrt(2)
    report = json.loads(dp.solve("y0^2 - 2*x"))
    sol = report["solutions"][0]
    check("extension field minimal polynomial", sol["field"]["min_poly"] == "Z^2 - 2")

    # polygon rendering
    f = dp.DiffPoly.parse("y0^2 - x")
    check("ascii polygon shows mu=1/2", "mu=1/2" in f.polygon_ascii())
    check("svg polygon renders", f.polygon_svg().startswith("<svg"))

    print("smoke test: all checks passed")


if __name__ == "__main__":
    main()
