#!/usr/bin/env python3
"""Shooting experiment around the critical power for four (n, k) pairs.

For each pair the radial shot from a unit center value either returns to
zero at a finite radius (a solution exists on some ball, subcritical
power) or stays negative up to the cap (critical and supercritical
powers).  The sweep samples powers at fixed fractions of the critical
exponent gamma so the dichotomy is visible in one table per pair.

Usage: python3 scripts/shooting_dichotomy.py [OUTDIR]   (default: ./figures)
"""

import sys

from khessian import ProblemSpec, critical_exponent
from khessian.cli import main

OUT = sys.argv[1] if len(sys.argv) > 1 else "figures"

for n, k in ((2, 1), (3, 1), (3, 2), (6, 2)):
    gamma = float(critical_exponent(ProblemSpec(n, k)))
    fractions = (0.5, 0.8, 0.95, 1.0, 1.2)
    sweep = ",".join(f"{f * gamma:.6g}" for f in fractions)
    print(f"\n(n, k) = ({n}, {k}), gamma = {gamma:g}, powers = {sweep}")
    code = main(
        ["shoot", "--n", str(n), "--k", str(k), "--sweep", sweep, "--out", OUT]
    )
    if code != 0:
        sys.exit(code)
