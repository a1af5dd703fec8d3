#!/usr/bin/env python3
"""Reproduce the three n = 6 phase-plane panels (k = 6, 1, 5).

Writes trajectory CSVs and SVG phase diagrams — equilibrium marker,
v = 1 line, and (when the order gap is at least 4) invariant-region
boundaries overlaid — into the output directory.

Usage: python3 scripts/phase_panels.py [OUTDIR]   (default: ./figures)
"""

import sys

from khessian.cli import main

OUT = sys.argv[1] if len(sys.argv) > 1 else "figures"

for n, k in ((6, 6), (6, 1), (6, 5)):
    code = main(["phase", "--n", str(n), "--k", str(k), "--out", OUT])
    if code != 0:
        sys.exit(code)

print(f"three panels written to {OUT}/")
