#!/usr/bin/env python3
"""Solution counts across the parameter range for the n = 6 trichotomy.

For each order k in {1, 5, 6} this sweeps the nonlocal parameter a and
tabulates how many radial solutions exist (crossing counts of the
phase-plane level v = a/beta).  For k = 5 a second, zoomed sweep brackets
the accumulation marker beta(5,6), where counts climb as the offset
shrinks — the numerically visible face of solution multiplicity.

Usage: python3 scripts/bifurcation_scan.py [OUTDIR]   (default: ./figures)
"""

import sys

import numpy as np

from khessian import (
    IntegratorConfig,
    ProblemSpec,
    bifurcation_sweep,
    integrate_trajectory,
    thresholds,
)
from khessian.cli import main
from khessian.io import output_dir, write_csv

OUT = sys.argv[1] if len(sys.argv) > 1 else "figures"

for k in (1, 5, 6):
    code = main(["bifurcation", "--n", "6", "--k", str(k), "--out", OUT])
    if code != 0:
        sys.exit(code)

# zoom: counts on both sides of the accumulation marker for k = 5,
# integrated with a tight equilibrium radius to resolve the spiral turns
spec = ProblemSpec(6, 5)
beta = float(thresholds(spec).beta)
traj = integrate_trajectory(spec, IntegratorConfig(eq_radius=1e-9))
offsets = np.array([1e-2, 1e-3, 1e-4, 1e-5])
a_grid = np.sort(np.concatenate([beta * (1 - offsets), beta * (1 + offsets)]))
diagram = bifurcation_sweep(spec, a_grid, traj=traj)

print(f"\nk = 5 zoom around the marker beta = {beta:.10g}:")
for entry in diagram.entries:
    side = "below" if entry.a < beta else "above"
    print(f"  a = {entry.a:<22.12g} ({side})  count = {entry.count}")

path = write_csv(
    output_dir(OUT) / "bifurcation_n6_k5_zoom.csv",
    ("a", "v_star", "count"),
    [
        [e.a for e in diagram.entries],
        [e.v_star for e in diagram.entries],
        [float(e.count) for e in diagram.entries],
    ],
)
print(f"wrote {path}")
