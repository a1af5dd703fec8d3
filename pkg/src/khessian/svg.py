"""Self-contained SVG phase diagrams.

Fixed 800x600 viewBox, generic font families only, every coordinate
rendered at fixed decimal precision: two renders of the same trajectory
are byte-identical except for one timestamp comment on the second line.
"""

from __future__ import annotations

import math
from datetime import datetime, timezone

import numpy as np

from .constants import ProblemSpec, equilibrium_linearization
from .phaseplane import Trajectory

WIDTH, HEIGHT = 800, 600
MARGIN_LEFT, MARGIN_RIGHT = 64.0, 18.0
MARGIN_TOP, MARGIN_BOTTOM = 34.0, 52.0

_ORBIT_COLOR = "#1f6fb4"
_REGION_COLOR = "#b44a1f"
_MARKER_COLOR = "#1f8a4a"
_GRID_COLOR = "#c8c8c8"
_AXIS_COLOR = "#222222"

_MAX_POLYLINE_POINTS = 2400


def _fmt(x: float) -> str:
    """Pixel coordinate at fixed precision (deterministic)."""
    return f"{x:.2f}"


def _nice_step(span: float) -> float:
    """Largest of 1/2/5 x 10^m not exceeding span/4 (>= 4 ticks)."""
    if span <= 0:
        return 1.0
    raw = span / 4.0
    mag = 10.0 ** math.floor(math.log10(raw))
    for mult in (5.0, 2.0, 1.0):
        if mult * mag <= raw:
            return mult * mag
    return mag


def _ticks(lo: float, hi: float) -> list[float]:
    step = _nice_step(hi - lo)
    first = math.ceil(lo / step - 1e-9)
    last = math.floor(hi / step + 1e-9)
    return [t * step for t in range(first, last + 1)]


def _tick_label(value: float) -> str:
    text = f"{value:.6f}".rstrip("0").rstrip(".")
    return text if text not in ("", "-0") else "0"


def _thin(idx_len: int, cap: int) -> np.ndarray:
    """Index subset of at most cap points, always keeping both endpoints."""
    if idx_len <= cap:
        return np.arange(idx_len)
    idx = np.linspace(0, idx_len - 1, cap)
    return np.unique(np.round(idx).astype(int))


def phase_diagram_svg(spec: ProblemSpec, traj: Trajectory) -> str:
    """Render the (v, w) orbit with equilibrium, v = 1 line, and (for
    n - k >= 4) the invariant-region boundary curves."""
    n, k = spec.n, spec.k
    keep = _thin(traj.v.size, _MAX_POLYLINE_POINTS)
    v, w = traj.v[keep], traj.w[keep]

    v_hi = 1.05 * max(float(np.max(v)), 1.0)
    w_hi = 1.05 * max(float(np.max(w)), float(n - k), 1e-30)
    x0, x1 = MARGIN_LEFT, WIDTH - MARGIN_RIGHT
    y0, y1 = HEIGHT - MARGIN_BOTTOM, MARGIN_TOP  # y grows downward in SVG

    def X(vv: float) -> float:
        return x0 + (x1 - x0) * vv / v_hi

    def Y(ww: float) -> float:
        return y0 + (y1 - y0) * ww / w_hi

    out: list[str] = []
    out.append(
        f'<svg xmlns="http://www.w3.org/2000/svg" viewBox="0 0 {WIDTH} {HEIGHT}" '
        f'width="{WIDTH}" height="{HEIGHT}">'
    )
    stamp = datetime.now(timezone.utc).isoformat()
    out.append(f"<!-- generated {stamp} -->")
    out.append(f'<rect width="{WIDTH}" height="{HEIGHT}" fill="#ffffff"/>')

    # gridlines + ticks
    for tv in _ticks(0.0, v_hi):
        px = X(tv)
        out.append(
            f'<line x1="{_fmt(px)}" y1="{_fmt(y0)}" x2="{_fmt(px)}" y2="{_fmt(y1)}" '
            f'stroke="{_GRID_COLOR}" stroke-width="0.5"/>'
        )
        out.append(
            f'<text x="{_fmt(px)}" y="{_fmt(y0 + 18)}" font-family="sans-serif" '
            f'font-size="12" text-anchor="middle" fill="{_AXIS_COLOR}">{_tick_label(tv)}</text>'
        )
    for tw in _ticks(0.0, w_hi):
        py = Y(tw)
        out.append(
            f'<line x1="{_fmt(x0)}" y1="{_fmt(py)}" x2="{_fmt(x1)}" y2="{_fmt(py)}" '
            f'stroke="{_GRID_COLOR}" stroke-width="0.5"/>'
        )
        out.append(
            f'<text x="{_fmt(x0 - 6)}" y="{_fmt(py + 4)}" font-family="sans-serif" '
            f'font-size="12" text-anchor="end" fill="{_AXIS_COLOR}">{_tick_label(tw)}</text>'
        )

    # axes
    out.append(
        f'<line x1="{_fmt(x0)}" y1="{_fmt(y0)}" x2="{_fmt(x1)}" y2="{_fmt(y0)}" '
        f'stroke="{_AXIS_COLOR}" stroke-width="1.2"/>'
    )
    out.append(
        f'<line x1="{_fmt(x0)}" y1="{_fmt(y0)}" x2="{_fmt(x0)}" y2="{_fmt(y1)}" '
        f'stroke="{_AXIS_COLOR}" stroke-width="1.2"/>'
    )
    out.append(
        f'<text x="{_fmt(0.5 * (x0 + x1))}" y="{_fmt(HEIGHT - 14)}" font-family="sans-serif" '
        f'font-size="14" text-anchor="middle" fill="{_AXIS_COLOR}">v</text>'
    )
    out.append(
        f'<text x="{_fmt(16.0)}" y="{_fmt(0.5 * (y0 + y1))}" font-family="sans-serif" '
        f'font-size="14" text-anchor="middle" fill="{_AXIS_COLOR}" '
        f'transform="rotate(-90 16 {_fmt(0.5 * (y0 + y1))})">w</text>'
    )

    # v = 1 marker line
    out.append(
        f'<line x1="{_fmt(X(1.0))}" y1="{_fmt(y0)}" x2="{_fmt(X(1.0))}" y2="{_fmt(y1)}" '
        f'stroke="{_MARKER_COLOR}" stroke-width="1" stroke-dasharray="6,4"/>'
    )
    out.append(
        f'<text x="{_fmt(X(1.0) + 4)}" y="{_fmt(y1 + 14)}" font-family="sans-serif" '
        f'font-size="12" fill="{_MARKER_COLOR}">v = 1</text>'
    )

    # invariant-region boundaries for the node range
    lin = equilibrium_linearization(spec)
    if lin.b_range is not None:
        b = lin.b_range[1]
        vv = np.linspace(0.0, 1.0, 201)
        line_pts = " ".join(
            f"{_fmt(X(t))},{_fmt(Y((n - k) * t))}" for t in vv
        )
        curve_pts = " ".join(
            f"{_fmt(X(t))},{_fmt(Y((n - k) * t ** b))}" for t in vv
        )
        out.append(
            f'<polyline points="{line_pts}" fill="none" stroke="{_REGION_COLOR}" '
            f'stroke-width="1" stroke-dasharray="3,3"/>'
        )
        out.append(
            f'<polyline points="{curve_pts}" fill="none" stroke="{_REGION_COLOR}" '
            f'stroke-width="1" stroke-dasharray="3,3"/>'
        )
        out.append(
            f'<text x="{_fmt(X(0.52))}" y="{_fmt(Y((n - k) * 0.52 ** b) - 6)}" '
            f'font-family="sans-serif" font-size="12" fill="{_REGION_COLOR}">'
            f"w = {n - k} v^b, b = {_tick_label(b)}</text>"
        )

    # the orbit itself
    orbit_pts = " ".join(f"{_fmt(X(a))},{_fmt(Y(bb))}" for a, bb in zip(v, w))
    out.append(
        f'<polyline points="{orbit_pts}" fill="none" stroke="{_ORBIT_COLOR}" '
        f'stroke-width="1.6"/>'
    )

    # terminal / equilibrium marker
    if k < n:
        ev, ew = 1.0, float(n - k)
        label = f"equilibrium (1, {n - k})"
    else:
        ev, ew = float(traj.v[-1]), float(traj.w[-1])
        label = "integrable limit"
    out.append(
        f'<circle cx="{_fmt(X(ev))}" cy="{_fmt(Y(ew))}" r="4" fill="{_MARKER_COLOR}"/>'
    )
    out.append(
        f'<text x="{_fmt(X(ev) + 8)}" y="{_fmt(Y(ew) - 8)}" font-family="sans-serif" '
        f'font-size="12" fill="{_MARKER_COLOR}">{label}</text>'
    )

    # title
    out.append(
        f'<text x="{_fmt(0.5 * (x0 + x1))}" y="{_fmt(22.0)}" font-family="sans-serif" '
        f'font-size="15" text-anchor="middle" fill="{_AXIS_COLOR}">'
        f"phase orbit, n = {n}, k = {k}</text>"
    )
    out.append("</svg>")
    return "\n".join(out) + "\n"


def strip_timestamp(svg_text: str) -> str:
    """Drop the timestamp comment line (for byte-identity comparisons)."""
    return "\n".join(
        line for line in svg_text.splitlines() if not line.startswith("<!-- generated ")
    )
