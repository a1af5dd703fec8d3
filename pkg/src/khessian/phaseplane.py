"""Phase-plane dynamics of the radial exponential k-Hessian problem.

With t = log s, v = ((1/k) u_s s)^k and w = lambda k^{-k} s^k e^{-u},
radial solutions of S_k(u) = lambda e^{-u} on the punctured unit ball
become orbits of the autonomous system

    v' = -(n-k) v + w,
    w' = k w (1 - v^{1/k}),

on the closed first quadrant.  Solutions regular at the origin form the
single orbit leaving (0,0) along the unstable direction w = n v.  For
k < n the interior rest point (1, n-k) carries the Lyapunov function L
below; for k = n the system is integrable and orbits drift to the line
w = 0 with v -> ((n+1)/n)^n.

Each boundary point of an orbit corresponds to the solution pair
(a, lambda) = (k^k A v, k^k w) where A is the radial energy constant,
so crossing counts of v = a / (k^k A) enumerate radial solutions.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from typing import NamedTuple

import numpy as np
from scipy.integrate import solve_ivp
from scipy.optimize import brentq

from .constants import (
    EquilibriumKind,
    Linearization,
    ProblemSpec,
    equilibrium_linearization,
    normalization_constants,
    thresholds,
)


class PhasePoint(NamedTuple):
    v: float
    w: float


class IntegrationFault(RuntimeError):
    """Adaptive solver failure (step underflow, tolerance breakdown)."""


@dataclass(frozen=True)
class IntegratorConfig:
    """Tolerances and termination controls for orbit integration.

    rel_tol / abs_tol   adaptive step error weights
    t_max               hard time cap (termination reported, not an error)
    eq_radius           orbit stops on entering this ball around (1, n-k)
    seed_delta          magnitude of the origin seed along w = n v
    dense_dt            spacing of the stored dense samples
    max_step            step-size cap; keeps the dense-output interpolant as
                        accurate as the step endpoints (long smooth stretches
                        otherwise draw steps whose interior interpolation sag
                        dwarfs the integration error)
    """

    rel_tol: float = 1e-10
    abs_tol: float = 1e-12
    t_max: float = 200.0
    eq_radius: float = 1e-6
    seed_delta: float = 1e-8
    dense_dt: float = 0.01
    max_step: float = 0.2

    def __post_init__(self):
        for name in ("rel_tol", "abs_tol", "t_max", "eq_radius", "seed_delta",
                     "dense_dt", "max_step"):
            if getattr(self, name) <= 0:
                raise ValueError(f"{name} must be positive")


class Termination(enum.Enum):
    EQUILIBRIUM_BALL = "equilibrium-ball"
    INTEGRABLE_LIMIT = "integrable-limit"
    TIME_CAP = "time-cap"


class CrossingTail(enum.Enum):
    SETTLED = "settled"
    SPIRAL_INFINITE_AT_CENTER = "spiral-infinite-at-center"
    UNRESOLVED = "unresolved"


def vector_field(spec: ProblemSpec, point: PhasePoint) -> tuple[float, float]:
    """Right-hand side (v', w') at a quadrant point.

    v^{1/k} is defined one-sidedly: it is 0 at v = 0, and negative
    coordinates are rejected rather than continued.
    """
    v, w = point
    if v < 0 or w < 0:
        raise ValueError(f"phase point must lie in the closed quadrant, got {point!r}")
    n, k = spec.n, spec.k
    root = v ** (1.0 / k) if v > 0 else 0.0
    return (-(n - k) * v + w, k * w * (1.0 - root))


def seed_near_origin(spec: ProblemSpec, delta: float) -> PhasePoint:
    """Seed on the unstable direction of the origin, (v, w) = (delta/n, delta).

    The origin linearization has eigenvalues -(n-k) and k with unstable
    eigenvector (1, n); orbits regular at s = 0 leave along w = n v.
    """
    if delta <= 0:
        raise ValueError(f"seed delta must be positive, got {delta!r}")
    return PhasePoint(delta / spec.n, delta)


def _rhs(spec: ProblemSpec):
    n, k = spec.n, spec.k
    inv_k = 1.0 / k

    def rhs(t, y):
        v, w = y
        root = v**inv_k if v > 0 else 0.0
        return (-(n - k) * v + w, k * w * (1.0 - root))

    return rhs


@dataclass
class Trajectory:
    """A sampled orbit with access to the dense interpolant.

    t, v, w hold the stored samples (spacing <= config.dense_dt); the
    private solver solution supports refined evaluation between samples.
    All evaluation methods are read-only, so a Trajectory can be shared
    across threads.
    """

    spec: ProblemSpec
    t: np.ndarray
    v: np.ndarray
    w: np.ndarray
    termination: Termination
    seed_scale: float
    config: IntegratorConfig
    _sol: object = field(repr=False, default=None)

    @property
    def t_end(self) -> float:
        return float(self.t[-1])

    def eval(self, t) -> np.ndarray:
        """Dense-output evaluation; returns array [[v...], [w...]]."""
        y = self._sol.sol(t)
        return np.maximum(y, 0.0)

    def v_at(self, t: float) -> float:
        return float(self.eval(t)[0])

    def time_at_v(self, v_target: float, which: str = "first") -> float:
        """Time of a crossing of v = v_target ('first' or 'last'), refined."""
        roots = self._v_crossing_times(v_target)
        if not roots:
            raise ValueError(f"v = {v_target!r} is not attained by the orbit")
        return roots[0] if which == "first" else roots[-1]

    def _v_crossing_times(self, v_target: float) -> list[float]:
        g = self.v - v_target
        roots = []
        sign = np.sign(g)
        for i in np.flatnonzero(sign[:-1] * sign[1:] < 0):
            roots.append(
                brentq(
                    lambda tt: float(self.eval(tt)[0]) - v_target,
                    self.t[i],
                    self.t[i + 1],
                    xtol=1e-13,
                    rtol=8.9e-16,
                )
            )
        for i in np.flatnonzero(g == 0.0):
            roots.append(float(self.t[i]))
        return sorted(roots)

    def v_max(self) -> tuple[float, float]:
        """(time, value) of the orbit's largest v, quadratically refined."""
        i = int(np.argmax(self.v))
        if i == 0 or i == self.v.size - 1:
            return float(self.t[i]), float(self.v[i])
        # parabola through the three samples around the discrete argmax
        tm, t0, tp = self.t[i - 1 : i + 2]
        fm, f0, fp = self.v[i - 1 : i + 2]
        denom = (fm - 2.0 * f0 + fp)
        if denom == 0.0:
            return float(t0), float(f0)
        shift = 0.5 * (fm - fp) / denom * (t0 - tm)
        tt = float(np.clip(t0 + shift, tm, tp))
        return tt, float(self.eval(tt)[0])


def integrate_trajectory(spec: ProblemSpec, config: IntegratorConfig | None = None) -> Trajectory:
    """Integrate the regular orbit from the origin seed until termination.

    Termination is entry of the eq_radius ball around (1, n-k) for
    k < n, decay of w below abs_tol (with v near its limit) for k = n,
    or the time cap.  Solver faults raise IntegrationFault.
    """
    config = config or IntegratorConfig()
    n, k = spec.n, spec.k
    y0 = seed_near_origin(spec, config.seed_delta)
    if k == n:
        # The integrable case has an exact first integral: orbits satisfy
        # w = w0 + n(v - v0) - n^2/(n+1)(v^(1+1/n) - v0^(1+1/n)), so the
        # regular orbit through the origin is w = nv - n^2/(n+1) v^(1+1/n).
        # Because the v-axis is a line of equilibria, a vertical seed offset
        # never contracts; it would persist and inflate the terminal v by
        # ~sqrt(2*v_limit*offset).  Seed exactly on the regular orbit.
        v0 = y0.v
        y0 = PhasePoint(v0, n * v0 - n * n / (n + 1.0) * v0 ** (1.0 + 1.0 / n))
    else:
        # Place the seed on the unstable manifold rather than its tangent
        # line w = n v.  Expanding the manifold as
        #   w = n v + c1 v^(1+1/k) + c2 v^(1+2/k) + O(v^(1+3/k)),
        # matching powers of y = v^(1/k) in both evolution equations gives
        #   c1 = -k n/(n+1),   c2 = -k n (n-k) / ((n+1)^2 (n+2)),
        # (c2 vanishes at k = n, recovering the exact integrable orbit).
        # A tangent-line seed is off the manifold by the relative amount
        # (k/(n+1)) v0^(1/k) in w -- fully 1.3e-2 at (n,k) = (6,5) with the
        # default seed size -- and everything anchored at the seed (profile
        # reconstruction in particular) inherits that bias.  On the cubic
        # manifold the residual placement error is O(v0^(3/k)).
        v0 = y0.v
        y_seed = v0 ** (1.0 / k)
        c1 = -k * n / (n + 1.0)
        c2 = -k * n * (n - k) / ((n + 1.0) ** 2 * (n + 2.0))
        y0 = PhasePoint(v0, n * v0 + c1 * v0 * y_seed + c2 * v0 * y_seed**2)

    events = []
    if k < n:
        center = (1.0, float(n - k))

        def hit_equilibrium(t, y):
            return math.hypot(y[0] - center[0], y[1] - center[1]) - config.eq_radius

        hit_equilibrium.terminal = True
        hit_equilibrium.direction = -1
        events.append(hit_equilibrium)
    else:
        half_limit = 0.5 * ((n + 1.0) / n) ** n

        def w_decayed(t, y):
            # Only meaningful once v is near its limit; the max() keeps the
            # event positive (smoothly) while v is still small, so a seed
            # smaller than abs_tol cannot trigger it at t = 0.
            return max(y[1] - config.abs_tol, half_limit - y[0])

        w_decayed.terminal = True
        w_decayed.direction = -1
        events.append(w_decayed)

    # Near the seed both components are of order seed_delta, so an absolute
    # tolerance of abs_tol would allow ~abs_tol/seed_delta relative error in
    # the opening steps (1e-4 with the defaults) and the dense output would
    # carry it.  Scale the solver's absolute floor to the seed; termination
    # thresholds still use config.abs_tol unchanged.
    solver_atol = min(config.abs_tol, config.rel_tol * config.seed_delta)
    sol = solve_ivp(
        _rhs(spec),
        (0.0, config.t_max),
        list(y0),
        method="DOP853",
        rtol=config.rel_tol,
        atol=solver_atol,
        max_step=config.max_step,
        dense_output=True,
        events=events,
    )
    if sol.status < 0:
        raise IntegrationFault(sol.message)
    termination = Termination.TIME_CAP
    if sol.status == 1:
        termination = (
            Termination.EQUILIBRIUM_BALL if k < n else Termination.INTEGRABLE_LIMIT
        )

    t_end = float(sol.t[-1])
    ts = np.arange(0.0, t_end, config.dense_dt)
    if ts.size == 0 or t_end - ts[-1] > 1e-12:
        ts = np.append(ts, t_end)
    ys = np.maximum(sol.sol(ts), 0.0)
    return Trajectory(
        spec=spec,
        t=ts,
        v=ys[0],
        w=ys[1],
        termination=termination,
        seed_scale=config.seed_delta,
        config=config,
        _sol=sol,
    )


def lyapunov(spec: ProblemSpec, point: PhasePoint) -> float:
    """Lyapunov function of the interior rest point (k < n).

    L(v, w) = k (k/(k+1) v^{(k+1)/k} - v + 1/(k+1))
              + (w - (n-k)) - (n-k) log(w / (n-k)).

    Vanishes exactly at (1, n-k), is positive elsewhere on v >= 0, w > 0.
    """
    v, w = point
    n, k = spec.n, spec.k
    if k == n:
        raise ValueError("Lyapunov function requires k < n")
    if v < 0 or w <= 0:
        raise ValueError(f"need v >= 0 and w > 0, got {point!r}")
    m = n - k
    vterm = k * (k / (k + 1.0) * v ** ((k + 1.0) / k) - v + 1.0 / (k + 1.0))
    wterm = (w - m) - m * math.log(w / m)
    return vterm + wterm


def lyapunov_gradient(spec: ProblemSpec, point: PhasePoint) -> tuple[float, float]:
    """(dL/dv, dL/dw) for the chain-rule cross-check of the decay rate."""
    v, w = point
    n, k = spec.n, spec.k
    if k == n:
        raise ValueError("Lyapunov function requires k < n")
    if v < 0 or w <= 0:
        raise ValueError(f"need v >= 0 and w > 0, got {point!r}")
    root = v ** (1.0 / k) if v > 0 else 0.0
    return (k * (root - 1.0), 1.0 - (n - k) / w)


def lyapunov_derivative(spec: ProblemSpec, point: PhasePoint) -> float:
    """Orbital derivative dL/dt = -(n-k) k (v^{1/k} - 1)(v - 1) <= 0."""
    v, w = point
    n, k = spec.n, spec.k
    if k == n:
        raise ValueError("Lyapunov function requires k < n")
    if v < 0 or w <= 0:
        raise ValueError(f"need v >= 0 and w > 0, got {point!r}")
    root = v ** (1.0 / k) if v > 0 else 0.0
    return -(n - k) * k * (root - 1.0) * (v - 1.0)


def region_boundary_h(spec: ProblemSpec, b: float, tau: float) -> float:
    """Inward-flux sign function of the curve w = (n-k) v^b at v-coordinate tau.

    h(tau) = k (1 - tau^{1/k}) - b (n-k) (tau^{b-1} - 1); the field
    points into the region bounded above by the curve exactly where
    h < 0.  Defined for n - k >= 4 and tau in (0, 1).
    """
    n, k = spec.n, spec.k
    if n - k < 4:
        raise ValueError("boundary curve analysis requires n - k >= 4")
    if b <= 0:
        raise ValueError(f"exponent b must be positive, got {b!r}")
    if not 0.0 < tau < 1.0:
        raise ValueError(f"tau must lie in (0, 1), got {tau!r}")
    return k * (1.0 - tau ** (1.0 / k)) - b * (n - k) * (tau ** (b - 1.0) - 1.0)


def region_boundary_h_slope_at_one(spec: ProblemSpec, b: float) -> float:
    """One-sided slope h'(1) = (n-k) b (1-b) - 1 at the corner tau = 1."""
    n, k = spec.n, spec.k
    if n - k < 4:
        raise ValueError("boundary curve analysis requires n - k >= 4")
    return (n - k) * b * (1.0 - b) - 1.0


def in_invariant_region(spec: ProblemSpec, point: PhasePoint, tol: float = 0.0) -> bool:
    """Membership in the forward-invariant region for n - k >= 4.

    The region is bounded below by the line w = (n-k) v and above by
    the curve w = (n-k) v^b with b = (-eig1)^{-1} (slow eigenvalue),
    for 0 <= v <= 1.  tol adds a small absolute-plus-relative slack for
    testing points produced by floating-point integration.
    """
    n, k = spec.n, spec.k
    lin = equilibrium_linearization(spec)
    if lin.b_range is None:
        raise ValueError("invariant region requires n - k >= 4")
    b = lin.b_range[1]
    v, w = point
    m = n - k
    slack = tol * (1.0 + abs(w))
    if v < -slack or v > 1.0 + slack:
        return False
    vc = min(max(v, 0.0), 1.0)
    return m * vc - slack <= w <= m * vc**b + slack


def parameter_of_point(spec: ProblemSpec, v: float) -> float:
    """Solution parameter a = k^k A v carried by a boundary point with given v."""
    if v < 0:
        raise ValueError(f"v must be nonnegative, got {v!r}")
    consts = normalization_constants(spec)
    return spec.k**spec.k * float(consts.energy_const) * v


def _points_to_curve_distance(pts: np.ndarray, times: np.ndarray, curve: Trajectory) -> float:
    """Max over ``pts`` (m,2) of the distance to the dense-output curve.

    The nearest sampled vertex brackets the projection, which is then
    located as the root of the orthogonality condition
    (P(t) - p) . P'(t) = 0 with P' taken from the exact vector field.
    (A bounded scalar minimization cannot do this: its sqrt(eps)*|t|
    localization floor is ~1e-7 in t, which pollutes the distance.)
    """
    from scipy.spatial import cKDTree

    sampled = np.array([curve.eval(t) for t in times])
    tree = cKDTree(sampled)
    _, nearest = tree.query(pts)
    window = 2.0 * curve.config.dense_dt
    t_lo, t_hi = float(times[0]), float(times[-1])

    def tangent_residual(t: float, p: np.ndarray) -> float:
        q = curve.eval(t)
        dq = vector_field(curve.spec, PhasePoint(*q))
        return (q[0] - p[0]) * dq[0] + (q[1] - p[1]) * dq[1]

    worst = 0.0
    for p, j in zip(pts, nearest):
        lo = max(t_lo, float(times[j]) - window)
        hi = min(t_hi, float(times[j]) + window)
        glo, ghi = tangent_residual(lo, p), tangent_residual(hi, p)
        if glo == 0.0:
            t_star = lo
        elif ghi == 0.0:
            t_star = hi
        elif (glo < 0) != (ghi < 0):
            t_star = brentq(tangent_residual, lo, hi, args=(p,), xtol=1e-14)
        else:
            # projection falls outside the window (curve endpoint region)
            t_star = lo if abs(glo) < abs(ghi) else hi
        q = curve.eval(t_star)
        worst = max(worst, math.hypot(q[0] - p[0], q[1] - p[1]))
    return worst


def path_distance(first: Trajectory, second: Trajectory, w_floor: float | None = None) -> float:
    """Symmetric Hausdorff distance between two orbits as curves in (v,w).

    The comparison is geometric (parametrization-independent), so two
    integrations of the same orbit with different seed sizes measure only
    their transverse separation, not time drift.  Samples with w below
    ``w_floor`` are ignored so that the comparison starts once both runs
    have left their seed points; the default floor is twice the larger
    seed size.
    """
    if w_floor is None:
        w_floor = 2.0 * max(first.seed_scale, second.seed_scale)
    keep1 = first.w >= w_floor
    keep2 = second.w >= w_floor
    a = np.column_stack([first.v, first.w])[keep1]
    b = np.column_stack([second.v, second.w])[keep2]
    if a.shape[0] < 2 or b.shape[0] < 2:
        raise ValueError("trajectories have too few samples above the w floor")
    return max(
        _points_to_curve_distance(a, second.t[keep2], second),
        _points_to_curve_distance(b, first.t[keep1], first),
    )


class CrossingCount(NamedTuple):
    count: int
    tail: CrossingTail


def count_crossings(traj: Trajectory, v_star: float, touch_rtol: float = 1e-9) -> CrossingCount:
    """Number of times the orbit attains v = v_star, with tail classification.

    Transversal crossings are counted by sign changes (refined on the
    dense output); a local extremum within touch_rtol of v_star counts
    once (a tangential touch).  The tail is spiral-infinite-at-center
    when the orbit spirals into the rest point and v_star = 1 within
    eq_radius, unresolved when integration hit the time cap, settled
    otherwise.
    """
    if v_star <= 0:
        raise ValueError(f"v_star must be positive, got {v_star!r}")
    g = traj.v - v_star
    sign = np.sign(g)
    count = int(np.count_nonzero(sign[:-1] * sign[1:] < 0))
    count += int(np.count_nonzero(g == 0.0))

    # tangential touches: interior extrema matching v_star to touch_rtol
    v = traj.v
    interior = np.flatnonzero(
        ((v[1:-1] >= v[:-2]) & (v[1:-1] > v[2:]))
        | ((v[1:-1] <= v[:-2]) & (v[1:-1] < v[2:]))
    )
    tol = touch_rtol * max(1.0, abs(v_star))
    for i in interior + 1:
        if abs(v[i] - v_star) <= tol and sign[i - 1] * sign[i + 1] > 0:
            count += 1

    kind = equilibrium_linearization(traj.spec).kind
    if traj.termination is Termination.TIME_CAP:
        tail = CrossingTail.UNRESOLVED
    elif (
        kind is EquilibriumKind.SPIRAL
        and traj.termination is Termination.EQUILIBRIUM_BALL
        and abs(v_star - 1.0) <= traj.config.eq_radius
    ):
        tail = CrossingTail.SPIRAL_INFINITE_AT_CENTER
    else:
        tail = CrossingTail.SETTLED
    return CrossingCount(count, tail)


@dataclass(frozen=True)
class BifurcationEntry:
    a: float
    v_star: float
    count: int
    tail: CrossingTail


@dataclass(frozen=True)
class BifurcationDiagram:
    """Solution counts over a parameter grid, from a single orbit.

    alpha_star_estimate is k^k A max v (a numerical supremum of the
    radial existence range); beta_marker is the spiral-center parameter
    for k < n (None for k = n).  attainment_note records that whether
    the supremum is attained at the endpoint is not decided here.
    """

    spec: ProblemSpec
    entries: tuple[BifurcationEntry, ...]
    alpha_star_estimate: float
    beta_marker: float | None
    attainment_note: str = "attainment of the supremum at the endpoint is undetermined"

    def counts(self) -> list[int]:
        return [e.count for e in self.entries]


def bifurcation_sweep(
    spec: ProblemSpec,
    a_grid,
    config: IntegratorConfig | None = None,
    traj: Trajectory | None = None,
) -> BifurcationDiagram:
    """Crossing counts for every parameter value in a strictly increasing grid."""
    a_grid = np.asarray(a_grid, dtype=float)
    if a_grid.size == 0:
        raise ValueError("parameter grid is empty")
    if np.any(a_grid <= 0) or np.any(np.diff(a_grid) <= 0):
        raise ValueError("parameter grid must be positive and strictly increasing")
    if traj is None:
        traj = integrate_trajectory(spec, config)
    scale = spec.k**spec.k * float(normalization_constants(spec).energy_const)
    entries = []
    for a in a_grid:
        v_star = a / scale
        cnt, tail = count_crossings(traj, v_star)
        entries.append(BifurcationEntry(float(a), v_star, cnt, tail))
    _, vmax = traj.v_max()
    thr = thresholds(spec)
    return BifurcationDiagram(
        spec=spec,
        entries=tuple(entries),
        alpha_star_estimate=scale * vmax,
        beta_marker=None if thr.beta is None else float(thr.beta),
    )
