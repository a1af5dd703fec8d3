"""Radial solution profiles on the unit ball.

A profile stores u(s) and u_s(s) on a log-uniform grid in s = |z|^2,
with the boundary point s = 1 carrying u(1) = 0 exactly.  The module
covers: the explicit logarithmic family solving the integrable-case
problem, reconstruction of profiles from phase-plane orbits, the
shooting solver for the power nonlinearity, quadrature-level energies
and weak forms, the pointwise Hoelder embedding bound, and the
real-variable half-dimension analogue family.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from typing import Callable, NamedTuple

import numpy as np
from scipy.integrate import solve_ivp

from .constants import ProblemSpec, alpha_tilde_real, critical_exponent, normalization_constants
from .exact import PiRational, sphere_volume_exact
from .phaseplane import IntegrationFault, PhasePoint, Trajectory
from .quadrature import (
    STENCIL_HALF_WIDTH,
    cumulative_integral_to_end,
    derivative_log_grid,
    integral_log_grid,
    log_step,
)

DEFAULT_GRID_POINTS = 2000
DEFAULT_S_MIN = 1e-12


def default_grid(points: int = DEFAULT_GRID_POINTS, s_min: float = DEFAULT_S_MIN) -> np.ndarray:
    """Log-spaced grid on [s_min, 1] with the boundary point included."""
    if points < 2:
        raise ValueError("grid needs at least 2 points")
    if not 0.0 < s_min < 1.0:
        raise ValueError("s_min must lie in (0, 1)")
    grid = np.geomspace(s_min, 1.0, points)
    grid[-1] = 1.0
    return grid


@dataclass(eq=False)
class RadialProfile:
    """Radial candidate solution: u and u_s sampled on a grid in s = |z|^2.

    grid  strictly increasing, positive; when the last point is s = 1 the
          boundary condition u(1) = 0 must hold exactly.
    u     profile values (nonpositive in the interior for solutions).
    us    derivative u_s at the grid points.
    meta  free-form numbers rides along (parameter a, multiplier lam, ...).
    """

    grid: np.ndarray
    u: np.ndarray
    us: np.ndarray
    meta: dict[str, float] = field(default_factory=dict)

    def __post_init__(self):
        self.grid = np.asarray(self.grid, dtype=float)
        self.u = np.asarray(self.u, dtype=float)
        self.us = np.asarray(self.us, dtype=float)
        if self.grid.ndim != 1 or self.grid.size < 2:
            raise ValueError("grid must be a 1-d array with at least 2 points")
        if self.u.shape != self.grid.shape or self.us.shape != self.grid.shape:
            raise ValueError("u and us must match the grid shape")
        if np.any(self.grid <= 0.0) or np.any(np.diff(self.grid) <= 0.0):
            raise ValueError("grid must be positive and strictly increasing")
        if self.grid[-1] == 1.0 and self.u[-1] != 0.0:
            raise ValueError("boundary condition violated: u at s = 1 must be exactly 0")


# ---------------------------------------------------------------------------
# explicit integrable-case family
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class ExplicitMA:
    """Parameters of the explicit logarithmic family for k = n."""

    n: int
    eps: float

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("n must be a positive integer")
        if not self.eps > 0:
            raise ValueError("eps must be positive")

    def u(self, s):
        return (self.n + 1) * (np.log(s + self.eps**2) - math.log(1.0 + self.eps**2))

    def us(self, s):
        return (self.n + 1) / (s + self.eps**2)


def explicit_ma(
    n: int, eps: float, grid: np.ndarray | None = None
) -> tuple[RadialProfile, float]:
    """Sample the explicit family member and return (profile, a_eps).

    a_eps = (n+1)^n * omega_{2n-1} / (2 n (1+eps^2)^n)
          = (n+1)^n * pi^n / (n! (1+eps^2)^n)

    lies in (0, a0) and increases to a0 as eps -> 0.  (The n in the
    denominator is forced by the eps -> 0 limit equalling a0 and by the
    multiplier identity lam = a / (A(n,n) * int e^{-u} s^{n-1}); both are
    verified in the test suite.)
    """
    fam = ExplicitMA(n, eps)
    s = default_grid() if grid is None else np.asarray(grid, dtype=float)
    u = fam.u(s)
    if s[-1] == 1.0:
        u[-1] = 0.0
    omega = sphere_volume_exact(2 * n)
    a_eps = float(omega * Fraction((n + 1) ** n, 2 * n)) / (1.0 + eps**2) ** n
    profile = RadialProfile(s, u, fam.us(s), meta={"a": a_eps, "eps": eps})
    return profile, a_eps


def explicit_ma_phase(n: int, eps: float, s) -> PhasePoint:
    """Closed-form phase point (v, w) of the explicit family at s (k = n)."""
    fam = ExplicitMA(n, eps)  # validates inputs
    e2 = fam.eps**2
    v = ((n + 1) / n) ** n * (s / (s + e2)) ** n
    w = (n + 1) ** n / n ** (n - 1) * e2 * s**n / (s + e2) ** (n + 1)
    return PhasePoint(float(v), float(w))


# ---------------------------------------------------------------------------
# quadrature helpers on profiles
# ---------------------------------------------------------------------------


def normalization_integral(profile: RadialProfile, n: int) -> float:
    """integral_0^1 e^{-u} s^{n-1} ds with the analytic below-grid tail.

    The integrand below the first grid point is modelled as
    e^{-u(s0)} (s/s0)^{n-1-slope}, where slope is the logarithmic slope
    of u measured on the first grid cell (zero for profiles flat at the
    center, so the model reduces to the plain s^{n-1} weight there); a
    center slope steep enough to destroy integrability is rejected.
    """
    s, u = profile.grid, profile.u
    t = np.log(s)
    # effective power of the integrand near 0: s^{n-1} * e^{-u}, with
    # u ~ slope * log s  =>  integrand ~ s^{n-1-slope}
    slope = (u[1] - u[0]) / (t[1] - t[0])
    if n - slope <= 0:
        raise ValueError(
            f"normalization integral diverges at the center: u falls like "
            f"{slope:.3g} * log s against weight s^{n - 1}"
        )
    f = np.exp(-u) * s ** (n - 1)
    return integral_log_grid(s, f, tail_power=n - 1.0 - slope)


# ---------------------------------------------------------------------------
# conservative-form Hessian operator on profiles
# ---------------------------------------------------------------------------


def _radial_hessian_all(spec: ProblemSpec, profile: RadialProfile) -> tuple[np.ndarray, slice]:
    """Operator values on all interior stencil points; NaN at the edges."""
    n, k = spec.n, spec.k
    s = profile.grid
    flux = profile.us**k * s**n
    dflux_dt, interior = derivative_log_grid(s, flux)  # d(flux)/dt = s * d(flux)/ds
    c = math.comb(n - 1, k - 1)
    values = (c / k) * dflux_dt * s ** (-n)
    return values, interior


def radial_hessian(spec: ProblemSpec, profile: RadialProfile, s: float) -> float:
    """k-Hessian of the profile at an interior grid point s.

    Uses the conservative radial form: the log-grid derivative of the
    flux u_s^k s^n times binom(n-1, k-1) s^{1-n} / k, evaluated by a
    6th-order centered stencil; points too close to the grid edge for
    the stencil are rejected.
    """
    idx = int(np.searchsorted(profile.grid, s))
    if idx >= profile.grid.size or profile.grid[idx] != s:
        raise ValueError(f"s = {s!r} is not a grid point")
    w = STENCIL_HALF_WIDTH
    if idx < w or idx >= profile.grid.size - w:
        raise ValueError(
            f"s = {s!r} is within {w} points of the grid edge; the centered "
            f"stencil has no room"
        )
    values, _ = _radial_hessian_all(spec, profile)
    return float(values[idx])


def hessian_residual(spec: ProblemSpec, profile: RadialProfile, rhs: np.ndarray) -> float:
    """max interior |S_k(profile) - rhs| / (1 + |rhs|).

    rhs holds the nonlinearity values on the same grid.
    """
    rhs = np.asarray(rhs, dtype=float)
    if rhs.shape != profile.grid.shape:
        raise ValueError("rhs must be sampled on the profile grid")
    values, interior = _radial_hessian_all(spec, profile)
    err = np.abs(values[interior] - rhs[interior]) / (1.0 + np.abs(rhs[interior]))
    return float(np.max(err))


# ---------------------------------------------------------------------------
# reconstruction from phase-plane orbits
# ---------------------------------------------------------------------------


def reconstruct_profile(
    spec: ProblemSpec,
    traj: Trajectory,
    t_star: float,
    grid: np.ndarray | None = None,
) -> RadialProfile:
    """Invert the phase substitution at the orbit point reached at t_star.

    The substitution gives u_t = k v^{1/k} in t = log s, so with the time
    origin shifted to t_star (the boundary s = 1):

        u(t) = -k * integral_t^0 v(tau)^{1/k} d tau,   u_s = k v^{1/k} / s.

    Orbit times before the seed are continued by the reduced flow on the
    unstable manifold of the origin: in y = v^{1/k} the manifold dynamics
    is y' = y (1 - n/(n+1) y) + O(y^3), a logistic curve (exact for
    k = n, where the orbit has a first integral).  meta carries
    a = k^k A v(0) and lam = k^k w(0).
    """
    if not 0.0 <= t_star <= traj.t_end:
        raise ValueError(f"t_star = {t_star!r} outside the trajectory range [0, {traj.t_end}]")
    k = spec.k
    s = default_grid() if grid is None else np.asarray(grid, dtype=float)
    if k == spec.n and math.exp(-t_star) <= 100.0 * s[0]:
        # Near the integrable singular limit u behaves like (n+1) log s, so
        # e^{-u} s^{n-1} ~ s^{-2} and the normalization mass concentrates in
        # the center layer at scale e^{-t_star}.  Once that layer falls below
        # the grid, every downstream quantity anchored to the normalization
        # integral silently degrades; demand a grid that resolves it.
        raise ValueError(
            f"center layer at scale exp(-t_star) = {math.exp(-t_star):.3g} is "
            f"not well above the smallest grid point {s[0]:g}; extend the grid "
            f"(smaller s_min) to reconstruct this deep on the orbit"
        )
    h = log_step(s)
    t = np.log(s)
    t[-1] = 0.0 if s[-1] == 1.0 else t[-1]
    tau = t + t_star  # orbit times of the profile grid points

    # integrand g(tau) = v(tau)^{1/k} on the orbit; below the seed time
    # continue with the logistic manifold reduction anchored at the seed
    y_seed = traj.v[0] ** (1.0 / k)
    ratio = spec.n / (spec.n + 1.0)

    def g(x: np.ndarray) -> np.ndarray:
        x = np.asarray(x, dtype=float)
        out = np.empty_like(x)
        pre = x < 0.0
        grow = np.exp(x[pre])
        out[pre] = y_seed * grow / (1.0 + ratio * y_seed * (grow - 1.0))
        if np.any(~pre):
            out[~pre] = traj.eval(x[~pre])[0] ** (1.0 / k)
        return out

    # per-cell composite Simpson on a 16-fold refinement of the uniform
    # t-grid, accumulated from the boundary leftward; the dense output
    # makes the refinement essentially free and the cell error ~ (h/16)^5
    refine = 16
    offsets = np.linspace(0.0, h, refine + 1)
    simpson_w = np.empty(refine + 1)
    simpson_w[0::2] = 2.0
    simpson_w[1::2] = 4.0
    simpson_w[0] = simpson_w[-1] = 1.0
    simpson_w *= h / refine / 3.0

    m = s.size
    sub = tau[:-1, None] + offsets[None, :]  # (m-1, refine+1) cell nodes
    gv = g(sub.ravel()).reshape(sub.shape)
    cells = gv @ simpson_w  # integral of g over each cell
    u = np.zeros(m)
    u[:-1] = -k * np.cumsum(cells[::-1])[::-1]
    us = k * g(tau) / s
    v0, w0 = (float(c) for c in traj.eval(t_star))
    consts = normalization_constants(spec)
    meta = {
        "a": k**k * float(consts.energy_const) * v0,
        "lam": k**k * w0,
        "t_star": t_star,
    }
    return RadialProfile(s, u, us, meta=meta)


# ---------------------------------------------------------------------------
# shooting for the power nonlinearity
# ---------------------------------------------------------------------------


class ShootingStatus(Enum):
    ZERO_FOUND = "zero-found"
    NO_ZERO_WITHIN_CAP = "no-zero-within-cap"


@dataclass(eq=False)
class ShootingResult:
    profile: RadialProfile
    first_zero: float | None
    status: ShootingStatus


_SHOOT_S0 = 1e-10


def _shoot_raw(spec: ProblemSpec, p: float, m: float, s_cap: float, rel_tol: float):
    """Integrate the center-regular shot; returns (sol, us0, x0)."""
    n, k = spec.n, spec.k
    c = math.comb(n - 1, k - 1)
    us0 = (k * m**p / (n * c)) ** (1.0 / k)
    x0, x1 = math.log(_SHOOT_S0), math.log(s_cap)

    def rhs(x, y):
        # d/dx = s d/ds, so both right-hand sides carry an extra factor s
        u, q = y
        s = math.exp(x)
        du = (max(q, 0.0) / s**n) ** (1.0 / k) * s
        dq = (k / c) * max(-u, 0.0) ** p * s**n
        return (du, dq)

    def u_vanishes(x, y):
        return y[0]

    u_vanishes.terminal = True
    u_vanishes.direction = 1

    sol = solve_ivp(
        rhs,
        (x0, x1),
        (-m + us0 * _SHOOT_S0, us0**k * _SHOOT_S0**n),
        method="DOP853",
        rtol=rel_tol,
        atol=(1e-14, 0.0),
        dense_output=True,
        events=(u_vanishes,),
    )
    if sol.status < 0:
        raise IntegrationFault(sol.message)
    return sol, us0, x0


def shoot_power(
    spec: ProblemSpec,
    p: float,
    m: float = 1.0,
    s_cap: float = 1e6,
    rel_tol: float = 1e-10,
    points: int = DEFAULT_GRID_POINTS,
) -> ShootingResult:
    """Shoot the power-nonlinearity radial problem outward from the center.

    Integrates the first-order system for y = (u, q) with q = u_s^k s^n:

        q_s = (k / binom(n-1,k-1)) (-u)^p s^{n-1},    u_s = (q / s^n)^{1/k},

    in x = log s from s0 = 1e-10 with the regular two-term series start
    u = -m + u_s(0+) s, u_s(0+) = (k m^p / (n binom(n-1,k-1)))^{1/k}, and
    stops at the first zero of u (event-located) or at s_cap.

    One center value determines all of them: if u solves the equation
    with u(0) = -1 and first zero z1, then m * u(s * m^{(p-k)/k}) solves
    it with center value -m and first zero z1 * m^{(k-p)/k} (substitute
    u -> mu u(tau s): the flux side scales by mu^k tau^k and the power
    side by mu^p, so tau^k = mu^{p-k}).  m therefore defaults to 1 and
    the scaling law is exposed through first-zero ratios.
    """
    if m <= 0:
        raise ValueError("center value m must be positive")
    if p <= 0:
        raise ValueError("exponent p must be positive")
    if p == spec.k:
        warnings.warn(
            "p equals k: eigenvalue regime -- existence theory out of scope",
            stacklevel=2,
        )
    sol, _, x0 = _shoot_raw(spec, p, m, s_cap, rel_tol)
    if sol.status == 1:
        status = ShootingStatus.ZERO_FOUND
        first_zero = float(math.exp(sol.t_events[0][0]))
    else:
        status = ShootingStatus.NO_ZERO_WITHIN_CAP
        first_zero = None

    n, k = spec.n, spec.k
    xs = np.linspace(x0, float(sol.t[-1]), points)
    ys = sol.sol(xs)
    s = np.exp(xs)
    u = ys[0]
    q = np.clip(ys[1], 0.0, None)
    us = (q / s**n) ** (1.0 / k)
    if status is ShootingStatus.ZERO_FOUND:
        u[-1] = 0.0
    gamma = critical_exponent(spec)
    profile = RadialProfile(
        s,
        u,
        us,
        meta={
            "p": p,
            "m": m,
            "s_cap": s_cap,
            "gamma": math.inf if gamma == math.inf else float(gamma),
        },
    )
    return ShootingResult(profile=profile, first_zero=first_zero, status=status)


def shooting_unit_profile(
    spec: ProblemSpec,
    p: float,
    s_cap: float = 1e6,
    rel_tol: float = 1e-10,
    grid: np.ndarray | None = None,
) -> RadialProfile:
    """Shooting solution rescaled so its first zero lands exactly at s = 1.

    With z1 the first zero of the m = 1 shot, u -> z1^{k/(p-k)} u(z1 s)
    solves the same equation on the unit ball (same power matching as the
    m-scaling in shoot_power).  The result is resampled on the standard
    log grid; requires p != k and a found zero.
    """
    n, k = spec.n, spec.k
    if p == k:
        raise ValueError("p = k has no dilation normalization (eigenvalue regime)")
    sol, us0, x0 = _shoot_raw(spec, p, 1.0, s_cap, rel_tol)
    if sol.status != 1:
        raise ValueError(f"no zero found below s_cap = {s_cap:g}; cannot normalize")
    x_zero = float(sol.t_events[0][0])
    z1 = math.exp(x_zero)
    mu = z1 ** (k / (p - k))

    s = default_grid() if grid is None else np.asarray(grid, dtype=float)
    x_needed = np.log(s * z1)
    u = np.empty_like(s)
    us = np.empty_like(s)
    below = x_needed < x0
    # below the integration start the two-term series holds
    u[below] = mu * (-1.0 + us0 * np.exp(x_needed[below]))
    us[below] = mu * z1 * us0
    xs = np.clip(x_needed[~below], x0, x_zero)
    ys = sol.sol(xs)
    u[~below] = mu * ys[0]
    q = np.clip(ys[1], 0.0, None)
    us[~below] = mu * z1 * (q / np.exp(xs) ** n) ** (1.0 / k)
    if s[-1] == 1.0:
        u[-1] = 0.0
    return RadialProfile(s, u, us, meta={"p": p, "first_zero_raw": z1, "scale": mu})


# ---------------------------------------------------------------------------
# embedding bound, energies, weak form
# ---------------------------------------------------------------------------


def pointwise_bound_check(spec: ProblemSpec, profile: RadialProfile) -> float:
    """Worst ratio of |u(s)| to its Hoelder majorant; must stay <= 1 + tol.

    The majorant is the two-factor Hoelder split of u(s) = -int_s^1 u_sigma:

        |u(s)| <= (int_s^1 |u_sigma|^{k+1} sigma^n)^{1/(k+1)}
                  * (int_s^1 sigma^{-n/k})^{k/(k+1)},

    with the second factor in closed form.  Requires k < n.
    """
    n, k = spec.n, spec.k
    if k >= n:
        raise ValueError("the embedding bound needs k < n")
    s = profile.grid
    energy_tail = cumulative_integral_to_end(s, np.abs(profile.us) ** (k + 1) * s**n)
    energy_tail = np.clip(energy_tail, 0.0, None)
    q = n / k  # integral of sigma^{-q} from s to 1 = (s^{1-q} - 1)/(q - 1)
    weight_tail = (s ** (1.0 - q) - 1.0) / (q - 1.0)
    rhs = energy_tail ** (1.0 / (k + 1)) * np.clip(weight_tail, 0.0, None) ** (k / (k + 1))
    lhs = np.abs(profile.u)
    ratio = np.zeros_like(lhs)
    ok = rhs > 0.0
    ratio[ok] = lhs[ok] / rhs[ok]
    bad = (~ok) & (lhs > 0.0)
    if np.any(bad):
        return math.inf
    return float(np.max(ratio))


def hessian_energy(spec: ProblemSpec, profile: RadialProfile) -> float:
    """Hessian energy A/(k+1) * int_0^1 |u_s|^{k+1} s^n ds."""
    k = spec.k
    consts = normalization_constants(spec)
    integrand = np.abs(profile.us) ** (k + 1) * profile.grid**spec.n
    return float(consts.energy_const) / (k + 1) * integral_log_grid(
        profile.grid, integrand, tail_power=float(spec.n)
    )


def functional_value(spec: ProblemSpec, profile: RadialProfile, p: float) -> float:
    """Energy functional: Hessian energy minus B/(p+1) int |u|^{p+1} s^{n-1}."""
    consts = normalization_constants(spec)
    s = profile.grid
    nonlinear = np.abs(profile.u) ** (p + 1) * s ** (spec.n - 1)
    return hessian_energy(spec, profile) - float(consts.volume_const) / (p + 1) * (
        integral_log_grid(s, nonlinear, tail_power=float(spec.n - 1))
    )


def weak_form_residual(
    spec: ProblemSpec,
    profile: RadialProfile,
    p: float,
    tests: list[Callable[[np.ndarray], tuple[np.ndarray, np.ndarray]]] | None = None,
) -> float:
    """Max relative mismatch of the weak form over boundary-vanishing tests.

    For solutions of the power problem and any smooth phi with phi(1) = 0:

        -A int_0^1 u_s^k phi'(s) s^n ds = B int_0^1 |u|^p phi s^{n-1} ds.

    Default tests are phi_j = s^j (1 - s), j = 0..4 (each returns
    (phi, phi') when called on the grid).
    """
    if tests is None:

        def make(j: int):
            def phi(s: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
                return s**j * (1.0 - s), j * s ** (j - 1) * (1.0 - s) - s**j

            return phi

        tests = [make(j) for j in range(5)]
    consts = normalization_constants(spec)
    a_const = float(consts.energy_const)
    b_const = float(consts.volume_const)
    s = profile.grid
    n, k = spec.n, spec.k
    worst = 0.0
    for phi_fn in tests:
        phi, dphi = phi_fn(s)
        lhs = -a_const * integral_log_grid(s, profile.us**k * dphi * s**n, tail_power=float(n))
        rhs = b_const * integral_log_grid(
            s, np.abs(profile.u) ** p * phi * s ** (n - 1), tail_power=float(n - 1)
        )
        denom = abs(lhs) + abs(rhs)
        if denom > 0:
            worst = max(worst, abs(lhs - rhs) / denom)
    return worst


# ---------------------------------------------------------------------------
# real-variable half-dimension analogue
# ---------------------------------------------------------------------------


class RealHalfdimFamily(NamedTuple):
    profile: RadialProfile
    a_tilde: float
    a_tilde_exact: PiRational
    ode_residual: float


def real_halfdim(d: int, eps: float, grid: np.ndarray | None = None) -> RealHalfdimFamily:
    """Explicit family for the real Hessian problem at half-dimension k = d/2.

    Returns the same logarithmic profile shape with n = d/2 (in s = |x|^2)
    together with

        a_tilde_eps = (1/n) binom(d-1, n-1) (2n+2)^n omega_{d-1} / (1+eps^2)^n,

    checks a_tilde_eps < alpha_tilde(d/2, d), and verifies the radial
    equation it solves,

        ((u_s s)^n)_s s = [n a_tilde / (omega_{d-1} binom(d-1,n-1) 2^n)]
                          * s^n e^{-u} / int_0^1 e^{-u} s^{n-1} ds,

    to a finite-difference/quadrature residual (reported, and required to
    be below 1e-6 on the default grid).
    """
    if d < 2 or d % 2 != 0:
        raise ValueError("d must be an even integer >= 2")
    n = d // 2
    if not eps > 0:
        raise ValueError("eps must be positive")
    s = default_grid() if grid is None else np.asarray(grid, dtype=float)
    if eps * eps <= 100.0 * s[0]:
        raise ValueError(
            f"eps^2 = {eps*eps:g} is not well above the smallest grid point "
            f"{s[0]:g}; the center layer of the family is unresolved "
            "(shrink the grid origin or increase eps)"
        )
    fam = ExplicitMA(n, eps)
    u = fam.u(s)
    if s[-1] == 1.0:
        u[-1] = 0.0
    us = fam.us(s)
    omega = sphere_volume_exact(d)
    binom = math.comb(d - 1, n - 1)
    a_tilde_exact = omega * Fraction(binom * (2 * n + 2) ** n, n)
    a_tilde = float(a_tilde_exact) / (1.0 + eps**2) ** n
    alpha_cap = float(alpha_tilde_real(n, d))
    # a_tilde = alpha_tilde / (1+eps^2)^n exactly, so the strict bound
    # a_tilde < alpha_tilde holds for every eps > 0; in floats the ratio
    # rounds to 1 once eps^2 drops below the unit roundoff, so only a
    # float-strict *violation* indicates a formula error.
    if a_tilde > alpha_cap:
        raise ArithmeticError(
            f"family parameter {a_tilde!r} not below the threshold {alpha_cap!r}"
        )

    profile = RadialProfile(s, u, us, meta={"a_tilde": a_tilde, "eps": eps})
    flux = (us * s) ** n
    dflux_dt, interior = derivative_log_grid(s, flux)  # = s * d(flux)/ds
    lhs = dflux_dt  # ((u_s s)^n)_s * s
    norm = integral_log_grid(s, np.exp(-u) * s ** (n - 1), tail_power=n - 1.0)
    coef = n * a_tilde / (float(omega) * binom * 2**n)
    rhs = coef * s**n * np.exp(-u) / norm
    resid = float(
        np.max(np.abs(lhs[interior] - rhs[interior]) / (1.0 + np.abs(rhs[interior])))
    )
    profile.meta["ode_residual"] = resid
    if grid is None and resid > 1e-6:
        raise ArithmeticError(
            f"explicit family fails its own radial equation: residual {resid:g}"
        )
    return RealHalfdimFamily(profile, a_tilde, a_tilde_exact, resid)
