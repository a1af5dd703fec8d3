"""Dilation-identity audits and nonexistence verdicts on the unit ball.

Pairing the radial Hessian equation with the dilation field yields an
integral identity: a boundary flux term built from the Levi invariant of
the unit sphere and the (k+1)-st power of the normal derivative must
equal a volume integral of the nonlinearity.  This module evaluates both
sides on sampled profiles, exposes the Hoelder flux bound that turns the
identity into nonexistence verdicts for the exponential problem, and
verifies the calculus lemma behind the improved verdict.

Sign conventions: profiles have u <= 0 with u(1) = 0, and the boundary
gradient is |grad u| = 2 sqrt(s) u_s (the radial variable is s = |z|^2).
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np
from scipy.optimize import brentq

from .constants import (
    ProblemSpec,
    levi_ball_exact,
    normalization_constants,
    thresholds,
)
from .profiles import RadialProfile, normalization_integral
from .quadrature import integral_log_grid

__all__ = [
    "NonlinearityKind",
    "NonlinearitySpec",
    "Verdict",
    "PohozaevReport",
    "NonexistenceVerdict",
    "dilation_constant",
    "volume_sign_integrand",
    "identity_radial",
    "flux_lower_bound",
    "nonexistence_exponential",
    "mu_max_verify",
]


class NonlinearityKind(enum.Enum):
    """Supported right-hand sides f(u) of the radial Hessian equation."""

    POWER = "power"
    EXPONENTIAL_NONLOCAL = "exponential-nonlocal"


@dataclass(frozen=True)
class NonlinearitySpec:
    """A nonlinearity f(u) together with its primitive F (F(0) = 0).

    power(p):                f = (-u)^p,        F = -(-u)^{p+1}/(p+1)
    exponential_nonlocal(a): f = a e^{-u} / I,  F = a (1 - e^{-u}) / I

    where I is the profile's volume integral of e^{-u} over the unit
    ball, I = (omega/2) * int_0^1 e^{-u} s^{n-1} ds; it is supplied by
    the audit, which knows the profile.  Neither kind depends on the
    space variable, so the audited identity carries no extra term from
    differentiating F in the dilation direction.
    """

    kind: NonlinearityKind
    param: float

    @staticmethod
    def power(p: float) -> "NonlinearitySpec":
        if p <= 0:
            raise ValueError(f"power must be positive, got {p!r}")
        return NonlinearitySpec(NonlinearityKind.POWER, float(p))

    @staticmethod
    def exponential_nonlocal(a: float) -> "NonlinearitySpec":
        if a <= 0:
            raise ValueError(f"parameter a must be positive, got {a!r}")
        return NonlinearitySpec(NonlinearityKind.EXPONENTIAL_NONLOCAL, float(a))

    def _needs_volume(self) -> bool:
        return self.kind is NonlinearityKind.EXPONENTIAL_NONLOCAL

    def f(self, u: np.ndarray, vol_integral: float | None = None) -> np.ndarray:
        u = np.asarray(u, dtype=float)
        if self.kind is NonlinearityKind.POWER:
            return np.maximum(-u, 0.0) ** self.param
        if vol_integral is None:
            raise ValueError("the nonlocal kind needs the profile's volume integral")
        return self.param * np.exp(-u) / vol_integral

    def F(self, u: np.ndarray, vol_integral: float | None = None) -> np.ndarray:
        u = np.asarray(u, dtype=float)
        if self.kind is NonlinearityKind.POWER:
            return -np.maximum(-u, 0.0) ** (self.param + 1.0) / (self.param + 1.0)
        if vol_integral is None:
            raise ValueError("the nonlocal kind needs the profile's volume integral")
        return self.param * (1.0 - np.exp(-u)) / vol_integral


class Verdict(enum.Enum):
    IDENTITY_SATISFIED = "identity-satisfied"
    IDENTITY_VIOLATED = "identity-violated"
    NONEXISTENCE_TRIGGERED = "nonexistence-triggered"


@dataclass(frozen=True)
class PohozaevReport:
    """Both sides of the dilation identity plus the flux inequality.

    boundary_term   omega * Levi(sphere) * (2 u_s(1))^{k+1}
    volume_term     -2 (k+1) (omega/2) int_0^1 [n F - c0 u f] s^{n-1} ds
                    with c0 = (n-k)/(k+1)
    residual        |boundary - volume| / (|boundary| + |volume|), 0 when
                    both vanish
    holder_lhs      the boundary term again (the flux side)
    holder_rhs      the parameter-only lower bound it must dominate for
                    the exponential problem (0 for the power kind)
    """

    boundary_term: float
    volume_term: float
    residual: float
    holder_lhs: float
    holder_rhs: float
    verdict: Verdict


def dilation_constant(spec: ProblemSpec) -> Fraction:
    """The constant c0 = (n-k)/(k+1) weighting u f(u) in the volume term."""
    return Fraction(spec.n - spec.k, spec.k + 1)


def volume_sign_integrand(
    spec: ProblemSpec,
    profile: RadialProfile,
    nl: NonlinearitySpec,
) -> np.ndarray:
    """Per-point values of n(k+1) F(u) - (n-k) u f(u) on the profile grid.

    The volume term is -2 int of this over the ball; its sign structure
    (nonpositive for the power kind at supercritical exponents) drives
    the nonexistence argument.
    """
    n, k = spec.n, spec.k
    vol = None
    if nl._needs_volume():
        omega = float(normalization_constants(spec).sphere_area)
        vol = omega / 2.0 * normalization_integral(profile, n)
    u = profile.u
    return n * (k + 1) * nl.F(u, vol) - (n - k) * u * nl.f(u, vol)


def identity_radial(
    spec: ProblemSpec,
    profile: RadialProfile,
    nl: NonlinearitySpec,
    tol: float = 1e-6,
) -> PohozaevReport:
    """Audit the dilation identity on a unit-ball profile.

    boundary_term and volume_term as documented on PohozaevReport; the
    verdict is identity-satisfied iff the relative residual is <= tol.
    The default tol matches the quadrature accuracy of the standard
    2000-point grid and should be scaled down with grid refinement.
    """
    n, k = spec.n, spec.k
    if profile.grid[-1] != 1.0:
        raise ValueError("the audit needs a profile reaching the boundary s = 1")
    if profile.u[-1] != 0.0:
        raise ValueError("the audit needs u(1) = 0")
    consts = normalization_constants(spec)
    omega = float(consts.sphere_area)
    levi = float(levi_ball_exact(spec))

    us_boundary = float(profile.us[-1])
    boundary_term = omega * levi * (2.0 * us_boundary) ** (k + 1)

    integrand = volume_sign_integrand(spec, profile, nl)
    s = profile.grid
    volume_term = -2.0 * (omega / 2.0) * integral_log_grid(
        s, integrand * s ** (n - 1), tail_power=float(n - 1)
    )

    denom = abs(boundary_term) + abs(volume_term)
    residual = abs(boundary_term - volume_term) / denom if denom > 0.0 else 0.0

    holder_rhs = 0.0
    if nl.kind is NonlinearityKind.EXPONENTIAL_NONLOCAL:
        holder_rhs = flux_lower_bound(spec, nl.param)
    verdict = Verdict.IDENTITY_SATISFIED if residual <= tol else Verdict.IDENTITY_VIOLATED
    return PohozaevReport(
        boundary_term=boundary_term,
        volume_term=volume_term,
        residual=residual,
        holder_lhs=boundary_term,
        holder_rhs=holder_rhs,
        verdict=verdict,
    )


def flux_lower_bound(spec: ProblemSpec, a: float) -> float:
    """Parameter-only lower bound for the boundary flux of solutions.

    For any solution of the exponential problem with parameter a on the
    unit ball, Hoelder applied to the volume normalization forces

        boundary flux >= (k a)^{(k+1)/k} / (Levi * omega)^{1/k},

    with equality for radial solutions (the boundary gradient is then
    constant on the sphere, the Hoelder equality case).
    """
    if a <= 0:
        raise ValueError(f"parameter a must be positive, got {a!r}")
    k = spec.k
    omega = float(normalization_constants(spec).sphere_area)
    levi = float(levi_ball_exact(spec))
    return (k * a) ** ((k + 1.0) / k) / (levi * omega) ** (1.0 / k)


@dataclass(frozen=True)
class NonexistenceVerdict:
    """Outcome of the parameter-threshold nonexistence tests.

    triggered          a >= alpha1 (for k = n, alpha1 coincides with the
                       sharp threshold a0)
    improved_triggered a >= alpha2, the sharpened test; None when k = n
                       (no sharper bound exists there)
    margins are a - alpha1 and a - alpha2 (None mirrors the test).
    """

    a: float
    alpha1: float
    alpha2: float | None
    triggered: bool
    improved_triggered: bool | None
    margin_basic: float
    margin_improved: float | None


def nonexistence_exponential(spec: ProblemSpec, a: float) -> NonexistenceVerdict:
    """Threshold verdicts for the exponential problem at parameter a.

    The basic test compares a against alpha1(k, n); for k < n the
    improved test against alpha2(k, n) is reported separately (alpha2 <
    alpha1, still not sharp).  Verdicts are one-sided: a below both
    thresholds says nothing about existence.
    """
    if a <= 0:
        raise ValueError(f"parameter a must be positive, got {a!r}")
    thr = thresholds(spec)
    alpha1 = float(thr.alpha1)
    if spec.k == spec.n:
        return NonexistenceVerdict(
            a=a,
            alpha1=alpha1,
            alpha2=None,
            triggered=a >= alpha1,
            improved_triggered=None,
            margin_basic=a - alpha1,
            margin_improved=None,
        )
    alpha2 = float(thr.alpha2)
    return NonexistenceVerdict(
        a=a,
        alpha1=alpha1,
        alpha2=alpha2,
        triggered=a >= alpha1,
        improved_triggered=a >= alpha2,
        margin_basic=a - alpha1,
        margin_improved=a - alpha2,
    )


def mu_max_verify(spec: ProblemSpec) -> float:
    """Independent check of the sharpened-threshold calculus lemma (k < n).

    The improved threshold alpha2 is calibrated so that

        mu(x) = c1 (e^x - 1) - c2 x e^x - c3 e^x,
        c1 = n(k+1),  c2 = n-k,  c3 = c1 (alpha2/alpha1)^{1/k},

    satisfies max_{x >= 0} mu(x) = 0: the exponential-weight envelope
    touches zero exactly once.  The maximizer is located by root-finding
    on mu'(x)/e^x = (c1 - c2 - c3) - c2 x and |mu(max)| is returned; it
    must vanish to rounding (<= 1e-10) when alpha2 carries the right
    closed form.
    """
    n, k = spec.n, spec.k
    if k >= n:
        raise ValueError("the sharpened threshold exists only for k < n")
    thr = thresholds(spec)
    c1 = float(n * (k + 1))
    c2 = float(n - k)
    c3 = c1 * (thr.alpha2 / float(thr.alpha1)) ** (1.0 / k)

    def dmu_scaled(x: float) -> float:
        return (c1 - c2 - c3) - c2 * x

    lo, hi = 0.0, 1.0
    while dmu_scaled(hi) > 0.0:
        hi *= 2.0
    x_star = brentq(dmu_scaled, lo, hi, xtol=1e-14, rtol=8.9e-16)
    mu_star = c1 * (math.exp(x_star) - 1.0) - c2 * x_star * math.exp(x_star) - c3 * math.exp(
        x_star
    )
    # boundary candidate: mu(0) = -c3 < 0 never beats the interior point
    return abs(max(mu_star, -c3))
