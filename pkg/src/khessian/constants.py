"""Closed-form constants, critical exponents, and threshold parameters.

Everything here concerns the Dirichlet problem for the complex k-Hessian
operator S_k on the unit ball of C^n (1 <= k <= n; k = n is the complex
Monge-Ampere case).  For radial functions, with s = |z|^2,

    S_k(u) = (1/k) C(n-1, k-1) (u_s^k s^n)_s s^{1-n},

and the associated constants below are all rational multiples of pi^n,
kept exact via :class:`~khessian.exact.PiRational`.
"""

from __future__ import annotations

import cmath
import enum
import math
from dataclasses import dataclass
from fractions import Fraction

from .exact import PiRational, sphere_volume, sphere_volume_exact


@dataclass(frozen=True)
class ProblemSpec:
    """Dimension n and Hessian order k, with 1 <= k <= n."""

    n: int
    k: int

    def __post_init__(self):
        if not isinstance(self.n, int) or self.n < 1:
            raise ValueError(f"n must be a positive integer, got {self.n!r}")
        if not isinstance(self.k, int) or not 1 <= self.k <= self.n:
            raise ValueError(f"k must satisfy 1 <= k <= n, got k={self.k!r}, n={self.n!r}")


@dataclass(frozen=True)
class NormalizationConstants:
    """Geometric constants of the radial reduction on the unit ball.

    sphere_area    surface measure of S^{2n-1} in C^n = R^{2n}
    energy_const   coefficient of integral(u_s^k s^n ds) in the Hessian energy,
                   sphere_area / (2k) * C(n-1, k-1)
    volume_const   coefficient turning integral(g(s) s^{n-1} ds) into a
                   volume integral over the ball, sphere_area / 2
    """

    sphere_area: PiRational
    energy_const: PiRational
    volume_const: PiRational


def normalization_constants(spec: ProblemSpec) -> NormalizationConstants:
    omega = sphere_volume_exact(2 * spec.n)
    binom = math.comb(spec.n - 1, spec.k - 1)
    return NormalizationConstants(
        sphere_area=omega,
        energy_const=omega * Fraction(binom, 2 * spec.k),
        volume_const=omega * Fraction(1, 2),
    )


def levi_ball_exact(spec: ProblemSpec) -> Fraction:
    """Boundary Hessian invariant S~_{k-1} of the unit sphere (radius 1)."""
    return Fraction(math.comb(spec.n - 1, spec.k - 1), 2 ** (spec.k + 1))


def levi_ball(spec: ProblemSpec, radius: float = 1.0) -> float:
    """Boundary Hessian invariant S~_{k-1} of the sphere of given radius.

    Equals C(n-1, k-1) / (2^{k+1} R^{k+1}); at k = 1, R = 1 this is the
    classical value 1/4 for mean curvature normalization.
    """
    if radius <= 0:
        raise ValueError(f"radius must be positive, got {radius!r}")
    return math.comb(spec.n - 1, spec.k - 1) / (2 ** (spec.k + 1) * radius ** (spec.k + 1))


def critical_exponent(spec: ProblemSpec):
    """Critical power gamma(k, n) = (n+1) k / (n - k).

    Returns an exact Fraction for k < n and math.inf for k = n (the
    Monge-Ampere case admits solutions of every power, so the critical
    exponent is an explicit infinity sentinel, never an overflow).
    """
    if spec.k == spec.n:
        return math.inf
    return Fraction((spec.n + 1) * spec.k, spec.n - spec.k)


@dataclass(frozen=True)
class Thresholds:
    """Sharp parameter thresholds of the exponential (nonlocal) problem.

    gamma   critical power (Fraction, or math.inf when k = n)
    a0      sharp Monge-Ampere threshold (n+1)^n pi^n / n!
    alpha1  basic nonexistence threshold (n(k+1)/k)^k C(n,k) pi^n / n!
    alpha2  improved nonexistence threshold alpha1 * (1 - t + t log t)^k
            with t = (n-k)/(n(k+1)); float because of the log
    beta    spiral-center parameter k^{k-1} C(n-1,k-1) pi^n / (n-1)!,
            None when k = n (no interior spiral center exists)
    """

    gamma: Fraction | float
    a0: PiRational
    alpha1: PiRational
    alpha2: float
    beta: PiRational | None


def thresholds(spec: ProblemSpec) -> Thresholds:
    n, k = spec.n, spec.k
    a0 = PiRational(Fraction((n + 1) ** n, math.factorial(n)), n)
    alpha1 = PiRational(
        Fraction(n**k * (k + 1) ** k * math.comb(n, k), k**k * math.factorial(n)), n
    )
    if k == n:
        alpha2 = float(alpha1)
        beta = None
    else:
        t = (n - k) / (n * (k + 1))
        alpha2 = float(alpha1) * (1.0 - t + t * math.log(t)) ** k
        beta = PiRational(
            Fraction(k ** (k - 1) * math.comb(n - 1, k - 1), math.factorial(n - 1)), n
        )
    return Thresholds(
        gamma=critical_exponent(spec), a0=a0, alpha1=alpha1, alpha2=alpha2, beta=beta
    )


class EquilibriumKind(enum.Enum):
    """Classification of the interior phase-plane equilibrium."""

    INTEGRABLE = "integrable"
    SPIRAL = "spiral"
    DEGENERATE_NODE = "degenerate-node"
    NODE = "node"


@dataclass(frozen=True)
class Linearization:
    """Eigenstructure of the phase-plane linearization at (v, w) = (1, n-k).

    The eigenvalues solve z^2 + (n-k) z + (n-k) = 0; eig1 is the root
    with the larger real part (the slow direction for nodes).  b_range
    is the admissible exponent interval [(-eig2)^{-1}, (-eig1)^{-1}]
    for the invariant-region boundary curve, defined when n - k >= 4.
    """

    eig1: complex
    eig2: complex
    kind: EquilibriumKind
    b_range: tuple[float, float] | None


def equilibrium_linearization(spec: ProblemSpec) -> Linearization:
    n, k = spec.n, spec.k
    m = n - k
    if m == 0:
        # Monge-Ampere case: the degenerate rest point sits on the w = 0
        # axis and the Jacobian is nilpotent; the system is integrable.
        return Linearization(0j, 0j, EquilibriumKind.INTEGRABLE, None)
    disc = m * m - 4 * m
    if disc < 0:
        root = cmath.sqrt(complex(disc))
        eig1 = (complex(k - n) + root) / 2
        eig2 = (complex(k - n) - root) / 2
        return Linearization(eig1, eig2, EquilibriumKind.SPIRAL, None)
    root = math.sqrt(disc)
    eig1 = complex((k - n + root) / 2)
    eig2 = complex((k - n - root) / 2)
    kind = EquilibriumKind.DEGENERATE_NODE if disc == 0 else EquilibriumKind.NODE
    b_range = (1.0 / (-eig2.real), 1.0 / (-eig1.real))
    return Linearization(eig1, eig2, kind, b_range)


def pohozaev_power_coefficient(spec: ProblemSpec, p) -> tuple[Fraction, bool]:
    """Sign coefficient n/(p+1) - (n-k)/(k+1) of the power-nonlinearity identity.

    Returns (coefficient, nonexistence_flag); the flag is set exactly
    when the coefficient is <= 0, which happens iff p >= gamma(k, n).
    Computed in exact rational arithmetic (a float p is taken at its
    exact binary value).  For k = n the coefficient is n/(p+1) > 0 and
    the flag never trips.
    """
    pf = Fraction(p)
    if pf <= 0:
        raise ValueError(f"power must be positive, got {p!r}")
    coefficient = Fraction(spec.n) / (pf + 1) - Fraction(spec.n - spec.k, spec.k + 1)
    return coefficient, coefficient <= 0


def alpha_tilde_real(k: int, d: int) -> float:
    """Real-case exponential nonexistence threshold on the ball in R^d.

    alpha~(k, d) = ((k+1) d)^k C(d-1, k-1) omega_{d-1} / k^{k+1}.
    """
    if not 1 <= k <= d / 2:
        raise ValueError(f"need 1 <= k <= d/2, got k={k!r}, d={d!r}")
    return ((k + 1) * d) ** k * math.comb(d - 1, k - 1) * sphere_volume(d) / k ** (k + 1)


@dataclass(frozen=True)
class RealMTConstants:
    """Moser-Trudinger-type constants for the real k = d/2 Hessian case.

    D            embedding constant d (omega_{d-1}/k C(d-1,k-1))^{2/d}
    p0, q0       conjugate exponent pair (d+2)/d and d/2 + 1
    E            extremal coefficient (D p0)^{-q0/p0} / q0
    alpha_tilde  exponential threshold alpha~(d/2, d)
    identity_rhs value of 1 / (E (k+1)); equals alpha_tilde up to rounding
    """

    d: int
    k: int
    D: float
    p0: Fraction
    q0: Fraction
    E: float
    alpha_tilde: float
    identity_rhs: float

    @property
    def identity_residual(self) -> float:
        return abs(self.alpha_tilde - self.identity_rhs) / self.alpha_tilde


def moser_trudinger(d: int) -> RealMTConstants:
    """Sharp-constant bookkeeping for the half-dimensional real Hessian case.

    Requires even d >= 2 and sets k = d/2.  Verifies the closing identity
    alpha~(d/2) = (E (k+1))^{-1} to 1e-12 relative and reports both sides.
    """
    if not isinstance(d, int) or d < 2 or d % 2 != 0:
        raise ValueError(f"dimension must be an even integer >= 2, got {d!r}")
    k = d // 2
    omega = sphere_volume(d)
    D = d * (omega / k * math.comb(d - 1, k - 1)) ** (2.0 / d)
    p0 = Fraction(d + 2, d)
    q0 = Fraction(d + 2, 2)
    E = (D * float(p0)) ** (-float(q0 / p0)) / float(q0)
    alpha_tilde = alpha_tilde_real(k, d)
    identity_rhs = 1.0 / (E * (k + 1))
    out = RealMTConstants(d, k, D, p0, q0, E, alpha_tilde, identity_rhs)
    if out.identity_residual > 1e-12:
        raise ArithmeticError(
            f"threshold identity failed at d={d}: "
            f"{alpha_tilde!r} vs {identity_rhs!r}"
        )
    return out
