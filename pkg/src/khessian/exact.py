"""Exact rational-times-pi arithmetic.

Every closed-form constant in this package that reduces to
(rational) * pi**m is kept in that form until a float is actually
needed, so threshold identities can be checked without rounding.
Gamma-function values at integer and half-integer arguments are
evaluated by the factorial recursion, never by a general Gamma
approximation.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction


@dataclass(frozen=True)
class PiRational:
    """A number of the form ``coef * pi**pi_power`` with exact rational coef."""

    coef: Fraction
    pi_power: int = 0

    def __post_init__(self):
        if not isinstance(self.coef, Fraction):
            object.__setattr__(self, "coef", Fraction(self.coef))
        if self.coef == 0:
            # normalize so 0*pi^m compares equal regardless of m
            object.__setattr__(self, "pi_power", 0)

    def __float__(self) -> float:
        return float(self.coef) * math.pi ** self.pi_power

    def __mul__(self, other):
        if isinstance(other, PiRational):
            return PiRational(self.coef * other.coef, self.pi_power + other.pi_power)
        if isinstance(other, (int, Fraction)):
            return PiRational(self.coef * other, self.pi_power)
        return NotImplemented

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, PiRational):
            if other.coef == 0:
                raise ZeroDivisionError("division by zero PiRational")
            return PiRational(self.coef / other.coef, self.pi_power - other.pi_power)
        if isinstance(other, (int, Fraction)):
            return PiRational(self.coef / other, self.pi_power)
        return NotImplemented

    def __pow__(self, exponent: int):
        if not isinstance(exponent, int) or exponent < 0:
            raise ValueError("only nonnegative integer powers are exact")
        return PiRational(self.coef ** exponent, self.pi_power * exponent)

    def __repr__(self) -> str:
        if self.pi_power == 0:
            return f"PiRational({self.coef})"
        return f"PiRational({self.coef} * pi^{self.pi_power})"

    def __str__(self) -> str:
        if self.pi_power == 0:
            return str(self.coef)
        return f"{self.coef} * pi^{self.pi_power}"


def sphere_volume_exact(d: int) -> PiRational:
    """Surface measure of the unit sphere S^{d-1} in R^d, exactly.

    Equals 2 pi^{d/2} / Gamma(d/2).  For even d this is rational times
    pi^{d/2}; for odd d the half-integer Gamma value carries a sqrt(pi)
    that cancels, leaving rational times pi^{(d-1)/2}.
    """
    if not isinstance(d, int) or d < 1:
        raise ValueError(f"dimension must be a positive integer, got {d!r}")
    if d % 2 == 0:
        m = d // 2
        return PiRational(Fraction(2, math.factorial(m - 1)), m)
    m = (d - 1) // 2
    # Gamma(m + 1/2) = sqrt(pi) (2m)! / (4^m m!)
    return PiRational(Fraction(2 * 4**m * math.factorial(m), math.factorial(2 * m)), m)


def sphere_volume(d: int) -> float:
    return float(sphere_volume_exact(d))
