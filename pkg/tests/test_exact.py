"""Exact rational-times-pi arithmetic."""

import math
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from khessian.exact import PiRational, sphere_volume, sphere_volume_exact

fractions = st.fractions(
    min_value=Fraction(-(10**6)), max_value=Fraction(10**6), max_denominator=10**4
)


class TestPiRational:
    def test_float_value(self):
        x = PiRational(Fraction(9, 2), 2)
        assert float(x) == pytest.approx(4.5 * math.pi**2, rel=1e-15)

    def test_pi_power_zero_is_plain_rational(self):
        assert float(PiRational(Fraction(3, 4))) == 0.75

    def test_zero_normalizes_pi_power(self):
        assert PiRational(Fraction(0), 5) == PiRational(Fraction(0), 0)

    @given(fractions, fractions, st.integers(0, 6), st.integers(0, 6))
    def test_multiplication_exact(self, c1, c2, m1, m2):
        prod = PiRational(c1, m1) * PiRational(c2, m2)
        assert prod.coef == c1 * c2
        if c1 * c2 != 0:
            assert prod.pi_power == m1 + m2

    @given(fractions, st.integers(0, 6), st.integers(0, 4))
    def test_power_matches_repeated_product(self, c, m, e):
        x = PiRational(c, m)
        expected = PiRational(Fraction(1), 0)
        for _ in range(e):
            expected = expected * x
        assert x**e == expected

    def test_division_inverse_of_multiplication(self):
        x = PiRational(Fraction(7, 3), 4)
        y = PiRational(Fraction(2, 5), 1)
        assert (x * y) / y == x

    def test_division_by_zero_rejected(self):
        with pytest.raises(ZeroDivisionError):
            PiRational(Fraction(1), 1) / PiRational(Fraction(0))

    def test_negative_power_rejected(self):
        with pytest.raises(ValueError):
            PiRational(Fraction(2)) ** -1

    def test_int_and_fraction_scalars(self):
        x = PiRational(Fraction(1, 2), 3)
        assert 4 * x == PiRational(Fraction(2), 3)
        assert x * Fraction(2, 3) == PiRational(Fraction(1, 3), 3)
        assert x / 2 == PiRational(Fraction(1, 4), 3)

    def test_str_forms(self):
        assert str(PiRational(Fraction(9, 2), 2)) == "9/2 * pi^2"
        assert str(PiRational(Fraction(5, 7))) == "5/7"
        assert "PiRational" in repr(PiRational(Fraction(1), 1))


class TestSphereVolume:
    # surface measure of S^{d-1}: two points, circle, sphere, ...
    @pytest.mark.parametrize(
        "d,expected",
        [
            (1, PiRational(Fraction(2), 0)),
            (2, PiRational(Fraction(2), 1)),
            (3, PiRational(Fraction(4), 1)),
            (4, PiRational(Fraction(2), 2)),
            (6, PiRational(Fraction(1), 3)),
        ],
    )
    def test_known_values(self, d, expected):
        assert sphere_volume_exact(d) == expected

    @given(st.integers(1, 40))
    def test_dimension_recursion(self, d):
        # area(S^{d+1}) = (2 pi / d) area(S^{d-1}), exactly
        lhs = sphere_volume_exact(d + 2)
        rhs = sphere_volume_exact(d) * PiRational(Fraction(2, d), 1)
        assert lhs == rhs

    def test_float_wrapper(self):
        assert sphere_volume(3) == pytest.approx(4 * math.pi, rel=1e-15)

    @pytest.mark.parametrize("bad", [0, -1, 2.0])
    def test_rejects_bad_dimension(self, bad):
        with pytest.raises(ValueError):
            sphere_volume_exact(bad)
