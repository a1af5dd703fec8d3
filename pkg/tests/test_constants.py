"""Closed-form constants, thresholds, and equilibrium classification."""

import math
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from khessian import (
    EquilibriumKind,
    ProblemSpec,
    alpha_tilde_real,
    critical_exponent,
    equilibrium_linearization,
    levi_ball,
    levi_ball_exact,
    moser_trudinger,
    normalization_constants,
    pohozaev_power_coefficient,
    thresholds,
)
from khessian.exact import PiRational, sphere_volume_exact

spec_pairs = st.integers(1, 12).flatmap(
    lambda n: st.tuples(st.just(n), st.integers(1, n))
)


class TestProblemSpec:
    @pytest.mark.parametrize("n,k", [(0, 1), (3, 0), (3, 4), (-2, 1)])
    def test_rejects_out_of_range(self, n, k):
        with pytest.raises(ValueError):
            ProblemSpec(n, k)

    def test_accepts_full_range(self):
        ProblemSpec(1, 1)
        ProblemSpec(12, 7)


class TestCriticalExponent:
    @pytest.mark.parametrize(
        "n,k,expected",
        [
            (2, 1, Fraction(3)),
            (3, 1, Fraction(2)),
            (3, 2, Fraction(8)),
            (6, 2, Fraction(7, 2)),
            (6, 5, Fraction(35)),
        ],
    )
    def test_known_values(self, n, k, expected):
        assert critical_exponent(ProblemSpec(n, k)) == expected

    @given(spec_pairs)
    def test_formula_and_integrable_limit(self, nk):
        n, k = nk
        gamma = critical_exponent(ProblemSpec(n, k))
        if k == n:
            assert gamma == math.inf
        else:
            assert gamma == Fraction((n + 1) * k, n - k)
            assert gamma > k  # supercritical powers exceed the eigenvalue power


class TestThresholds:
    def test_a0_n1_is_two_pi(self):
        thr = thresholds(ProblemSpec(1, 1))
        assert thr.a0 == PiRational(Fraction(2), 1)

    @given(st.integers(1, 12))
    def test_a0_closed_form(self, n):
        thr = thresholds(ProblemSpec(n, n))
        expected = PiRational(
            Fraction((n + 1) ** n, math.factorial(n)), n
        )
        assert thr.a0 == expected

    @given(st.integers(1, 12))
    def test_alpha1_equals_a0_in_integrable_case(self, n):
        thr = thresholds(ProblemSpec(n, n))
        # exact equality in rational-pi arithmetic, stronger than 1e-12
        assert thr.alpha1 == thr.a0
        assert thr.beta is None

    @given(spec_pairs.filter(lambda nk: nk[1] < nk[0]))
    def test_beta_closed_form(self, nk):
        n, k = nk
        thr = thresholds(ProblemSpec(n, k))
        expected = PiRational(
            Fraction(k ** (k - 1) * math.comb(n - 1, k - 1), math.factorial(n - 1)), n
        )
        assert thr.beta == expected

    @given(spec_pairs.filter(lambda nk: nk[1] < nk[0]))
    def test_improved_threshold_below_basic(self, nk):
        n, k = nk
        thr = thresholds(ProblemSpec(n, k))
        assert 0.0 < thr.alpha2 < float(thr.alpha1)

    def test_integrable_case_alpha2_equals_alpha1(self):
        thr = thresholds(ProblemSpec(4, 4))
        assert thr.alpha2 == pytest.approx(float(thr.alpha1), rel=1e-15)


class TestNormalizationConstants:
    @given(spec_pairs)
    def test_sphere_area_matches_real_dimension(self, nk):
        n, k = nk
        consts = normalization_constants(ProblemSpec(n, k))
        assert consts.sphere_area == sphere_volume_exact(2 * n)

    def test_energy_const_value(self):
        # (omega / 2k) C(n-1, k-1) at (n, k) = (3, 2): omega = pi^3, C = 2
        consts = normalization_constants(ProblemSpec(3, 2))
        assert float(consts.energy_const) == pytest.approx(
            math.pi**3 / 4.0 * 2.0, rel=1e-15
        )


class TestLeviInvariant:
    @given(spec_pairs)
    def test_exact_value(self, nk):
        n, k = nk
        spec = ProblemSpec(n, k)
        assert levi_ball_exact(spec) == Fraction(
            math.comb(n - 1, k - 1), 2 ** (k + 1)
        )

    def test_mean_curvature_normalization(self):
        assert levi_ball(ProblemSpec(5, 1)) == 0.25

    @given(spec_pairs, st.floats(0.1, 10.0))
    def test_radius_scaling(self, nk, radius):
        spec = ProblemSpec(*nk)
        scaled = levi_ball(spec, radius)
        assert scaled == pytest.approx(
            levi_ball(spec) / radius ** (spec.k + 1), rel=1e-12
        )

    def test_rejects_nonpositive_radius(self):
        with pytest.raises(ValueError):
            levi_ball(ProblemSpec(2, 1), 0.0)


class TestEquilibriumLinearization:
    @given(spec_pairs)
    def test_classification_by_gap(self, nk):
        n, k = nk
        lin = equilibrium_linearization(ProblemSpec(n, k))
        gap = n - k
        if gap == 0:
            assert lin.kind is EquilibriumKind.INTEGRABLE
        elif gap < 4:
            assert lin.kind is EquilibriumKind.SPIRAL
            assert lin.eig1.imag != 0.0
        elif gap == 4:
            assert lin.kind is EquilibriumKind.DEGENERATE_NODE
        else:
            assert lin.kind is EquilibriumKind.NODE
            assert lin.eig1.imag == 0.0

    @given(spec_pairs)
    def test_eigenvalue_sum_and_product(self, nk):
        n, k = nk
        lin = equilibrium_linearization(ProblemSpec(n, k))
        gap = n - k
        assert lin.eig1 + lin.eig2 == pytest.approx(-gap, abs=1e-12)
        assert lin.eig1 * lin.eig2 == pytest.approx(gap, abs=1e-12)

    @given(spec_pairs)
    def test_stability(self, nk):
        n, k = nk
        lin = equilibrium_linearization(ProblemSpec(n, k))
        if n > k:
            assert lin.eig1.real < 0 and lin.eig2.real < 0

    def test_b_range_only_for_wide_gap(self):
        assert equilibrium_linearization(ProblemSpec(6, 5)).b_range is None
        b_range = equilibrium_linearization(ProblemSpec(6, 1)).b_range
        assert b_range is not None
        assert 0.0 < b_range[0] <= b_range[1] < 1.0


class TestPowerCoefficient:
    @given(
        spec_pairs.filter(lambda nk: nk[1] < nk[0]),
        st.fractions(min_value="1/10", max_value=60, max_denominator=64),
    )
    def test_sign_flags_supercritical(self, nk, p):
        spec = ProblemSpec(*nk)
        coeff, nonexist = pohozaev_power_coefficient(spec, p)
        gamma = critical_exponent(spec)
        assert coeff == Fraction(spec.n, 1) / (p + 1) - Fraction(
            spec.n - spec.k, spec.k + 1
        )
        assert nonexist == (p >= gamma)
        assert (coeff <= 0) == nonexist

    def test_exact_boundary(self):
        spec = ProblemSpec(2, 1)
        coeff, nonexist = pohozaev_power_coefficient(spec, Fraction(3))
        assert coeff == 0 and nonexist

    def test_rejects_nonpositive_power(self):
        with pytest.raises(ValueError):
            pohozaev_power_coefficient(ProblemSpec(2, 1), 0)


class TestRealEmbedding:
    @pytest.mark.parametrize("d", list(range(2, 17, 2)))
    def test_identity_residual_even_dimensions(self, d):
        mt = moser_trudinger(d)
        assert mt.identity_residual <= 1e-12
        assert mt.alpha_tilde == pytest.approx(
            alpha_tilde_real(mt.k, d), rel=1e-15
        )

    def test_rejects_odd_dimension(self):
        with pytest.raises(ValueError):
            moser_trudinger(3)

    def test_alpha_tilde_domain(self):
        with pytest.raises(ValueError):
            alpha_tilde_real(3, 4)  # k > d/2
