"""Acceptance gates: seven primary criteria, one pass/fail line each.

Run `pytest -v tests/test_acceptance.py` to get exactly one line per
criterion.  Every test asserts its stated numerical tolerances and its
own wall-clock budget; nothing here is weakened for speed.
"""

import math
import time
from contextlib import contextmanager
from fractions import Fraction
from math import comb, factorial

import numpy as np
import pytest

from khessian import (
    IntegratorConfig,
    NonlinearitySpec,
    PhasePoint,
    PiRational,
    ProblemSpec,
    ShootingStatus,
    bifurcation_sweep,
    count_crossings,
    critical_exponent,
    equilibrium_linearization,
    explicit_ma,
    explicit_ma_phase,
    hessian_residual,
    identity_radial,
    in_invariant_region,
    integrate_trajectory,
    lyapunov,
    moser_trudinger,
    nonexistence_exponential,
    normalization_constants,
    normalization_integral,
    path_distance,
    real_halfdim,
    reconstruct_profile,
    shoot_power,
    thresholds,
)


@contextmanager
def budget(seconds: float):
    start = time.perf_counter()
    yield
    elapsed = time.perf_counter() - start
    print(f"runtime {elapsed:.2f} s (budget {seconds:g} s)")
    assert elapsed < seconds, f"runtime {elapsed:.2f} s exceeds budget {seconds:g} s"


def test_criterion_1_thresholds():
    with budget(1.0):
        # sharp threshold in one complex dimension
        one = thresholds(ProblemSpec(1, 1))
        assert one.a0 == PiRational(Fraction(2), 1)
        assert float(one.a0) == 2.0 * math.pi

        for n in range(1, 13):
            top = thresholds(ProblemSpec(n, n))
            # closed form of the sharp threshold, exact in rational-pi form
            assert top.a0 == PiRational(Fraction((n + 1) ** n, factorial(n)), n)
            # basic nonexistence threshold collapses onto it at k = n
            assert top.alpha1 == top.a0
            assert float(top.alpha1) == pytest.approx(float(top.a0), rel=1e-12)

            for k in range(1, n):
                spec = ProblemSpec(n, k)
                thr = thresholds(spec)
                closed = PiRational(
                    Fraction(k ** (k - 1) * comb(n - 1, k - 1), factorial(n - 1)), n
                )
                assert thr.beta == closed
                # equivalently k^k times the energy normalization constant
                consts = normalization_constants(spec)
                assert thr.beta == consts.energy_const * k**spec.k


def test_criterion_2_explicit_family_audit():
    with budget(10.0):
        worst_eq, worst_id = 0.0, 0.0
        for n in (1, 2, 3, 6):
            spec = ProblemSpec(n, n)
            omega = float(normalization_constants(spec).sphere_area)
            for eps in (0.1, 0.5, 1.0, 2.0):
                profile, a = explicit_ma(n, eps)  # 2000-point default grid
                integral = normalization_integral(profile, n)
                rhs = a * np.exp(-profile.u) / (omega / 2.0 * integral)
                eq_res = hessian_residual(spec, profile, rhs)
                report = identity_radial(
                    spec, profile, NonlinearitySpec.exponential_nonlocal(a)
                )
                assert eq_res <= 1e-6, (n, eps, eq_res)
                assert report.residual <= 1e-6, (n, eps, report.residual)
                worst_eq = max(worst_eq, eq_res)
                worst_id = max(worst_id, report.residual)
        print(f"worst equation residual {worst_eq:.3e}, identity {worst_id:.3e}")


def test_criterion_3_integrable_phase_oracle():
    with budget(30.0):
        n = 6
        spec = ProblemSpec(n, n)
        traj = integrate_trajectory(spec, IntegratorConfig(rel_tol=1e-10))

        # time-align against the closed-form member with unit scale: pick
        # the shift that matches v at a mid-range reference level
        v_limit = ((n + 1) / n) ** n
        v_ref = 0.5 * v_limit
        t_ref = traj.time_at_v(v_ref)
        r = n * v_ref ** (1.0 / n) / (n + 1)  # = s/(s+1) at the reference
        shift = math.log(r / (1.0 - r)) - t_ref

        sigma = np.exp(traj.t + shift)
        oracle = [explicit_ma_phase(n, 1.0, s) for s in sigma]
        dev_v = np.abs(traj.v - np.array([pt.v for pt in oracle])).max()
        dev_w = np.abs(traj.w - np.array([pt.w for pt in oracle])).max()
        print(f"alignment deviation: v {dev_v:.3e}, w {dev_w:.3e}")
        assert max(dev_v, dev_w) <= 1e-7

        # supremum of the solvable parameter range
        a0 = float(thresholds(spec).a0)
        diagram = bifurcation_sweep(spec, [a0 / 2.0], traj=traj)
        rel = abs(diagram.alpha_star_estimate / a0 - 1.0)
        print(f"alpha* = {diagram.alpha_star_estimate:.12g}, a0 = {a0:.12g}, rel {rel:.3e}")
        assert rel <= 1e-3


def test_criterion_4_trichotomy_n6():
    with budget(60.0):
        # k = 1: node.  The orbit climbs monotonically to the equilibrium
        # inside the invariant region; no parameter has two solutions.
        spec1 = ProblemSpec(6, 1)
        traj1 = integrate_trajectory(spec1)
        assert np.all(np.diff(traj1.v) >= -1e-12 * np.abs(traj1.v[:-1]) - 1e-15)
        assert all(
            in_invariant_region(spec1, PhasePoint(v, w), tol=1e-9)
            for v, w in zip(traj1.v, traj1.w)
        )
        beta1 = float(thresholds(spec1).beta)
        grid1 = np.linspace(0.05 * beta1, 1.5 * beta1, 30)
        counts1 = [e.count for e in bifurcation_sweep(spec1, grid1, traj=traj1).entries]
        assert max(counts1) <= 1
        print(f"k=1 counts over {len(counts1)} values: max {max(counts1)}")

        # k = 5: spiral.  Tightening the equilibrium radius reveals more
        # turns; counts climb approaching the accumulation marker beta.
        spec5 = ProblemSpec(6, 5)
        traj5_default = integrate_trajectory(spec5)
        traj5 = integrate_trajectory(spec5, IntegratorConfig(eq_radius=1e-9))
        turns_default = count_crossings(traj5_default, 1.0).count
        turns = count_crossings(traj5, 1.0).count
        print(f"k=5 crossings of v=1: {turns_default} at 1e-6, {turns} at 1e-9")
        assert turns >= 10
        assert turns > turns_default  # resolution-limited, not exhausted

        beta5 = float(thresholds(spec5).beta)
        offsets = (1e-2, 1e-3, 1e-4)
        a_grid = [beta5 * (1.0 - d) for d in offsets] + [
            beta5 * (1.0 + d) for d in reversed(offsets)
        ]
        counts5 = [
            e.count for e in bifurcation_sweep(spec5, a_grid, traj=traj5).entries
        ]
        below = counts5[:3]          # offsets shrinking toward beta
        above = counts5[:2:-1]       # offsets shrinking toward beta
        print(f"k=5 counts near beta: below {below}, above {above}")
        assert max(counts5) >= 5
        assert all(x <= y for x, y in zip(below, below[1:]))
        assert all(x <= y for x, y in zip(above, above[1:]))
        assert below[-1] > below[0] or above[-1] > above[0]

        # k = 6: integrable.  Exactly one solution for every a below a0.
        spec6 = ProblemSpec(6, 6)
        traj6 = integrate_trajectory(spec6)
        a0 = float(thresholds(spec6).a0)
        grid6 = np.linspace(a0 / 20.0, a0 * (1.0 - 1e-6), 25)
        counts6 = [e.count for e in bifurcation_sweep(spec6, grid6, traj=traj6).entries]
        assert counts6 == [1] * len(counts6)
        print(f"k=6 counts below a0: all {counts6[0]}")


def test_criterion_5_shooting_dichotomy():
    with budget(60.0):
        for n, k in ((2, 1), (3, 1), (3, 2), (6, 2)):
            spec = ProblemSpec(n, k)
            gamma = float(critical_exponent(spec))
            sub = shoot_power(spec, 0.8 * gamma, m=1.0, s_cap=1e6)
            assert sub.status is ShootingStatus.ZERO_FOUND, (n, k)
            assert sub.first_zero is not None and sub.first_zero > 0.0
            for p in (gamma, 1.2 * gamma):
                res = shoot_power(spec, p, m=1.0, s_cap=1e6)
                assert res.status is ShootingStatus.NO_ZERO_WITHIN_CAP, (n, k, p)
                assert res.first_zero is None
            print(f"({n},{k}): zero at s = {sub.first_zero:.6g} below gamma; none at/above")


def test_criterion_6_frontier_consistency():
    with budget(60.0):
        checked = 0
        for n, k in ((2, 1), (3, 1), (3, 2), (6, 2), (6, 5)):
            spec = ProblemSpec(n, k)
            traj = integrate_trajectory(spec)
            alpha1 = float(thresholds(spec).alpha1)
            grid = np.linspace(0.05 * alpha1, 1.5 * alpha1, 25)
            diagram = bifurcation_sweep(spec, grid, traj=traj)
            for entry in diagram.entries:
                if nonexistence_exponential(spec, entry.a).triggered:
                    assert entry.count == 0, (n, k, entry.a, entry.count)
                    checked += 1
        assert checked > 0
        print(f"{checked} triggered parameters, all with count 0")


def test_criterion_7_property_suites():
    with budget(120.0):
        specs = [
            (2, 1), (3, 1), (3, 2), (4, 1), (4, 2),
            (4, 3), (5, 2), (6, 1), (6, 2), (6, 5),
        ]
        assert len(specs) == 10
        for n, k in specs:
            spec = ProblemSpec(n, k)
            traj = integrate_trajectory(spec)
            # quadrant invariance on every dense sample
            assert np.all(traj.v > 0.0) and np.all(traj.w > 0.0), (n, k)
            # Lyapunov monotonicity along the orbit
            values = np.array(
                [lyapunov(spec, PhasePoint(v, w)) for v, w in zip(traj.v, traj.w)]
            )
            slack = 1e-12 + 1e-9 * np.abs(values[:-1])
            assert np.all(np.diff(values) <= slack), (n, k)
            # region invariance wherever the region exists (gap >= 4)
            if equilibrium_linearization(spec).b_range is not None:
                assert all(
                    in_invariant_region(spec, PhasePoint(v, w), tol=1e-9)
                    for v, w in zip(traj.v, traj.w)
                ), (n, k)
        print("lyapunov + invariance: 10 specs")

        # seed robustness: halving the seed moves the path by less than
        # ten times the integration tolerance
        for n, k in ((3, 2), (6, 5)):
            spec = ProblemSpec(n, k)
            first = integrate_trajectory(spec)
            second = integrate_trajectory(spec, IntegratorConfig(seed_delta=5e-9))
            dist = path_distance(first, second)
            print(f"({n},{k}) seed path distance {dist:.3e}")
            assert dist <= 10.0 * IntegratorConfig().rel_tol

        # nonlocal multiplier consistency w(0) * I = v(0) after profile
        # reconstruction, spiral and integrable alike
        for (n, k), level in (((6, 5), 0.8), ((6, 6), 1.5)):
            spec = ProblemSpec(n, k)
            traj = integrate_trajectory(spec)
            t_star = traj.time_at_v(level)
            profile = reconstruct_profile(spec, traj, t_star)
            integral = normalization_integral(profile, n)
            v0, w0 = traj.eval(t_star)
            gap = abs(w0 * integral / v0 - 1.0)
            print(f"({n},{k}) nonlocal consistency {gap:.3e}")
            assert gap <= 1e-6

        # embedding-threshold identity across even real dimensions
        for d in range(2, 17, 2):
            assert moser_trudinger(d).identity_residual <= 1e-12, d

        # real-variable half-dimension family solves its radial equation
        for d in (2, 4, 8):
            fam = real_halfdim(d, 1.0)
            assert fam.ode_residual <= 1e-6, d
        print("moser-trudinger d=2..16, real half-dimension d=2,4,8")
