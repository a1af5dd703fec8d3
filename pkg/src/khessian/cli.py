"""Command-line surface: exponents, phase, bifurcation, profile, shoot, audit.

Every command writes its file outputs plus a RunManifest into the output
directory (--out flag, else the KHESSIAN_OUT_DIR environment variable,
else the current directory).  All CSV/JSON outputs are byte-deterministic
for identical inputs; SVG output differs only in a timestamp comment.

Exit codes: 0 all requested checks passed; 1 a numerical check failed;
2 usage or input-format error; 3 integration fault.
"""

from __future__ import annotations

import argparse
import math
import sys
from fractions import Fraction
from typing import Any

import numpy as np

from .constants import (
    ProblemSpec,
    critical_exponent,
    equilibrium_linearization,
    moser_trudinger,
    normalization_constants,
    pohozaev_power_coefficient,
    thresholds,
)
from .io import (
    OUTPUT_DIR_ENV,
    VERSION,
    CsvFormatError,
    format_float,
    output_dir,
    profile_from_csv,
    profile_to_csv,
    write_csv,
    write_json,
    write_manifest,
)
from .phaseplane import (
    IntegrationFault,
    IntegratorConfig,
    Termination,
    bifurcation_sweep,
    count_crossings,
    integrate_trajectory,
    parameter_of_point,
)
from .pohozaev import (
    NonlinearitySpec,
    Verdict,
    flux_lower_bound,
    identity_radial,
    nonexistence_exponential,
)
from .profiles import (
    DEFAULT_GRID_POINTS,
    DEFAULT_S_MIN,
    default_grid,
    explicit_ma,
    hessian_residual,
    normalization_integral,
    reconstruct_profile,
    shoot_power,
    shooting_unit_profile,
)
from .svg import phase_diagram_svg

EXIT_OK = 0
EXIT_CHECK_FAILED = 1
EXIT_USAGE = 2
EXIT_FAULT = 3

# identity/consistency gate (quadrature scale on the default grid)
DEFAULT_TOL = 1e-6
# pointwise equation-residual gate for reconstructed profiles: the orbit
# seed sits on a cubic truncation of the unstable manifold, leaving a
# relative bias of order seed_delta^{2/k} near the center (1.2e-5 at
# (n,k) = (6,5) with the default seed), well inside this gate
DEFAULT_HESSIAN_TOL = 1e-4


def _spec_from(args: argparse.Namespace) -> ProblemSpec:
    return ProblemSpec(args.n, args.k)


def _integrator_config(args: argparse.Namespace) -> IntegratorConfig:
    kwargs: dict[str, float] = {}
    if getattr(args, "seed_delta", None) is not None:
        kwargs["seed_delta"] = args.seed_delta
    if getattr(args, "t_max", None) is not None:
        kwargs["t_max"] = args.t_max
    return IntegratorConfig(**kwargs)


def _config_params(config: IntegratorConfig) -> dict[str, float]:
    return {
        "seed_delta": config.seed_delta,
        "t_max": config.t_max,
        "rel_tol": config.rel_tol,
        "abs_tol": config.abs_tol,
        "eq_radius": config.eq_radius,
    }


def _print_check(name: str, value: float, bound: float) -> bool:
    # plain bool: numpy comparisons yield np.bool_, which would serialize
    # as a float string instead of a JSON boolean
    ok = bool(value <= bound)
    print(f"  check {name}: {value:.3e} <= {bound:.3e}  [{'pass' if ok else 'FAIL'}]")
    return ok


# ---------------------------------------------------------------------------
# exponents
# ---------------------------------------------------------------------------


def cmd_exponents(args: argparse.Namespace) -> int:
    spec = _spec_from(args)
    thr = thresholds(spec)
    lin = equilibrium_linearization(spec)
    consts = normalization_constants(spec)

    print(f"n = {spec.n}, k = {spec.k}")
    if spec.k == spec.n:
        print("gamma (critical power)  = infinity (integrable case)")
    else:
        print(f"gamma (critical power)  = {thr.gamma} = {float(thr.gamma):.12g}")
    print(f"a0     = {thr.a0} = {float(thr.a0):.12g}")
    print(f"alpha1 = {thr.alpha1} = {float(thr.alpha1):.12g}")
    print(f"alpha2 = {format_float(thr.alpha2)}")
    if thr.beta is None:
        print("beta   = none (no interior equilibrium for k = n)")
    else:
        print(f"beta   = {thr.beta} = {float(thr.beta):.12g}")
    print(
        f"equilibrium eigenvalues = {lin.eig1:.6g}, {lin.eig2:.6g}; "
        f"classification = {lin.kind.value}"
    )

    doc: dict[str, Any] = {
        "n": spec.n,
        "k": spec.k,
        "gamma": "infinity" if thr.gamma == math.inf else str(thr.gamma),
        "gamma_float": float(thr.gamma) if thr.gamma != math.inf else "infinity",
        "a0_exact": str(thr.a0),
        "a0": float(thr.a0),
        "alpha1_exact": str(thr.alpha1),
        "alpha1": float(thr.alpha1),
        "alpha2": thr.alpha2,
        "beta_exact": None if thr.beta is None else str(thr.beta),
        "beta": None if thr.beta is None else float(thr.beta),
        "eigenvalue_1": [lin.eig1.real, lin.eig1.imag],
        "eigenvalue_2": [lin.eig2.real, lin.eig2.imag],
        "classification": lin.kind.value,
        "sphere_area": float(consts.sphere_area),
    }

    ok = True
    if args.p is not None:
        coeff, nonexist = pohozaev_power_coefficient(spec, args.p)
        gamma_text = "infinity" if thr.gamma == math.inf else str(thr.gamma)
        if nonexist:
            print(f"p = {args.p:g} >= gamma = {gamma_text}: nonexistence")
        else:
            print(f"p = {args.p:g} < gamma = {gamma_text}: subcritical range")
        doc["power"] = args.p
        doc["power_coefficient"] = str(coeff)
        doc["power_nonexistence"] = bool(nonexist)
        verdict = nonexistence_exponential(spec, float(thr.alpha1))
        doc["threshold_verdict_at_alpha1"] = verdict.triggered
    if args.d is not None:
        mt = moser_trudinger(args.d)
        print(
            f"real half-dimension case d = {mt.d}: embedding constant D = {mt.D:.12g}, "
            f"threshold = {mt.alpha_tilde:.12g}, identity residual = {mt.identity_residual:.3e}"
        )
        doc["mt_dimension"] = mt.d
        doc["mt_embedding_constant"] = mt.D
        doc["mt_threshold"] = mt.alpha_tilde
        doc["mt_identity_residual"] = mt.identity_residual
        ok = _print_check("moser-trudinger identity", mt.identity_residual, 1e-12) and ok

    outdir = output_dir(args.out)
    json_path = write_json(outdir / f"exponents_n{spec.n}_k{spec.k}.json", doc)
    params = {"n": spec.n, "k": spec.k, "p": args.p, "d": args.d}
    write_manifest(outdir, "exponents", params, {"mt_identity": 1e-12}, [json_path])
    print(f"wrote {json_path}")
    return EXIT_OK if ok else EXIT_CHECK_FAILED


# ---------------------------------------------------------------------------
# phase
# ---------------------------------------------------------------------------


def cmd_phase(args: argparse.Namespace) -> int:
    spec = _spec_from(args)
    config = _integrator_config(args)
    traj = integrate_trajectory(spec, config)

    print(
        f"orbit for n = {spec.n}, k = {spec.k}: termination = {traj.termination.value}, "
        f"t_end = {traj.t_end:.6f}, terminal point = "
        f"({traj.v[-1]:.9g}, {traj.w[-1]:.9g})"
    )
    t_peak, v_peak = traj.v_max()
    print(f"max v = {v_peak:.12g} at t = {t_peak:.6f}")
    if spec.k < spec.n:
        crossings = count_crossings(traj, 1.0)
        print(f"crossings of v = 1: {crossings.count} (tail: {crossings.tail.value})")

    outdir = output_dir(args.out)
    base = f"phase_n{spec.n}_k{spec.k}"
    csv_path = write_csv(outdir / f"{base}.csv", ("t", "v", "w"), [traj.t, traj.v, traj.w])
    svg_path = outdir / f"{base}.svg"
    svg_path.write_text(phase_diagram_svg(spec, traj), encoding="ascii")
    params = {"n": spec.n, "k": spec.k, **_config_params(config)}
    write_manifest(outdir, "phase", params, {}, [csv_path, svg_path])
    print(f"wrote {csv_path}")
    print(f"wrote {svg_path}")

    if traj.termination is Termination.TIME_CAP:
        print("check termination: time cap reached before a limit state  [FAIL]")
        return EXIT_CHECK_FAILED
    return EXIT_OK


# ---------------------------------------------------------------------------
# bifurcation
# ---------------------------------------------------------------------------


def cmd_bifurcation(args: argparse.Namespace) -> int:
    spec = _spec_from(args)
    config = _integrator_config(args)
    thr = thresholds(spec)

    traj = integrate_trajectory(spec, config)
    # default sweep range: slightly past the largest parameter the orbit
    # reaches, so the count structure (rise near beta, drop past alpha*)
    # fills the grid instead of a long zero tail
    alpha_star_preview = parameter_of_point(spec, traj.v_max()[1])
    a_max = args.a_max if args.a_max is not None else 1.05 * alpha_star_preview
    a_min = args.a_min if args.a_min is not None else a_max / args.a_count
    if not 0 < a_min < a_max:
        raise ValueError(f"need 0 < a_min < a_max, got {a_min!r}, {a_max!r}")
    a_grid = np.linspace(a_min, a_max, args.a_count)

    diag = bifurcation_sweep(spec, a_grid, config=config, traj=traj)
    counts = diag.counts()
    print(
        f"bifurcation sweep for n = {spec.n}, k = {spec.k}: {len(counts)} parameters "
        f"in [{a_min:.6g}, {a_max:.6g}]"
    )
    print(f"alpha* estimate = {diag.alpha_star_estimate:.12g} ({diag.attainment_note})")
    if diag.beta_marker is not None:
        print(f"beta marker     = {diag.beta_marker:.12g}")
    print(f"counts: min = {min(counts)}, max = {max(counts)}")

    outdir = output_dir(args.out)
    base = f"bifurcation_n{spec.n}_k{spec.k}"
    csv_path = write_csv(
        outdir / f"{base}.csv",
        ("a", "v_star", "count"),
        [
            [e.a for e in diag.entries],
            [e.v_star for e in diag.entries],
            [float(e.count) for e in diag.entries],
        ],
    )
    summary = {
        "n": spec.n,
        "k": spec.k,
        "alpha_star_estimate": diag.alpha_star_estimate,
        "attainment_note": diag.attainment_note,
        "beta_marker": diag.beta_marker,
        "a0": float(thr.a0),
        "alpha1": float(thr.alpha1),
        "alpha2": thr.alpha2,
        "counts": counts,
        "tails": [e.tail.value for e in diag.entries],
    }
    json_path = write_json(outdir / f"{base}.json", summary)
    params = {
        "n": spec.n,
        "k": spec.k,
        "a_min": a_min,
        "a_max": a_max,
        "a_count": args.a_count,
        **_config_params(config),
    }
    write_manifest(outdir, "bifurcation", params, {}, [csv_path, json_path])
    print(f"wrote {csv_path}")
    print(f"wrote {json_path}")
    return EXIT_OK


# ---------------------------------------------------------------------------
# profile
# ---------------------------------------------------------------------------


def _reconstruction_grid(points: int, t_star: float, integrable: bool) -> np.ndarray:
    """Default grid, extended downward when the integrable-case center
    layer at scale e^{-t_star} would fall below it (density preserved)."""
    s_min = DEFAULT_S_MIN
    if integrable:
        s_min = min(s_min, math.exp(-(t_star + 12.0)))
    span = -math.log(s_min)
    pts = max(points, int(math.ceil(points * span / math.log(1.0 / DEFAULT_S_MIN))))
    return default_grid(points=pts, s_min=s_min)


def cmd_profile(args: argparse.Namespace) -> int:
    spec = _spec_from(args)
    n, k = spec.n, spec.k
    consts = normalization_constants(spec)
    omega = float(consts.sphere_area)
    outdir = output_dir(args.out)
    tol = args.tol if args.tol is not None else DEFAULT_TOL
    tol_hessian = args.tol_hessian

    if args.explicit is not None:
        if k != n:
            raise ValueError("--explicit requires k = n (integrable family)")
        eps = args.explicit
        grid = default_grid(points=args.grid)
        profile, a = explicit_ma(n, eps, grid=grid)
        mode: dict[str, Any] = {"mode": "explicit", "eps": eps}
        base = f"profile_n{n}_k{k}_eps{eps:g}"
        # exact normalization integral of the family
        integral_exact = (1.0 + eps**2) / (n * eps**2)
        integral = normalization_integral(profile, n)
        consistency = abs(integral - integral_exact) / integral_exact
        lam = a / (float(consts.energy_const) * integral)
    else:
        v_target = args.at_v
        if v_target is None or v_target <= 0.0:
            raise ValueError("--at-v must be a positive v on the orbit")
        config = _integrator_config(args)
        traj = integrate_trajectory(spec, config)
        t_star = traj.time_at_v(v_target)
        grid = _reconstruction_grid(args.grid, t_star, integrable=(k == n))
        profile = reconstruct_profile(spec, traj, t_star, grid=grid)
        a = profile.meta["a"]
        lam = profile.meta["lam"]
        mode = {"mode": "reconstructed", "v": v_target, "t_star": t_star}
        base = f"profile_n{n}_k{k}_v{v_target:g}"
        integral = normalization_integral(profile, n)
        # multiplier consistency: lam * I must reproduce k^k A v(0) = a
        consistency = abs(lam * integral * float(consts.energy_const) / a - 1.0)

    rhs = a * np.exp(-profile.u) / (omega / 2.0 * integral)
    h_res = hessian_residual(spec, profile, rhs)
    report = identity_radial(
        spec, profile, NonlinearitySpec.exponential_nonlocal(a), tol=tol
    )

    print(f"profile for n = {n}, k = {k} ({mode['mode']}): a = {a:.12g}, lam = {lam:.12g}")
    print(f"normalization integral = {integral:.12g}")
    ok = _print_check("normalization consistency", consistency, tol)
    ok = _print_check("equation residual", h_res, tol_hessian) and ok
    ok = _print_check("dilation identity residual", report.residual, tol) and ok
    holder_gap = report.holder_lhs / report.holder_rhs - 1.0
    print(f"  boundary flux / lower bound - 1 = {holder_gap:+.3e}")

    csv_path = profile_to_csv(outdir / f"{base}.csv", profile)
    doc = {
        **mode,
        "n": n,
        "k": k,
        "grid_points": int(profile.grid.size),
        "a": a,
        "lam": lam,
        "normalization_integral": integral,
        "normalization_consistency": consistency,
        "equation_residual": h_res,
        "identity_boundary_term": report.boundary_term,
        "identity_volume_term": report.volume_term,
        "identity_residual": report.residual,
        "flux_lower_bound": report.holder_rhs,
        "holder_gap": holder_gap,
        "verdict": report.verdict,
        "checks_passed": ok,
    }
    json_path = write_json(outdir / f"{base}.report.json", doc)
    tolerances = {"identity": tol, "consistency": tol, "hessian": tol_hessian}
    params = {"n": n, "k": k, **mode, "grid": args.grid}
    write_manifest(outdir, "profile", params, tolerances, [csv_path, json_path])
    print(f"wrote {csv_path}")
    print(f"wrote {json_path}")
    return EXIT_OK if ok else EXIT_CHECK_FAILED


# ---------------------------------------------------------------------------
# shoot
# ---------------------------------------------------------------------------


def cmd_shoot(args: argparse.Namespace) -> int:
    spec = _spec_from(args)
    n, k = spec.n, spec.k
    outdir = output_dir(args.out)
    gamma = critical_exponent(spec)
    gamma_text = "infinity" if gamma == math.inf else f"{float(gamma):.12g}"

    if args.sweep:
        try:
            p_values = sorted(float(tok) for tok in args.sweep.split(","))
        except ValueError:
            raise ValueError(f"--sweep expects comma-separated numbers, got {args.sweep!r}")
        if not p_values or any(p <= 0 for p in p_values):
            raise ValueError("--sweep needs positive exponents")
        rows = []
        for p in p_values:
            result = shoot_power(spec, p, m=args.m, s_cap=args.s_cap)
            z = result.first_zero if result.first_zero is not None else math.nan
            rows.append((p, z))
            z_text = f"{z:.12g}" if not math.isnan(z) else f"none below s_cap = {args.s_cap:g}"
            print(f"p = {p:<10g} first zero: {z_text}")
        print(f"critical exponent gamma = {gamma_text}")
        base = f"shoot_sweep_n{n}_k{k}"
        csv_path = write_csv(
            outdir / f"{base}.csv",
            ("p", "first_zero"),
            [[r[0] for r in rows], [r[1] for r in rows]],
        )
        params = {"n": n, "k": k, "m": args.m, "s_cap": args.s_cap, "sweep": args.sweep}
        write_manifest(outdir, "shoot", params, {}, [csv_path])
        print(f"wrote {csv_path}")
        return EXIT_OK

    if args.p is None:
        raise ValueError("either --p or --sweep is required")
    if args.unit:
        profile = shooting_unit_profile(spec, args.p, s_cap=args.s_cap)
        print(
            f"unit-ball shooting solution for n = {n}, k = {k}, p = {args.p:g} "
            f"(gamma = {gamma_text}): center value -u(0) = {-profile.u[0]:.12g}"
        )
        base = f"shoot_unit_n{n}_k{k}_p{args.p:g}"
        csv_path = profile_to_csv(outdir / f"{base}.csv", profile)
        doc = {
            "n": n,
            "k": k,
            "p": args.p,
            "s_cap": args.s_cap,
            "gamma": "infinity" if gamma == math.inf else float(gamma),
            "center_value": -profile.u[0],
            "unit": True,
        }
        json_path = write_json(outdir / f"{base}.json", doc)
        params = {"n": n, "k": k, "p": args.p, "s_cap": args.s_cap, "unit": True}
        write_manifest(outdir, "shoot", params, {}, [csv_path, json_path])
        print(f"wrote {csv_path}")
        print(f"wrote {json_path}")
        return EXIT_OK

    result = shoot_power(spec, args.p, m=args.m, s_cap=args.s_cap)
    print(
        f"shot for n = {n}, k = {k}, p = {args.p:g}, m = {args.m:g} "
        f"(gamma = {gamma_text}): {result.status.value}"
    )
    if result.first_zero is not None:
        print(f"first zero at s = {result.first_zero:.12g}")
    else:
        print(f"no zero below s_cap = {args.s_cap:g}")

    base = f"shoot_n{n}_k{k}_p{args.p:g}"
    csv_path = profile_to_csv(outdir / f"{base}.csv", result.profile)
    doc = {
        "n": n,
        "k": k,
        "p": args.p,
        "m": args.m,
        "s_cap": args.s_cap,
        "gamma": "infinity" if gamma == math.inf else float(gamma),
        "status": result.status,
        "first_zero": result.first_zero,
    }
    json_path = write_json(outdir / f"{base}.json", doc)
    params = {"n": n, "k": k, "p": args.p, "m": args.m, "s_cap": args.s_cap}
    write_manifest(outdir, "shoot", params, {}, [csv_path, json_path])
    print(f"wrote {csv_path}")
    print(f"wrote {json_path}")
    return EXIT_OK


# ---------------------------------------------------------------------------
# audit
# ---------------------------------------------------------------------------


def cmd_audit(args: argparse.Namespace) -> int:
    spec = _spec_from(args)
    outdir = output_dir(args.out)
    tol = args.tol if args.tol is not None else DEFAULT_TOL
    profile = profile_from_csv(args.profile)

    if args.kind == "power":
        if args.p is None:
            raise ValueError("--kind power requires --p")
        nl = NonlinearitySpec.power(args.p)
        param_name, param_value = "p", args.p
    else:
        if args.a is None:
            raise ValueError("--kind exponential-nonlocal requires --a")
        nl = NonlinearitySpec.exponential_nonlocal(args.a)
        param_name, param_value = "a", args.a

    report = identity_radial(spec, profile, nl, tol=tol)
    print(
        f"audit of {args.profile} (n = {spec.n}, k = {spec.k}, kind = {args.kind}, "
        f"{param_name} = {param_value:g})"
    )
    print(f"boundary term = {report.boundary_term:.12g}")
    print(f"volume term   = {report.volume_term:.12g}")
    ok = _print_check("identity residual", report.residual, tol)

    doc: dict[str, Any] = {
        "profile": str(args.profile),
        "n": spec.n,
        "k": spec.k,
        "kind": args.kind,
        param_name: param_value,
        "boundary_term": report.boundary_term,
        "volume_term": report.volume_term,
        "residual": report.residual,
        "verdict": report.verdict,
    }
    if nl.kind.value == "exponential-nonlocal":
        bound = flux_lower_bound(spec, args.a)
        holder_ok = report.boundary_term >= bound * (1.0 - 1e-8)
        print(
            f"  check boundary flux >= lower bound: {report.boundary_term:.12g} >= "
            f"{bound:.12g}  [{'pass' if holder_ok else 'FAIL'}]"
        )
        verdict = nonexistence_exponential(spec, args.a)
        if verdict.triggered:
            print(f"  parameter a >= alpha1 = {verdict.alpha1:.12g}: nonexistence range")
        doc["flux_lower_bound"] = bound
        doc["holder_consistent"] = holder_ok
        doc["nonexistence_triggered"] = verdict.triggered
        doc["nonexistence_improved"] = verdict.improved_triggered
        ok = ok and holder_ok

    doc["checks_passed"] = ok
    json_path = write_json(outdir / "audit.report.json", doc)
    params = {
        "profile": str(args.profile),
        "n": spec.n,
        "k": spec.k,
        "kind": args.kind,
        param_name: param_value,
    }
    write_manifest(outdir, "audit", params, {"identity": tol}, [json_path])
    print(f"wrote {json_path}")
    return EXIT_OK if ok else EXIT_CHECK_FAILED


# ---------------------------------------------------------------------------
# parser
# ---------------------------------------------------------------------------


def _add_spec_args(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--n", type=int, required=True, help="complex dimension n >= 1")
    parser.add_argument("--k", type=int, required=True, help="Hessian order, 1 <= k <= n")


def _add_out_arg(parser: argparse.ArgumentParser) -> None:
    parser.add_argument(
        "--out",
        default=None,
        help=f"output directory (default: ${OUTPUT_DIR_ENV} or current directory)",
    )


def _add_integrator_args(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--seed-delta", type=float, default=None, help="origin seed size")
    parser.add_argument("--t-max", type=float, default=None, help="integration time cap")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="khessian",
        description=(
            "Radial complex k-Hessian problems on the unit ball: critical "
            "exponents and thresholds, phase-plane orbits, solution profiles, "
            "shooting, and dilation-identity audits."
        ),
        epilog=f"Output directory: --out flag, else ${OUTPUT_DIR_ENV}, else '.'",
    )
    parser.add_argument("--version", action="version", version=f"khessian {VERSION}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("exponents", help="critical exponents, thresholds, classification")
    _add_spec_args(p)
    p.add_argument("--p", type=float, default=None, help="power to test against gamma")
    p.add_argument("--d", type=int, default=None, help="real dimension for embedding constants")
    _add_out_arg(p)
    p.set_defaults(func=cmd_exponents)

    p = sub.add_parser("phase", help="integrate the regular orbit; write CSV + SVG")
    _add_spec_args(p)
    _add_integrator_args(p)
    _add_out_arg(p)
    p.set_defaults(func=cmd_phase)

    p = sub.add_parser("bifurcation", help="solution counts over a parameter grid")
    _add_spec_args(p)
    p.add_argument("--a-min", type=float, default=None, help="smallest parameter value")
    p.add_argument("--a-max", type=float, default=None, help="largest parameter value (default 1.2 alpha1)")
    p.add_argument("--a-count", type=int, default=40, help="grid size (default 40)")
    _add_integrator_args(p)
    _add_out_arg(p)
    p.set_defaults(func=cmd_bifurcation)

    p = sub.add_parser("profile", help="sample or reconstruct a radial profile; self-audit")
    _add_spec_args(p)
    source = p.add_mutually_exclusive_group(required=True)
    source.add_argument("--at-v", type=float, default=None, help="reconstruct at the first orbit point with this v")
    source.add_argument("--explicit", type=float, default=None, metavar="EPS", help="sample the explicit integrable family (k = n)")
    p.add_argument("--grid", type=int, default=DEFAULT_GRID_POINTS, help="grid points (default 2000)")
    p.add_argument("--tol", type=float, default=None, help=f"identity/consistency gate (default {DEFAULT_TOL:g})")
    p.add_argument("--tol-hessian", type=float, default=DEFAULT_HESSIAN_TOL, help=f"equation-residual gate (default {DEFAULT_HESSIAN_TOL:g})")
    _add_integrator_args(p)
    _add_out_arg(p)
    p.set_defaults(func=cmd_profile)

    p = sub.add_parser("shoot", help="radial shooting for the power nonlinearity")
    _add_spec_args(p)
    p.add_argument("--p", type=float, default=None, help="nonlinearity power")
    p.add_argument("--m", type=float, default=1.0, help="center value -u(0) (default 1)")
    p.add_argument("--s-cap", type=float, default=1e6, help="radial cutoff (default 1e6)")
    p.add_argument("--sweep", default=None, help="comma-separated powers: emit a (p, first_zero) table")
    p.add_argument("--unit", action="store_true", help="rescale the shot to a unit-ball solution (subcritical p only)")
    _add_out_arg(p)
    p.set_defaults(func=cmd_shoot)

    p = sub.add_parser("audit", help="dilation-identity audit of a profile CSV")
    _add_spec_args(p)
    p.add_argument("--profile", required=True, help="profile CSV (header s,u,u_s)")
    p.add_argument("--kind", choices=("power", "exponential-nonlocal"), required=True)
    p.add_argument("--p", type=float, default=None, help="power (for --kind power)")
    p.add_argument("--a", type=float, default=None, help="parameter (for --kind exponential-nonlocal)")
    p.add_argument("--tol", type=float, default=None, help=f"identity gate (default {DEFAULT_TOL:g})")
    _add_out_arg(p)
    p.set_defaults(func=cmd_audit)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except CsvFormatError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (ValueError, ArithmeticError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except IntegrationFault as exc:
        print(f"integration fault: {exc}", file=sys.stderr)
        return EXIT_FAULT


if __name__ == "__main__":
    sys.exit(main())
