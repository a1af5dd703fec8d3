"""Radial complex k-Hessian Dirichlet problems on the unit ball.

The package covers four computational layers:

- :mod:`khessian.exact` / :mod:`khessian.constants` — exact arithmetic for
  the critical exponent, normalization constants, and the closed-form
  thresholds that separate existence from nonexistence regimes;
- :mod:`khessian.phaseplane` — the autonomous two-dimensional system that
  radial solutions of the exponential problem reduce to, with orbit
  integration, crossing counts, and bifurcation sweeps;
- :mod:`khessian.profiles` — radial profiles on the unit ball: the explicit
  integrable family, reconstruction of profiles from orbit segments,
  equation residuals, and shooting for the power nonlinearity;
- :mod:`khessian.pohozaev` — dilation (Pohozaev-type) identities, the flux
  lower bound, and nonexistence verdicts.

:mod:`khessian.cli` exposes all of it as the ``khessian`` console command.
"""

from .constants import (
    EquilibriumKind,
    Linearization,
    NormalizationConstants,
    ProblemSpec,
    RealMTConstants,
    Thresholds,
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
from .exact import PiRational
from .phaseplane import (
    BifurcationDiagram,
    BifurcationEntry,
    CrossingCount,
    CrossingTail,
    IntegrationFault,
    IntegratorConfig,
    PhasePoint,
    Termination,
    Trajectory,
    bifurcation_sweep,
    count_crossings,
    in_invariant_region,
    integrate_trajectory,
    lyapunov,
    lyapunov_derivative,
    lyapunov_gradient,
    parameter_of_point,
    path_distance,
    region_boundary_h,
    region_boundary_h_slope_at_one,
    seed_near_origin,
    vector_field,
)
from .pohozaev import (
    NonexistenceVerdict,
    NonlinearityKind,
    NonlinearitySpec,
    PohozaevReport,
    Verdict,
    dilation_constant,
    flux_lower_bound,
    identity_radial,
    mu_max_verify,
    nonexistence_exponential,
    volume_sign_integrand,
)
from .profiles import (
    RadialProfile,
    ShootingResult,
    ShootingStatus,
    default_grid,
    explicit_ma,
    explicit_ma_phase,
    functional_value,
    hessian_energy,
    hessian_residual,
    normalization_integral,
    pointwise_bound_check,
    radial_hessian,
    real_halfdim,
    reconstruct_profile,
    shoot_power,
    shooting_unit_profile,
    weak_form_residual,
)

__all__ = [
    "BifurcationDiagram",
    "BifurcationEntry",
    "CrossingCount",
    "CrossingTail",
    "EquilibriumKind",
    "IntegrationFault",
    "IntegratorConfig",
    "Linearization",
    "NonexistenceVerdict",
    "NonlinearityKind",
    "NonlinearitySpec",
    "NormalizationConstants",
    "PhasePoint",
    "PiRational",
    "PohozaevReport",
    "ProblemSpec",
    "RadialProfile",
    "RealMTConstants",
    "ShootingResult",
    "ShootingStatus",
    "Termination",
    "Thresholds",
    "Trajectory",
    "Verdict",
    "alpha_tilde_real",
    "bifurcation_sweep",
    "count_crossings",
    "critical_exponent",
    "default_grid",
    "dilation_constant",
    "equilibrium_linearization",
    "explicit_ma",
    "explicit_ma_phase",
    "flux_lower_bound",
    "functional_value",
    "hessian_energy",
    "hessian_residual",
    "identity_radial",
    "in_invariant_region",
    "integrate_trajectory",
    "levi_ball",
    "levi_ball_exact",
    "lyapunov",
    "lyapunov_derivative",
    "lyapunov_gradient",
    "moser_trudinger",
    "mu_max_verify",
    "nonexistence_exponential",
    "normalization_constants",
    "normalization_integral",
    "parameter_of_point",
    "path_distance",
    "pohozaev_power_coefficient",
    "pointwise_bound_check",
    "radial_hessian",
    "real_halfdim",
    "reconstruct_profile",
    "region_boundary_h",
    "region_boundary_h_slope_at_one",
    "seed_near_origin",
    "shoot_power",
    "shooting_unit_profile",
    "thresholds",
    "vector_field",
    "volume_sign_integrand",
    "weak_form_residual",
]

__version__ = "0.1.0"
