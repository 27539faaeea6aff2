"""Exact geometry of multivariate Bernoulli classes with fixed margins:
ray densities, attainable association bounds, fitting and projection solvers,
and deterministic sampling, all over rational arithmetic."""

from .bounds import (
    BivariateSummary,
    MarginBounds,
    PairBounds,
    bivariate_extreme_densities,
    bivariate_mixture,
    bivariate_summary,
    bivariate_weight_of,
    margin_bounds_given_mu2,
    pair_bounds,
)
from .cone import (
    DIMENSION_CAP,
    ConstraintMatrix,
    DimensionCapError,
    EmptyConeError,
    MomentMap,
    RayMatrix,
    build_h,
    build_h2,
    extreme_rays,
    margin_rays,
    moment_map,
    pair_moment_rays,
)
from .frechet import (
    Cdf,
    CorrelationSpec,
    Density,
    FrechetClass,
    PairMoments,
    ThetaVector,
    cdf_from_density,
    cdf_from_theta,
    density_from_cdf,
    exact_sqrt,
    margins_of,
    moment_vector,
    mu2_from_rho,
    pair_list,
    pair_moments_of,
    rho_from_mu2,
    select_moments,
    theta_from_density,
)
from .sampling import GENERATOR_ID, SampleBatch, empirical_moments, sample
from .simplex import LpResult, solve_lp, verify_farkas
from .solvers import (
    FitResult,
    ProjectionResult,
    fit_density_direct,
    fit_lambda,
    higher_moment_objective,
    minimize_higher_moments,
    nearest_feasible_correlation,
    solve_margins_given_mu2,
)
from .tensor import (
    Matrix,
    enumerate_support,
    format_rational,
    kron,
    kron_apply,
    kron_power,
    parse_rational,
    support_index,
)

__version__ = "0.1.0"

__all__ = [
    "BivariateSummary",
    "Cdf",
    "ConstraintMatrix",
    "CorrelationSpec",
    "DIMENSION_CAP",
    "Density",
    "DimensionCapError",
    "EmptyConeError",
    "FitResult",
    "FrechetClass",
    "GENERATOR_ID",
    "LpResult",
    "MarginBounds",
    "Matrix",
    "MomentMap",
    "PairBounds",
    "PairMoments",
    "ProjectionResult",
    "RayMatrix",
    "SampleBatch",
    "ThetaVector",
    "bivariate_extreme_densities",
    "bivariate_mixture",
    "bivariate_summary",
    "bivariate_weight_of",
    "build_h",
    "build_h2",
    "cdf_from_density",
    "cdf_from_theta",
    "density_from_cdf",
    "empirical_moments",
    "enumerate_support",
    "exact_sqrt",
    "extreme_rays",
    "fit_density_direct",
    "fit_lambda",
    "higher_moment_objective",
    "format_rational",
    "kron",
    "kron_apply",
    "kron_power",
    "margin_bounds_given_mu2",
    "margin_rays",
    "margins_of",
    "minimize_higher_moments",
    "moment_map",
    "moment_vector",
    "mu2_from_rho",
    "nearest_feasible_correlation",
    "pair_bounds",
    "pair_list",
    "pair_moment_rays",
    "pair_moments_of",
    "parse_rational",
    "rho_from_mu2",
    "sample",
    "select_moments",
    "solve_lp",
    "solve_margins_given_mu2",
    "support_index",
    "theta_from_density",
    "verify_farkas",
]
