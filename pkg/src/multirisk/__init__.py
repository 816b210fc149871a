"""Risk comparison of maximum-likelihood and Dirichlet-posterior estimators
for multinomial models: closed-form squared-error and absolute-error risks,
dominance-region geometry on the simplex, Monte Carlo volume estimation,
average-risk formulas, and a retailer stocking simulation."""

from .absolute import (
    DensityScaling,
    L1TableCell,
    avg_l1_table,
    bayes_abs_risk,
    expected_abs_deviation,
    l2_density_distance,
    mle_abs_risk,
    posterior_median_targets,
)
from .average import bayes_avg_risk, mle_avg_risk, proportional_decrease
from .montecarlo import (
    DEFAULT_SEED,
    STANDARD_SWEEP_RULES,
    MonteCarloEstimate,
    SweepCell,
    estimate_ball_fraction,
    estimate_mle_better_proportion,
    estimate_tail_fraction,
    proportion_sweep,
    resolve_sample_size,
    sample_uniform_simplex,
    sample_uniform_simplex_array,
)
from .risk import (
    ModelDims,
    ProbVector,
    RiskComparison,
    SymmetricPrior,
    as_prob_array,
    bayes_squared_risk,
    compare_at,
    dominance_threshold,
    mle_margin,
    mle_margin_constant,
    mle_margin_scaled,
    mle_margin_uniform,
    mle_squared_risk,
)
from .simplex import (
    MonteCarloNeeded,
    RegionSpec,
    ball_fraction_exact,
    ball_fraction_lower_bound,
    center_to_boundary_distance,
    center_to_sphere_distance,
    mle_fraction_upper_bound,
    simplex_surface_area,
    simplex_volume,
)
from .special import (
    BetaParams,
    beta_cdf,
    beta_median,
    binomial_weights,
    log_binomial_coefficients,
)
from .stocking import (
    NON_STOCKABLE_LABEL,
    CategoryDistribution,
    EstimatorStats,
    IngestionError,
    SimReport,
    StockPlan,
    allocate_stock,
    bundled_distribution_path,
    load_distribution,
    run_stocking_sim,
    stock_abs_error,
    zero_floor_adjust,
)

__version__ = "0.1.0"

__all__ = [
    "DEFAULT_SEED",
    "STANDARD_SWEEP_RULES",
    "NON_STOCKABLE_LABEL",
    "BetaParams",
    "CategoryDistribution",
    "DensityScaling",
    "EstimatorStats",
    "IngestionError",
    "L1TableCell",
    "ModelDims",
    "MonteCarloEstimate",
    "MonteCarloNeeded",
    "ProbVector",
    "RegionSpec",
    "RiskComparison",
    "SimReport",
    "StockPlan",
    "SweepCell",
    "SymmetricPrior",
    "allocate_stock",
    "as_prob_array",
    "avg_l1_table",
    "ball_fraction_exact",
    "ball_fraction_lower_bound",
    "bayes_abs_risk",
    "bayes_avg_risk",
    "bayes_squared_risk",
    "beta_cdf",
    "beta_median",
    "binomial_weights",
    "bundled_distribution_path",
    "center_to_boundary_distance",
    "center_to_sphere_distance",
    "compare_at",
    "dominance_threshold",
    "estimate_ball_fraction",
    "estimate_mle_better_proportion",
    "estimate_tail_fraction",
    "expected_abs_deviation",
    "l2_density_distance",
    "load_distribution",
    "log_binomial_coefficients",
    "mle_abs_risk",
    "mle_avg_risk",
    "mle_fraction_upper_bound",
    "mle_margin",
    "mle_margin_constant",
    "mle_margin_scaled",
    "mle_margin_uniform",
    "mle_squared_risk",
    "posterior_median_targets",
    "proportion_sweep",
    "proportional_decrease",
    "resolve_sample_size",
    "run_stocking_sim",
    "sample_uniform_simplex",
    "sample_uniform_simplex_array",
    "simplex_surface_area",
    "simplex_volume",
    "stock_abs_error",
    "zero_floor_adjust",
]
