"""Simulation and estimation toolkit for semi-selfsimilar processes.

Thin Python surface over the C++ core: exact fBm/sfBm simulation, the
two-stage scale estimator, and the stride-subsampling Hurst estimators.
"""

from ._dsi import (  # noqa: F401
    FbmPath,
    HurstEstimate,
    ScaleIntervalVariances,
    TimeSeries,
    candidate_grid,
    circulant_eigenvalues,
    cumulative_sum,
    cusum_single_changepoint,
    difference,
    estimate_H_minus_Hprime,
    estimate_hurst,
    estimate_scale,
    fgn_autocovariance,
    hurst_auto,
    hurst_quadratic_variation,
    hurst_ratio,
    increments,
    initial_scale,
    lamperti_stationarize,
    last_three_changepoints_cusum,
    last_three_minima_variance_split,
    moving_average,
    moving_sample_variance,
    mu_ratios,
    refine_scale,
    rescale_to_fbm,
    run_bench,
    sample_variance,
    scale_interval_variances,
    scale_objective_R,
    simulate_fbm,
    simulate_path_on_grid,
    simulate_sfbm,
    stride_subsample,
    trailing_interval_count,
    variance_split_scan,
    weighted_mu,
)

__all__ = [name for name in dir() if not name.startswith("_")]
__version__ = "0.1.0"
