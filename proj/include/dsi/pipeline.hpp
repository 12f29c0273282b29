#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "dsi/changepoint.hpp"
#include "dsi/hurst.hpp"
#include "dsi/scale_refine.hpp"
#include "dsi/series.hpp"
#include "dsi/stats.hpp"

namespace dsi {

/// Every tunable of the estimation pipeline. Defaults follow the reference
/// settings used throughout: b* = 10, d* = 20, l* = 30, j* = 50, k* = 20.
struct EstimatorKnobs {
  int b_star = 10;            // moving sample variance window
  int d_star = 20;            // moving average window
  std::size_t l_star = 30;    // variance-split scan margin
  std::size_t j_star = 50;    // back-off after each variance-split minimum
  int k_star = 20;            // refine-scan margin over the candidate grid
  int k_max = 5;              // largest stride for the Hurst ratio methods
  double coverage = 0.95;     // trailing-interval coverage target
  double grid_half_width = 0; // 0 = auto (2.5% of lambda0)
  int grid_points = 1000;     // candidates around lambda0
  VarianceMode mode = VarianceMode::mean_square;
  std::string initializer = "variance_split"; // or "cusum"
  int threads = 0;            // 0 = hardware concurrency
};

struct InitializerOutcome {
  bool ok = false;
  std::size_t tau1 = 0, tau2 = 0, tau3 = 0;
  double lambda0 = 0.0;
  std::string error; // non-empty when ok == false
};

/// Full scale-estimation report: both initializers, refinement, ratio
/// extraction, and the traces needed to plot each stage.
struct ScaleReport {
  EstimatorKnobs knobs;
  std::size_t sample_count = 0;

  InitializerOutcome cusum;
  InitializerOutcome variance_split;
  double lambda0 = 0.0; // the chosen initializer's estimate

  int j = 0;
  double coverage_fraction = 0.0;
  bool coverage_attained = true;

  double lambda_star = 0.0;
  bool degenerate_flat = false;

  std::vector<double> mu_k;
  double mu_bar_star = 0.0;
  double h_minus_hprime = 0.0;

  int interval_count = 0;
  std::vector<std::size_t> interval_counts;
  std::vector<double> interval_variances;

  // Stage traces.
  std::vector<double> w_trace;            // moving average of the MSV
  std::vector<double> u_trace;            // cumulative sums of W
  std::vector<double> split_trace;        // S(z), z starting at l_star
  std::vector<ObjectiveTracePoint> objective_trace; // (a, R(a), V(a))
};

/// Runs the whole scale pipeline on a sampled path. Stage failures are
/// rethrown with the stage name prefixed.
ScaleReport estimate_scale(const TimeSeries& x, const EstimatorKnobs& knobs = {});

struct HurstPrior {
  double lambda_star;
  double h_minus_hprime;
};

struct HurstReport {
  EstimatorKnobs knobs;
  std::string method; // "auto", "ratio1", "ratio2", "qv"
  std::optional<HurstPrior> prior;
  HurstEstimate estimate;
  double order1_screen = 0.0; // meaningful for method == "auto"
  bool used_order2 = false;
  bool sparse_subsample = false;
  double hurst_prime = 0.0;
  std::optional<double> hurst_total; // H' + (H - H') when a prior is given
};

/// Hurst estimation, optionally rescaling the input to its underlying fBm
/// first (prior from a scale-estimation run).
HurstReport estimate_hurst(const TimeSeries& x, const std::string& method,
                           const std::optional<HurstPrior>& prior,
                           const EstimatorKnobs& knobs = {});

} // namespace dsi
