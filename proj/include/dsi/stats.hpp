#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "dsi/numeric.hpp"
#include "dsi/series.hpp"

namespace dsi {

/// First- or second-order increments of a sampled path; source_times are the
/// left endpoints of each increment.
struct IncrementSeries {
  int order; // 1 or 2
  std::vector<double> values;
  std::vector<double> source_times;
};

/// Order 1: Y_i = x_{i+1} - x_i. Order 2: Y_i = x_{i+2} - 2 x_{i+1} + x_i.
IncrementSeries increments(const TimeSeries& x, int order);

/// Same on a bare value sequence.
std::vector<double> difference(std::span<const double> x, int order);

/// Moving sample variance of the increments over windows of b_star values:
/// V_i = 1/(b*-1) * sum_{j<b*} (y_{i+j} - window mean)^2 for i = 0..n-b*.
std::vector<double> moving_sample_variance(std::span<const double> y, int b_star);
std::vector<double> moving_sample_variance(const IncrementSeries& y, int b_star);

/// W_i = (sum_{j=i..i+d*} v_j) / d* — a window of d*+1 terms divided by d*,
/// the literal definition; the off-by-one factor cancels in every downstream
/// ratio and split location.
std::vector<double> moving_average(std::span<const double> v, int d_star);

/// Running prefix sums U_i = sum_{j<=i} w_j (compensated).
std::vector<double> cumulative_sum(std::span<const double> w);

enum class VarianceMode {
  mean_square,       // S_k^2 = mean of Y^2 over the interval (zero-mean increments)
  second_difference, // S_k^2 = mean of (Y_i - Y_{i-1})^2 over the interval
};

/// Per-scale-interval variance summary at a candidate scale.
struct ScaleIntervalVariances {
  double lambda;                   // candidate scale
  int interval_count;              // M = max{l : lambda^l <= last time}
  std::vector<double> variances;   // S_k^2, k = 1..M (index k-1)
  std::vector<std::size_t> counts; // increments retained per interval
  std::size_t dropped_boundary;    // increments straddling an interval boundary
  std::size_t outside;             // increments starting at or beyond lambda^M
};

/// Partitions the order-1 increments of x by the scale interval containing the
/// increment's left endpoint, dropping increments that straddle a boundary and
/// increments beyond the last complete interval.
ScaleIntervalVariances scale_interval_variances(const TimeSeries& x, double candidate_lambda,
                                                VarianceMode mode = VarianceMode::mean_square);

} // namespace dsi
