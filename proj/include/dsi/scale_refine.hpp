#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "dsi/series.hpp"
#include "dsi/stats.hpp"

namespace dsi {

/// Equally spaced candidate scales around an initial estimate.
struct CandidateGrid {
  std::vector<double> points;
};

/// m equally spaced points on [lambda0 - half_width, lambda0 + half_width]
/// (endpoints included). Requires m >= 50 and a lower bound > 1.
CandidateGrid candidate_grid(double lambda0, double half_width, int m);

struct TrailingCoverage {
  int j;           // last j+1 scale intervals reach the coverage target
  bool attained;   // false when even all intervals fall short
  double fraction; // realized fraction of in-interval samples covered
};

/// Smallest j such that the last j+1 complete scale intervals hold at least
/// `coverage` of the samples lying inside [1, lambda^M). Measuring against
/// in-interval samples (rather than all of them) is what makes a grid that
/// overshoots the last complete interval behave sensibly.
TrailingCoverage trailing_interval_count(const TimeSeries& x, double lambda,
                                         double coverage = 0.95);

/// R(a) = sum of S_k^2(a) over the last j+1 scale intervals, k = M-j..M.
double scale_objective_R(const TimeSeries& x, double a, int j,
                         VarianceMode mode = VarianceMode::mean_square);

struct ObjectiveTracePoint {
  double a;
  double r;
  double v; // NaN outside the scanned split range
};

struct RefineResult {
  double lambda_star;
  bool degenerate_flat; // V was flat to 1e-12; lambda_star is the midpoint candidate
  std::vector<ObjectiveTracePoint> trace;
};

/// Scans the candidate grid: computes R(a_i) for every candidate (in parallel),
/// then the preceding/succeeding variance split V(a_k) = L*(a_k) + U*(a_k) for
/// split sizes k = k_star..m-k_star, and returns the candidate closing the
/// best split's left segment.
RefineResult refine_scale(const TimeSeries& x, const CandidateGrid& grid, int j,
                          int k_star = 20, VarianceMode mode = VarianceMode::mean_square,
                          int threads = 0);

/// The split objective on a precomputed R sequence; v[k - k_star] corresponds
/// to split size k (left block of k values, sample variances on both sides).
std::vector<double> refine_split_objective(std::span<const double> r, int k_star);

/// mu_k = S_k^2(lambda) / S_{k-1}^2(lambda) for k = M-j..M.
std::vector<double> mu_ratios(const TimeSeries& x, double lambda_star, int j,
                              VarianceMode mode = VarianceMode::mean_square);

/// Geometric-weight average: sum_i lambda^i mu_i / sum_i lambda^i, giving the
/// later (larger-sample) intervals more weight.
double weighted_mu(std::span<const double> mu, double lambda_star);

/// H - H' = log(mu_bar_star) / (2 log(lambda_star)).
double estimate_H_minus_Hprime(double mu_bar_star, double lambda_star);

/// Divides the sample at time t in scale interval k by lambda^{(k-1)(H-H')},
/// the exact inverse of the sfBm piecewise factor.
TimeSeries rescale_to_fbm(const TimeSeries& x, double lambda_star, double h_minus_hprime);

} // namespace dsi
