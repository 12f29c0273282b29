#include "dsi/scale_refine.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "dsi/errors.hpp"
#include "dsi/numeric.hpp"
#include "dsi/parallel.hpp"

namespace dsi {

CandidateGrid candidate_grid(double lambda0, double half_width, int m) {
  if (m < 50) throw std::invalid_argument("candidate_grid: need at least 50 candidates");
  if (!(half_width > 0.0)) throw std::invalid_argument("candidate_grid: half_width must be > 0");
  const double lo = lambda0 - half_width;
  const double hi = lambda0 + half_width;
  if (!(lo > 1.0))
    throw std::invalid_argument("candidate_grid: lower bound must stay above 1");
  CandidateGrid g;
  g.points.resize(static_cast<std::size_t>(m));
  const double step = (hi - lo) / static_cast<double>(m - 1);
  for (int i = 0; i < m; ++i) g.points[static_cast<std::size_t>(i)] = lo + i * step;
  return g;
}

TrailingCoverage trailing_interval_count(const TimeSeries& x, double lambda, double coverage) {
  x.validate();
  if (!(coverage > 0.0 && coverage < 1.0))
    throw std::invalid_argument("trailing_interval_count: coverage must be in (0,1)");
  if (x.size() < 2) throw std::invalid_argument("trailing_interval_count: series too short");

  const std::vector<double> bounds = scale_boundaries(lambda, x.times.back());
  const int M = static_cast<int>(bounds.size()) - 2;
  if (M < 1)
    throw std::invalid_argument("trailing_interval_count: no complete scale interval in range");

  const auto count_from = [&](double t0) {
    const auto it = std::lower_bound(x.times.begin(), x.times.end(), t0);
    const auto end = std::lower_bound(x.times.begin(), x.times.end(),
                                      bounds[static_cast<std::size_t>(M)]);
    return static_cast<double>(end - it);
  };
  const double total_in = count_from(bounds.front());
  if (total_in <= 0.0)
    throw std::invalid_argument("trailing_interval_count: no samples inside scale intervals");

  for (int j = 0; j < M; ++j) {
    const double start = bounds[static_cast<std::size_t>(M - 1 - j)];
    const double frac = count_from(start) / total_in;
    if (frac >= coverage) return TrailingCoverage{j, true, frac};
  }
  return TrailingCoverage{M - 1, false, 1.0};
}

double scale_objective_R(const TimeSeries& x, double a, int j, VarianceMode mode) {
  if (j < 0) throw std::invalid_argument("scale_objective_R: j must be >= 0");
  const ScaleIntervalVariances siv = scale_interval_variances(x, a, mode);
  const int M = siv.interval_count;
  if (j >= M)
    throw std::invalid_argument("scale_objective_R: j leaves no interval at candidate " +
                                std::to_string(a));
  CompensatedSum sum;
  for (int k = M - j; k <= M; ++k) {
    const std::size_t idx = static_cast<std::size_t>(k - 1);
    if (siv.counts[idx] < 2)
      throw degeneracy_error("scale_objective_R: trailing scale interval " + std::to_string(k) +
                             " holds fewer than 2 increments at candidate " + std::to_string(a));
    sum.add(siv.variances[idx]);
  }
  return sum.value();
}

std::vector<double> refine_split_objective(std::span<const double> r, int k_star) {
  const int m = static_cast<int>(r.size());
  if (k_star < 2) throw std::invalid_argument("refine_split_objective: k_star must be >= 2");
  if (m <= 2 * k_star)
    throw std::invalid_argument("refine_split_objective: need more than 2*k_star candidates");
  std::vector<double> v;
  v.reserve(static_cast<std::size_t>(m - 2 * k_star + 1));
  for (int k = k_star; k <= m - k_star; ++k) {
    const auto left = r.first(static_cast<std::size_t>(k));
    const auto right = r.subspan(static_cast<std::size_t>(k));
    v.push_back(sample_variance(left) + sample_variance(right));
  }
  return v;
}

RefineResult refine_scale(const TimeSeries& x, const CandidateGrid& grid, int j, int k_star,
                          VarianceMode mode, int threads) {
  const std::size_t m = grid.points.size();
  if (m < 50) throw std::invalid_argument("refine_scale: need at least 50 candidates");

  std::vector<double> r(m);
  parallel_for(m, threads, [&](std::size_t i) {
    r[i] = scale_objective_R(x, grid.points[i], j, mode);
  });

  const std::vector<double> v = refine_split_objective(r, k_star);

  RefineResult out;
  out.trace.resize(m);
  const double nan = std::numeric_limits<double>::quiet_NaN();
  for (std::size_t i = 0; i < m; ++i) out.trace[i] = ObjectiveTracePoint{grid.points[i], r[i], nan};
  for (std::size_t i = 0; i < v.size(); ++i)
    out.trace[i + static_cast<std::size_t>(k_star) - 1].v = v[i];

  double vmax = 0.0;
  for (double val : v) vmax = std::max(vmax, std::abs(val));
  std::size_t best = 0;
  bool flat = true;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (std::abs(v[i] - v[0]) > 1e-12 * std::max(vmax, 1e-300)) flat = false;
    if (v[i] < v[best]) best = i;
  }
  if (flat) {
    out.lambda_star = grid.points[m / 2];
    out.degenerate_flat = true;
    return out;
  }
  // split size k = best + k_star; the left segment ends at candidate k (1-based),
  // i.e. 0-based index k - 1.
  out.lambda_star = grid.points[best + static_cast<std::size_t>(k_star) - 1];
  out.degenerate_flat = false;
  return out;
}

std::vector<double> mu_ratios(const TimeSeries& x, double lambda_star, int j,
                              VarianceMode mode) {
  if (j < 0) throw std::invalid_argument("mu_ratios: j must be >= 0");
  const ScaleIntervalVariances siv = scale_interval_variances(x, lambda_star, mode);
  const int M = siv.interval_count;
  // mu_{M-j} needs S^2_{M-j-1}, so interval M-j-1 must exist.
  if (j > M - 2) throw std::invalid_argument("mu_ratios: j leaves no denominator interval");
  std::vector<double> mu;
  mu.reserve(static_cast<std::size_t>(j) + 1);
  for (int k = M - j; k <= M; ++k) {
    const double num = siv.variances[static_cast<std::size_t>(k - 1)];
    const double den = siv.variances[static_cast<std::size_t>(k - 2)];
    if (!(den > 0.0) || siv.counts[static_cast<std::size_t>(k - 2)] < 2)
      throw degeneracy_error("mu_ratios: scale interval " + std::to_string(k - 1) +
                             " has no usable variance (zero or undersampled denominator)");
    mu.push_back(num / den);
  }
  return mu;
}

double weighted_mu(std::span<const double> mu, double lambda_star) {
  if (mu.empty()) throw std::invalid_argument("weighted_mu: empty ratio sequence");
  CompensatedSum num, den;
  double weight = 1.0;
  for (double m : mu) {
    num.add(weight * m);
    den.add(weight);
    weight *= lambda_star;
  }
  return num.value() / den.value();
}

double estimate_H_minus_Hprime(double mu_bar_star, double lambda_star) {
  if (!(mu_bar_star > 0.0))
    throw std::invalid_argument("estimate_H_minus_Hprime: mu_bar_star must be > 0");
  if (!(lambda_star > 1.0))
    throw std::invalid_argument("estimate_H_minus_Hprime: lambda_star must be > 1");
  return std::log(mu_bar_star) / (2.0 * std::log(lambda_star));
}

TimeSeries rescale_to_fbm(const TimeSeries& x, double lambda_star, double h_minus_hprime) {
  x.validate();
  if (!(lambda_star > 1.0)) throw std::invalid_argument("rescale_to_fbm: lambda must be > 1");
  if (!std::isfinite(h_minus_hprime))
    throw std::invalid_argument("rescale_to_fbm: exponent must be finite");
  if (!x.times.empty() && !(x.times.front() >= 1.0))
    throw std::invalid_argument("rescale_to_fbm: times must start at or after 1");

  TimeSeries out;
  out.times = x.times;
  out.values.resize(x.values.size());
  int interval = 1;
  double upper = lambda_star;
  double factor = piecewise_scale_factor(lambda_star, 1, h_minus_hprime);
  for (std::size_t i = 0; i < x.size(); ++i) {
    while (x.times[i] >= upper) {
      upper *= lambda_star;
      ++interval;
      factor = piecewise_scale_factor(lambda_star, interval, h_minus_hprime);
    }
    out.values[i] = x.values[i] / factor;
  }
  return out;
}

} // namespace dsi
