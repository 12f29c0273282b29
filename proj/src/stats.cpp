#include "dsi/stats.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace dsi {

std::vector<double> difference(std::span<const double> x, int order) {
  if (order != 1 && order != 2) throw std::invalid_argument("difference: order must be 1 or 2");
  const std::size_t n = x.size();
  if (n < static_cast<std::size_t>(order) + 1)
    throw std::invalid_argument("difference: series too short for requested order");
  std::vector<double> y;
  if (order == 1) {
    y.resize(n - 1);
    for (std::size_t i = 0; i + 1 < n; ++i) y[i] = x[i + 1] - x[i];
  } else {
    y.resize(n - 2);
    for (std::size_t i = 0; i + 2 < n; ++i) y[i] = x[i + 2] - 2.0 * x[i + 1] + x[i];
  }
  return y;
}

IncrementSeries increments(const TimeSeries& x, int order) {
  x.validate();
  IncrementSeries out;
  out.order = order;
  out.values = difference(x.values, order);
  out.source_times.assign(x.times.begin(), x.times.begin() + static_cast<long>(out.values.size()));
  return out;
}

std::vector<double> moving_sample_variance(std::span<const double> y, int b_star) {
  if (b_star < 2) throw std::invalid_argument("moving_sample_variance: window must be >= 2");
  const std::size_t b = static_cast<std::size_t>(b_star);
  if (y.size() < b)
    throw std::invalid_argument("moving_sample_variance: window larger than data");
  std::vector<double> v(y.size() - b + 1);
  for (std::size_t i = 0; i < v.size(); ++i) {
    v[i] = sample_variance(y.subspan(i, b));
  }
  return v;
}

std::vector<double> moving_sample_variance(const IncrementSeries& y, int b_star) {
  return moving_sample_variance(std::span<const double>(y.values), b_star);
}

std::vector<double> moving_average(std::span<const double> v, int d_star) {
  if (d_star < 1) throw std::invalid_argument("moving_average: window must be >= 1");
  const std::size_t d = static_cast<std::size_t>(d_star);
  if (v.size() <= d) throw std::invalid_argument("moving_average: sequence shorter than window");
  std::vector<double> w(v.size() - d);
  for (std::size_t i = 0; i < w.size(); ++i) {
    CompensatedSum s;
    for (std::size_t j = i; j <= i + d; ++j) s.add(v[j]);
    w[i] = s.value() / static_cast<double>(d);
  }
  return w;
}

std::vector<double> cumulative_sum(std::span<const double> w) {
  if (w.empty()) throw std::invalid_argument("cumulative_sum: empty sequence");
  std::vector<double> u(w.size());
  CompensatedSum s;
  for (std::size_t i = 0; i < w.size(); ++i) {
    s.add(w[i]);
    u[i] = s.value();
  }
  return u;
}

ScaleIntervalVariances scale_interval_variances(const TimeSeries& x, double candidate_lambda,
                                                VarianceMode mode) {
  x.validate();
  if (!(candidate_lambda > 1.0))
    throw std::invalid_argument("scale_interval_variances: candidate scale must be > 1");
  if (x.size() < 2)
    throw std::invalid_argument("scale_interval_variances: need at least 2 samples");
  if (!(x.times.front() >= 1.0))
    throw std::invalid_argument("scale_interval_variances: times must start at or after 1");

  const double c = x.times.back();
  const std::vector<double> bounds = scale_boundaries(candidate_lambda, c);
  // bounds = [1, a, ..., a^K] with a^K > c; complete intervals are 1..M.
  const int M = static_cast<int>(bounds.size()) - 2;
  if (M < 2)
    throw std::invalid_argument(
        "scale_interval_variances: fewer than 2 complete scale intervals in [1, C]");

  ScaleIntervalVariances out;
  out.lambda = candidate_lambda;
  out.interval_count = M;
  out.variances.assign(static_cast<std::size_t>(M), 0.0);
  out.counts.assign(static_cast<std::size_t>(M), 0);
  out.dropped_boundary = 0;
  out.outside = 0;

  std::vector<CompensatedSum> acc(static_cast<std::size_t>(M));
  std::vector<std::size_t> terms(static_cast<std::size_t>(M), 0);

  int k = 1; // current interval, [bounds[k-1], bounds[k])
  const std::size_t n_incr = x.size() - 1;
  for (std::size_t i = 0; i < n_incr; ++i) {
    const double left = x.times[i];
    const double right = x.times[i + 1];
    while (k <= M && left >= bounds[static_cast<std::size_t>(k)]) ++k;
    if (k > M) {
      ++out.outside;
      continue;
    }
    if (right >= bounds[static_cast<std::size_t>(k)]) {
      ++out.dropped_boundary;
      continue;
    }
    const double y = x.values[i + 1] - x.values[i];
    const std::size_t idx = static_cast<std::size_t>(k - 1);
    if (mode == VarianceMode::mean_square) {
      acc[idx].add(y * y);
      ++terms[idx];
    } else {
      // Literal second-difference form: pairs each retained increment with the
      // increment immediately before it in the original series (the very first
      // increment has no predecessor and contributes no term).
      if (i > 0) {
        const double prev = x.values[i] - x.values[i - 1];
        const double d = y - prev;
        acc[idx].add(d * d);
        ++terms[idx];
      }
    }
    ++out.counts[idx];
  }

  for (std::size_t j = 0; j < static_cast<std::size_t>(M); ++j) {
    out.variances[j] = terms[j] > 0 ? acc[j].value() / static_cast<double>(terms[j]) : 0.0;
  }
  return out;
}

} // namespace dsi
