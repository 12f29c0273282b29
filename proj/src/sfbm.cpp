#include "dsi/sfbm.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "dsi/fbm.hpp"
#include "dsi/numeric.hpp"
#include "dsi/rng.hpp"

namespace dsi {

// Uniform grids use the stationary-increment construction: B(t_0) is a
// standard normal level at t_0 = 1 and the rest is an exact fGn cumulative
// sum scaled by step^H. The level is drawn independently of the increments,
// so every increment statistic downstream is exact. Non-uniform (geometric)
// grids use the dense exact sampler.
TimeSeries simulate_path_on_grid(double hurst, const SamplingGrid& grid, std::uint64_t seed) {
  if (!(hurst > 0.0 && hurst < 1.0))
    throw std::invalid_argument("simulate_path_on_grid: hurst must be in (0,1)");
  std::vector<double> times = grid_times(grid);
  if (std::holds_alternative<UniformGrid>(grid)) {
    const std::size_t n = times.size();
    std::vector<double> v(n);
    GaussianStream anchor(derive_seed(seed, 0));
    v[0] = anchor.next();
    if (n > 1) {
      const double step = uniform_step(times);
      const std::vector<double> fgn = sample_fgn(hurst, n - 1, derive_seed(seed, 1));
      const double scale = std::pow(step, hurst);
      CompensatedSum acc;
      for (std::size_t i = 1; i < n; ++i) {
        acc.add(fgn[i - 1]);
        v[i] = v[0] + scale * acc.value();
      }
    }
    return TimeSeries{std::move(times), std::move(v)};
  }
  std::vector<double> v = sample_fbm_at(times, hurst, derive_seed(seed, 2));
  return TimeSeries{std::move(times), std::move(v)};
}

SfbmSample simulate_sfbm_with_underlying(const SfbmParams& params, const SamplingGrid& grid,
                                         std::uint64_t seed) {
  params.validate();
  TimeSeries underlying = simulate_path_on_grid(params.hurst_Hprime, grid, seed);
  const std::vector<double>& times = underlying.times;
  if (times.empty() || !(times.front() >= 1.0))
    throw std::invalid_argument("simulate_sfbm: grid times must start at or after t = 1");
  const std::vector<double>& base = underlying.values;

  const double h_diff = params.hurst_H - params.hurst_Hprime;
  std::vector<double> scaled(times.size());
  int interval = 1;
  double upper = params.lambda; // boundary lambda^interval, iterated products
  double factor = piecewise_scale_factor(params.lambda, 1, h_diff);
  for (std::size_t i = 0; i < times.size(); ++i) {
    while (times[i] >= upper) {
      upper *= params.lambda;
      ++interval;
      factor = piecewise_scale_factor(params.lambda, interval, h_diff);
    }
    scaled[i] = factor * base[i];
  }

  SfbmSample out;
  out.path = TimeSeries{times, std::move(scaled)};
  out.underlying = std::move(underlying);
  return out;
}

TimeSeries simulate_sfbm(const SfbmParams& params, const SamplingGrid& grid,
                         std::uint64_t seed) {
  return simulate_sfbm_with_underlying(params, grid, seed).path;
}

TimeSeries lamperti_stationarize(const TimeSeries& x, double hurst, double alpha) {
  x.validate();
  if (!(alpha > 1.0)) throw std::invalid_argument("lamperti_stationarize: alpha must be > 1");
  if (x.size() == 0) return {};

  const double log_alpha = std::log(alpha);
  TimeSeries out;
  out.times.reserve(x.size());
  out.values.reserve(x.size());
  long prev_n = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double n_real = std::log(x.times[i]) / log_alpha;
    const long n = std::lround(n_real);
    const double expected = std::pow(alpha, static_cast<double>(n));
    if (std::abs(x.times[i] - expected) > 1e-9 * std::abs(expected))
      throw std::invalid_argument(
          "lamperti_stationarize: time " + std::to_string(x.times[i]) +
          " is not a power of alpha");
    if (i > 0 && n != prev_n + 1)
      throw std::invalid_argument("lamperti_stationarize: exponents are not consecutive");
    prev_n = n;
    out.times.push_back(static_cast<double>(n));
    out.values.push_back(std::pow(alpha, -static_cast<double>(n) * hurst) * x.values[i]);
  }
  return out;
}

} // namespace dsi
