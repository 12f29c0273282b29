#include "dsi/series.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace dsi {

void SfbmParams::validate() const {
  if (!(lambda > 1.0)) throw std::invalid_argument("SfbmParams: lambda must be > 1");
  if (!(hurst_H > 0.0 && hurst_H < 1.0))
    throw std::invalid_argument("SfbmParams: hurst_H must be in (0,1)");
  if (!(hurst_Hprime > 0.0 && hurst_Hprime < 1.0))
    throw std::invalid_argument("SfbmParams: hurst_Hprime must be in (0,1)");
}

void TimeSeries::validate() const {
  if (times.size() != values.size())
    throw std::invalid_argument("TimeSeries: times and values differ in length");
  for (std::size_t i = 1; i < times.size(); ++i) {
    if (!(times[i] > times[i - 1]))
      throw std::invalid_argument("TimeSeries: times must be strictly increasing");
  }
}

std::vector<double> grid_times(const SamplingGrid& grid) {
  std::vector<double> t;
  if (const auto* g = std::get_if<GeometricGrid>(&grid)) {
    if (!(g->lambda > 1.0)) throw std::invalid_argument("GeometricGrid: lambda must be > 1");
    if (g->points_per_interval < 1 || g->intervals < 1)
      throw std::invalid_argument("GeometricGrid: T and M must be positive");
    const int T = g->points_per_interval;
    const double frac = (g->lambda - 1.0) / static_cast<double>(T);
    t.reserve(static_cast<std::size_t>(T) * static_cast<std::size_t>(g->intervals));
    double start = 1.0; // lambda^{n-1}, accumulated by products
    for (int n = 1; n <= g->intervals; ++n) {
      for (int k = 0; k < T; ++k) {
        t.push_back(start * (1.0 + static_cast<double>(k) * frac));
      }
      start *= g->lambda;
    }
  } else {
    const auto& u = std::get<UniformGrid>(grid);
    if (!(u.end_time > 1.0)) throw std::invalid_argument("UniformGrid: end_time must be > 1");
    if (u.steps < 1) throw std::invalid_argument("UniformGrid: steps must be positive");
    const double step = (u.end_time - 1.0) / static_cast<double>(u.steps);
    t.reserve(static_cast<std::size_t>(u.steps) + 1);
    for (int i = 0; i <= u.steps; ++i) {
      t.push_back(1.0 + static_cast<double>(i) * step);
    }
  }
  for (std::size_t i = 1; i < t.size(); ++i) {
    if (!(t[i] > t[i - 1]))
      throw std::invalid_argument("grid_times: resulting times are not strictly increasing");
  }
  return t;
}

double uniform_step(const std::vector<double>& times) {
  if (times.size() < 2) throw std::invalid_argument("uniform_step: need at least 2 times");
  const double step = times[1] - times[0];
  if (!(step > 0.0)) throw std::invalid_argument("uniform_step: times not increasing");
  for (std::size_t i = 1; i + 1 < times.size(); ++i) {
    const double d = times[i + 1] - times[i];
    if (std::abs(d - step) > 1e-9 * std::max(std::abs(step), std::abs(d)))
      throw std::invalid_argument("uniform_step: grid is not uniform");
  }
  return step;
}

std::vector<double> scale_boundaries(double lambda, double t_max) {
  if (!(lambda > 1.0)) throw std::invalid_argument("scale_boundaries: lambda must be > 1");
  if (!(t_max >= 1.0)) throw std::invalid_argument("scale_boundaries: t_max must be >= 1");
  std::vector<double> b{1.0};
  while (b.back() <= t_max) {
    const double next = b.back() * lambda;
    if (!std::isfinite(next)) throw std::invalid_argument("scale_boundaries: overflow");
    b.push_back(next);
  }
  return b; // b.back() is the first boundary strictly above t_max
}

int scale_interval_index(double t, double lambda) {
  if (!(t >= 1.0)) throw std::invalid_argument("scale_interval_index: t must be >= 1");
  if (!(lambda > 1.0)) throw std::invalid_argument("scale_interval_index: lambda must be > 1");
  int n = 1;
  double upper = lambda; // boundary lambda^n
  while (t >= upper) {
    upper *= lambda;
    ++n;
    if (n > 100000) throw std::invalid_argument("scale_interval_index: t out of range");
  }
  return n;
}

double piecewise_scale_factor(double lambda, int interval_n, double h_diff) {
  return std::pow(lambda, static_cast<double>(interval_n - 1) * h_diff);
}

} // namespace dsi
