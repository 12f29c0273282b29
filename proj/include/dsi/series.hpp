#pragma once

#include <cstddef>
#include <variant>
#include <vector>

namespace dsi {

/// Parameters of a piecewise-rescaled fractional Brownian motion:
/// on the scale interval [lambda^{n-1}, lambda^n) the process equals
/// lambda^{(n-1)(H-H')} times one shared underlying fBm with index H'.
struct SfbmParams {
  double lambda;       // preferred scale, > 1
  double hurst_H;      // overall self-similarity index, in (0,1)
  double hurst_Hprime; // Hurst index of the underlying fBm, in (0,1)

  void validate() const;
};

/// Geometric sampling: points_per_interval equally spaced points inside each
/// of `intervals` scale intervals, t = lambda^{n-1} * (1 + k*(lambda-1)/T).
struct GeometricGrid {
  double lambda;
  int points_per_interval; // T
  int intervals;           // M
};

/// Uniform sampling on [1, end_time]: t_i = 1 + i*(end_time-1)/steps,
/// i = 0..steps (steps+1 points).
struct UniformGrid {
  double end_time; // C > 1
  int steps;       // N
};

using SamplingGrid = std::variant<GeometricGrid, UniformGrid>;

/// Strictly increasing sample times for a grid spec.
std::vector<double> grid_times(const SamplingGrid& grid);

/// Uniform spacing of a time vector, or throws if the spacing is not constant
/// within relative tolerance 1e-9.
double uniform_step(const std::vector<double>& times);

/// Ordered (time, value) samples on a strictly increasing grid.
struct TimeSeries {
  std::vector<double> times;
  std::vector<double> values;

  std::size_t size() const { return values.size(); }
  void validate() const; // equal lengths, strictly increasing times
};

/// Exact fBm sample path on a uniform grid; values[0] = 0.
struct FbmPath {
  double hurst;
  double grid_step;
  std::vector<double> values;
};

/// 1-based index n of the scale interval [lambda^{n-1}, lambda^n) containing t.
/// Boundaries are accumulated by repeated multiplication so that grid start
/// times constructed the same way land exactly on their own interval; see
/// scale_boundaries.
int scale_interval_index(double t, double lambda);

/// Boundaries 1, lambda, lambda^2, ... , first value > t_max (inclusive).
/// Built by iterated products, the shared convention for every partition in
/// the library.
std::vector<double> scale_boundaries(double lambda, double t_max);

/// The piecewise factor lambda^{(n-1)*h_diff} for 1-based interval n.
double piecewise_scale_factor(double lambda, int interval_n, double h_diff);

} // namespace dsi
