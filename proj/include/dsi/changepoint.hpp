#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace dsi {

/// Three detected change points (0-based indices into the scanned sequence),
/// sorted ascending. For the variance-split method (i3, i2, i1) maps to
/// (tau1, tau2, tau3).
struct ChangePointTriple {
  enum class Method { cusum, variance_split };
  std::size_t tau1;
  std::size_t tau2;
  std::size_t tau3;
  Method method;
};

struct CusumPoint {
  std::size_t index;   // first index of the new level (0-based)
  double statistic;    // max |centered prefix sum|
  bool low_confidence; // statistic is at rounding level, no real change exists
};

/// Single most probable mean-change location: argmax over k of
/// |sum_{i<=k}(w_i - mean)|, returned as k+1. Ties break to the smallest index.
CusumPoint cusum_single_changepoint(std::span<const double> w);

/// Iterated CUSUM: detect, truncate the sequence at the found point, repeat
/// twice more; the three locations are returned sorted ascending.
ChangePointTriple last_three_changepoints_cusum(std::span<const double> w);

/// S(z) = L(z) + U(z) for z = l_star .. n - l_star, where L and U are the
/// population variances of the values before (indices < z) and from z on.
std::vector<double> variance_split_scan(std::span<const double> w, std::size_t l_star);

/// Iterated variance-split minima: i1 = argmin S on the full sequence, then
/// truncate to the first i1 - j_star values and repeat twice. Argmin ties
/// break to the largest index. Returns (i3, i2, i1) ascending.
ChangePointTriple last_three_minima_variance_split(std::span<const double> w,
                                                   std::size_t l_star = 30,
                                                   std::size_t j_star = 50);

/// Initial scale estimate (tau3 - tau2) / (tau2 - tau1).
double initial_scale(const ChangePointTriple& cp);

} // namespace dsi
