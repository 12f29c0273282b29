#pragma once

#include <cmath>
#include <cstddef>
#include <span>
#include <stdexcept>
#include <vector>

namespace dsi {

/// Neumaier-compensated accumulator. All statistics in this library are
/// accumulated through this so that sequential and parallel code paths
/// (which always reduce in index order) produce identical doubles.
class CompensatedSum {
public:
  void add(double v) {
    const double t = sum_ + v;
    if (std::abs(sum_) >= std::abs(v)) {
      comp_ += (sum_ - t) + v;
    } else {
      comp_ += (v - t) + sum_;
    }
    sum_ = t;
  }
  double value() const { return sum_ + comp_; }

private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

inline double compensated_sum(std::span<const double> v) {
  CompensatedSum s;
  for (double x : v) s.add(x);
  return s.value();
}

inline double mean(std::span<const double> v) {
  if (v.empty()) throw std::invalid_argument("mean: empty sequence");
  return compensated_sum(v) / static_cast<double>(v.size());
}

/// Unbiased sample variance, 1/(n-1) convention, two-pass.
inline double sample_variance(std::span<const double> v) {
  if (v.size() < 2) throw std::invalid_argument("sample_variance: need at least 2 values");
  const double m = mean(v);
  CompensatedSum s;
  for (double x : v) {
    const double d = x - m;
    s.add(d * d);
  }
  return s.value() / static_cast<double>(v.size() - 1);
}

/// Population variance, 1/n convention (used by the split objectives).
inline double population_variance(std::span<const double> v) {
  if (v.empty()) throw std::invalid_argument("population_variance: empty sequence");
  const double m = mean(v);
  CompensatedSum s;
  for (double x : v) {
    const double d = x - m;
    s.add(d * d);
  }
  return s.value() / static_cast<double>(v.size());
}

/// Mean of squares (zero-mean convention).
inline double mean_square(std::span<const double> v) {
  if (v.empty()) throw std::invalid_argument("mean_square: empty sequence");
  CompensatedSum s;
  for (double x : v) s.add(x * x);
  return s.value() / static_cast<double>(v.size());
}

} // namespace dsi
