#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace dsi {

enum class HurstMethod { ratio_order1, ratio_order2, quadratic_variation };

std::string hurst_method_name(HurstMethod m);

struct HurstEstimate {
  HurstMethod method;
  std::vector<std::pair<int, double>> per_stride; // (k, H'_k) for k = 2..k_max
  double combined;                                // mean of the per-stride estimates
  int k_max;
};

/// Every k-th sample: x_k, x_{2k}, ..., x_{[N/k] k} (1-based positions).
std::vector<double> stride_subsample(std::span<const double> x, std::size_t k);

/// Stride-subsampling variance-ratio estimate of the Hurst index. For each
/// stride k, compares the sample variance of order-`order` increments of the
/// stride-k sub-sample against the same statistic on the full series;
/// H'_k = log(ratio) / (2 log k).
HurstEstimate hurst_ratio(std::span<const double> x, int order, int k_max);

/// True when the order-1 screening estimate calls for the order-2 method.
bool hurst_auto_selects_order2(double order1_estimate);

struct HurstAutoResult {
  HurstEstimate estimate;
  double order1_combined; // the screening estimate
  bool used_order2;
};

/// Order-1 estimate first; recomputed with order-2 increments when the
/// screening estimate is >= 0.75.
HurstAutoResult hurst_auto(std::span<const double> x, int k_max);

/// Discrete-variations baseline: H = 0.5 * log2(V_2 / V_1) with V_m the mean
/// squared second-order difference at dilation m.
HurstEstimate hurst_quadratic_variation(std::span<const double> x);

/// True when the sparsest sub-sample [N/k_max] drops below 30 samples (the
/// caller may want to warn; estimation still proceeds).
bool hurst_subsample_sparse(std::size_t n, int k_max);

} // namespace dsi
