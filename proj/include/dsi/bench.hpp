#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

namespace dsi {

/// One Monte Carlo summary row: estimator accuracy at a true Hurst index.
/// mse = bias^2 + variance holds by construction (population variance).
struct BenchRow {
  double true_hurst;
  std::string method;
  std::size_t path_length;
  int repetitions;
  double mean_estimate;
  double bias;
  double variance;
  double mse;
};

/// Simulates `repetitions` fBm paths per Hurst value (one shared path per
/// repetition across methods; repetition r of the H-th entry uses the
/// derived sub-seed hash(master, index)), runs every requested estimator,
/// and aggregates in repetition order so results are thread-count invariant.
/// Methods: "ratio1", "ratio2", "qv", "auto".
std::vector<BenchRow> run_bench(const std::vector<double>& hurst_values,
                                std::size_t path_length, int repetitions,
                                const std::vector<std::string>& methods,
                                std::uint64_t master_seed, int k_max = 5, int threads = 0);

} // namespace dsi
