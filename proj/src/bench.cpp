#include "dsi/bench.hpp"

#include <stdexcept>

#include "dsi/fbm.hpp"
#include "dsi/hurst.hpp"
#include "dsi/numeric.hpp"
#include "dsi/parallel.hpp"
#include "dsi/rng.hpp"

namespace dsi {

namespace {

double run_method(const std::string& method, std::span<const double> values, int k_max) {
  if (method == "ratio1") return hurst_ratio(values, 1, k_max).combined;
  if (method == "ratio2") return hurst_ratio(values, 2, k_max).combined;
  if (method == "qv") return hurst_quadratic_variation(values).combined;
  if (method == "auto") return hurst_auto(values, k_max).estimate.combined;
  throw std::invalid_argument("run_bench: unknown method '" + method + "'");
}

} // namespace

std::vector<BenchRow> run_bench(const std::vector<double>& hurst_values,
                                std::size_t path_length, int repetitions,
                                const std::vector<std::string>& methods,
                                std::uint64_t master_seed, int k_max, int threads) {
  if (hurst_values.empty()) throw std::invalid_argument("run_bench: no Hurst values");
  if (methods.empty()) throw std::invalid_argument("run_bench: no methods");
  if (repetitions < 1) throw std::invalid_argument("run_bench: repetitions must be >= 1");
  if (path_length < 5) throw std::invalid_argument("run_bench: path too short");

  const std::size_t n_h = hurst_values.size();
  const std::size_t n_m = methods.size();
  const std::size_t reps = static_cast<std::size_t>(repetitions);

  // estimates[(h * reps + r) * n_m + m]
  std::vector<double> estimates(n_h * reps * n_m);
  parallel_for(n_h * reps, threads, [&](std::size_t task) {
    const std::size_t h_idx = task / reps;
    const FbmPath path =
        simulate_fbm(hurst_values[h_idx], path_length, 1.0, derive_seed(master_seed, task));
    for (std::size_t m = 0; m < n_m; ++m)
      estimates[task * n_m + m] = run_method(methods[m], path.values, k_max);
  });

  std::vector<BenchRow> rows;
  rows.reserve(n_h * n_m);
  for (std::size_t h = 0; h < n_h; ++h) {
    for (std::size_t m = 0; m < n_m; ++m) {
      CompensatedSum sum;
      for (std::size_t r = 0; r < reps; ++r) sum.add(estimates[(h * reps + r) * n_m + m]);
      const double mean_est = sum.value() / static_cast<double>(reps);

      CompensatedSum var_sum, mse_sum;
      for (std::size_t r = 0; r < reps; ++r) {
        const double e = estimates[(h * reps + r) * n_m + m];
        var_sum.add((e - mean_est) * (e - mean_est));
        mse_sum.add((e - hurst_values[h]) * (e - hurst_values[h]));
      }
      BenchRow row;
      row.true_hurst = hurst_values[h];
      row.method = methods[m];
      row.path_length = path_length;
      row.repetitions = repetitions;
      row.mean_estimate = mean_est;
      row.bias = mean_est - hurst_values[h];
      row.variance = var_sum.value() / static_cast<double>(reps);
      row.mse = mse_sum.value() / static_cast<double>(reps);
      rows.push_back(std::move(row));
    }
  }
  return rows;
}

} // namespace dsi
