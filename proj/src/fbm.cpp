#include "dsi/fbm.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <complex>
#include <map>
#include <memory>
#include <mutex>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>
#include <fftw3.h>

#include "dsi/errors.hpp"
#include "dsi/numeric.hpp"
#include "dsi/rng.hpp"

namespace dsi {

namespace {

// FFTW plan creation is not thread safe; execution is.
std::mutex g_fftw_mutex;

void fft_forward_inplace(std::vector<std::complex<double>>& data) {
  auto* ptr = reinterpret_cast<fftw_complex*>(data.data());
  fftw_plan plan;
  {
    std::lock_guard<std::mutex> lock(g_fftw_mutex);
    plan = fftw_plan_dft_1d(static_cast<int>(data.size()), ptr, ptr, FFTW_FORWARD,
                            FFTW_ESTIMATE);
  }
  if (plan == nullptr) throw std::runtime_error("fftw: plan creation failed");
  fftw_execute(plan);
  {
    std::lock_guard<std::mutex> lock(g_fftw_mutex);
    fftw_destroy_plan(plan);
  }
}

// Accepted embeddings cached per (hurst bits, half size): eigenvalues are a
// pure function of both, and Monte Carlo loops reuse the same sizes heavily.
struct EigKey {
  std::uint64_t hurst_bits;
  std::size_t half_size;
  bool operator<(const EigKey& o) const {
    return hurst_bits != o.hurst_bits ? hurst_bits < o.hurst_bits : half_size < o.half_size;
  }
};
std::mutex g_eig_mutex;
std::map<EigKey, std::shared_ptr<const std::vector<double>>> g_eig_cache;

std::shared_ptr<const std::vector<double>> cached_eigenvalues(double hurst, std::size_t m) {
  EigKey key{std::bit_cast<std::uint64_t>(hurst), m};
  {
    std::lock_guard<std::mutex> lock(g_eig_mutex);
    auto it = g_eig_cache.find(key);
    if (it != g_eig_cache.end()) return it->second;
  }
  auto eigs = std::make_shared<std::vector<double>>(circulant_eigenvalues(hurst, m));
  std::lock_guard<std::mutex> lock(g_eig_mutex);
  auto [it, inserted] = g_eig_cache.emplace(key, std::move(eigs));
  return it->second;
}

} // namespace

double fgn_autocovariance(double hurst, long lag) {
  if (!(hurst > 0.0 && hurst < 1.0))
    throw std::invalid_argument("fgn_autocovariance: hurst must be in (0,1)");
  if (lag < 0) throw std::invalid_argument("fgn_autocovariance: lag must be >= 0");
  if (lag == 0) return 1.0;
  // 0.5*k^{2H}*((1+1/k)^{2H} - 2 + (1-1/k)^{2H}), via expm1/log1p to tame the
  // cancellation at large lags.
  const double k = static_cast<double>(lag);
  const double e = 2.0 * hurst;
  const double a = std::expm1(e * std::log1p(1.0 / k));
  const double b = std::expm1(e * std::log1p(-1.0 / k)); // k=1: expm1(-inf) = -1
  return 0.5 * std::pow(k, e) * (a + b);
}

std::vector<double> circulant_eigenvalues(double hurst, std::size_t half_size) {
  if (half_size < 1) throw std::invalid_argument("circulant_eigenvalues: half_size must be >= 1");
  const std::size_t g = 2 * half_size;
  std::vector<std::complex<double>> row(g);
  for (std::size_t j = 0; j <= half_size; ++j)
    row[j] = fgn_autocovariance(hurst, static_cast<long>(j));
  for (std::size_t j = half_size + 1; j < g; ++j) row[j] = row[g - j];
  fft_forward_inplace(row);
  std::vector<double> eigs(g);
  for (std::size_t j = 0; j < g; ++j) eigs[j] = row[j].real();
  return eigs;
}

std::vector<double> sample_fgn(double hurst, std::size_t n, std::uint64_t seed) {
  if (!(hurst > 0.0 && hurst < 1.0))
    throw std::invalid_argument("sample_fgn: hurst must be in (0,1)");
  if (n == 0) return {};

  std::size_t m = std::bit_ceil(std::max<std::size_t>(n, 2));
  std::shared_ptr<const std::vector<double>> eigs;
  std::vector<double> lam;
  bool ok = false;
  for (int attempt = 0; attempt <= 4; ++attempt) {
    eigs = cached_eigenvalues(hurst, m);
    const double max_eig = *std::max_element(eigs->begin(), eigs->end());
    const double min_eig = *std::min_element(eigs->begin(), eigs->end());
    if (min_eig >= -1e-8 * max_eig) {
      lam.assign(eigs->begin(), eigs->end());
      for (double& v : lam) v = std::max(v, 0.0); // clamp rounding-level negatives
      ok = true;
      break;
    }
    m *= 2;
  }
  if (!ok)
    throw degeneracy_error("sample_fgn: circulant embedding stayed indefinite after 4 doublings");

  const std::size_t g = 2 * m;
  GaussianStream gauss(seed);
  std::vector<std::complex<double>> w(g);
  const double inv_g = 1.0 / static_cast<double>(g);
  w[0] = std::sqrt(lam[0] * inv_g) * gauss.next();
  for (std::size_t j = 1; j < m; ++j) {
    const double s = std::sqrt(lam[j] * inv_g * 0.5);
    const double re = gauss.next();
    const double im = gauss.next();
    w[j] = std::complex<double>(s * re, s * im);
    w[g - j] = std::conj(w[j]);
  }
  w[m] = std::sqrt(lam[m] * inv_g) * gauss.next();

  fft_forward_inplace(w);
  std::vector<double> out(n);
  for (std::size_t i = 0; i < n; ++i) out[i] = w[i].real();
  return out;
}

FbmPath simulate_fbm(double hurst, std::size_t n_points, double grid_step, std::uint64_t seed) {
  if (!(hurst > 0.0 && hurst < 1.0))
    throw std::invalid_argument("simulate_fbm: hurst must be in (0,1)");
  if (n_points < 1) throw std::invalid_argument("simulate_fbm: n_points must be >= 1");
  if (!(grid_step > 0.0)) throw std::invalid_argument("simulate_fbm: grid_step must be > 0");

  FbmPath path{hurst, grid_step, std::vector<double>(n_points, 0.0)};
  if (n_points == 1) return path;

  const std::vector<double> fgn = sample_fgn(hurst, n_points - 1, seed);
  const double scale = std::pow(grid_step, hurst);
  CompensatedSum acc;
  for (std::size_t i = 1; i < n_points; ++i) {
    acc.add(fgn[i - 1]);
    path.values[i] = scale * acc.value();
  }
  return path;
}

std::vector<double> sample_fbm_at(std::span<const double> times, double hurst,
                                  std::uint64_t seed) {
  if (!(hurst > 0.0 && hurst < 1.0))
    throw std::invalid_argument("sample_fbm_at: hurst must be in (0,1)");
  const std::size_t n = times.size();
  if (n == 0) return {};
  for (std::size_t i = 0; i < n; ++i) {
    if (!(times[i] > 0.0)) throw std::invalid_argument("sample_fbm_at: times must be > 0");
    if (i > 0 && !(times[i] > times[i - 1]))
      throw std::invalid_argument("sample_fbm_at: times must be strictly increasing");
  }

  GaussianStream gauss(seed);
  std::vector<double> values(n);

  if (hurst == 0.5) {
    // Brownian motion: independent increments, any grid, any size.
    values[0] = std::sqrt(times[0]) * gauss.next();
    for (std::size_t i = 1; i < n; ++i)
      values[i] = values[i - 1] + std::sqrt(times[i] - times[i - 1]) * gauss.next();
    return values;
  }

  if (n > 4096)
    throw std::invalid_argument(
        "sample_fbm_at: dense exact sampling is limited to 4096 points; "
        "use a uniform grid for long paths");

  const double e = 2.0 * hurst;
  Eigen::MatrixXd cov(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j <= i; ++j) {
      const double c = 0.5 * (std::pow(times[i], e) + std::pow(times[j], e) -
                              std::pow(times[i] - times[j], e));
      cov(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = c;
      cov(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(i)) = c;
    }
  }
  Eigen::LLT<Eigen::MatrixXd> llt(cov);
  if (llt.info() != Eigen::Success)
    throw degeneracy_error("sample_fbm_at: covariance not positive definite at this grid");

  Eigen::VectorXd z(n);
  for (std::size_t i = 0; i < n; ++i) z(static_cast<Eigen::Index>(i)) = gauss.next();
  Eigen::VectorXd v = llt.matrixL() * z;
  for (std::size_t i = 0; i < n; ++i) values[i] = v(static_cast<Eigen::Index>(i));
  return values;
}

} // namespace dsi
