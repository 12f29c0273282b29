#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "dsi/series.hpp"

namespace dsi {

/// Autocovariance of fractional Gaussian noise on a unit grid,
/// gamma(k) = 0.5*(|k+1|^{2H} - 2|k|^{2H} + |k-1|^{2H}); gamma(0) = 1.
double fgn_autocovariance(double hurst, long lag);

/// Eigenvalues of the circulant embedding of the fGn covariance, i.e. the DFT
/// of the length-2m row [gamma(0), ..., gamma(m), gamma(m-1), ..., gamma(1)].
/// Exposed so the nonnegativity of the embedding can be checked directly.
std::vector<double> circulant_eigenvalues(double hurst, std::size_t half_size);

/// n exact fGn samples (unit grid, unit variance) by circulant embedding.
/// Eigenvalues in (-1e-8*max, 0) are clamped to zero; anything more negative
/// doubles the embedding, up to 4 times, before giving up.
std::vector<double> sample_fgn(double hurst, std::size_t n, std::uint64_t seed);

/// Exact fBm path on a uniform grid: values[0] = 0, increments are fGn scaled
/// by grid_step^hurst. Deterministic in (hurst, n_points, grid_step, seed).
FbmPath simulate_fbm(double hurst, std::size_t n_points, double grid_step, std::uint64_t seed);

/// Exact joint Gaussian fBm values at arbitrary strictly increasing times > 0
/// (dense Cholesky of the covariance; Brownian fast path for H = 1/2).
/// Intended for modest grids; throws above 4096 points.
std::vector<double> sample_fbm_at(std::span<const double> times, double hurst,
                                  std::uint64_t seed);

} // namespace dsi
