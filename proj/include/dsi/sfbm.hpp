#pragma once

#include <cstdint>

#include "dsi/series.hpp"

namespace dsi {

/// A simulated sfBm path together with the shared underlying fBm it was
/// assembled from (same times). path.values[i] =
/// lambda^{(n_i-1)(H-H')} * underlying.values[i].
struct SfbmSample {
  TimeSeries path;
  TimeSeries underlying;
};

/// Plain fBm sampled at the grid times. Uniform grids combine a standard
/// normal level at t = 1 with an exact fGn increment process (any length);
/// geometric grids use the dense exact sampler.
TimeSeries simulate_path_on_grid(double hurst, const SamplingGrid& grid, std::uint64_t seed);

SfbmSample simulate_sfbm_with_underlying(const SfbmParams& params, const SamplingGrid& grid,
                                         std::uint64_t seed);

/// sfBm samples on the grid: one underlying fBm path, piecewise rescaled by
/// the interval factor. Deterministic in (params, grid, seed).
TimeSeries simulate_sfbm(const SfbmParams& params, const SamplingGrid& grid,
                         std::uint64_t seed);

/// Quasi-Lamperti stationarization Y(n) = alpha^{-nH} X(alpha^n). Input times
/// must be alpha^n for consecutive integers n (relative tolerance 1e-9);
/// output times are those integers n.
TimeSeries lamperti_stationarize(const TimeSeries& x, double hurst, double alpha);

} // namespace dsi
