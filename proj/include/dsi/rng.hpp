#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>

namespace dsi {

/// splitmix64: tiny counter-style generator. Chosen over std facilities so
/// every draw is bit-reproducible across toolchains and thread schedules.
class SplitMix64 {
public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  /// Uniform double in [0, 1).
  double uniform01() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

private:
  std::uint64_t state_;
};

/// Standard normal stream via Box-Muller on a SplitMix64 source.
class GaussianStream {
public:
  explicit GaussianStream(std::uint64_t seed) : rng_(seed) {}

  double next() {
    if (has_spare_) {
      has_spare_ = false;
      return spare_;
    }
    const double u1 = 1.0 - rng_.uniform01(); // (0, 1]
    const double u2 = rng_.uniform01();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double a = 2.0 * std::numbers::pi * u2;
    spare_ = r * std::sin(a);
    has_spare_ = true;
    return r * std::cos(a);
  }

private:
  SplitMix64 rng_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

/// Sub-seed derivation: hash(master, stream). Repetition r of a Monte Carlo
/// run uses derive_seed(master, r), so scheduling order cannot change results.
inline std::uint64_t derive_seed(std::uint64_t master, std::uint64_t stream) {
  SplitMix64 g(master ^ (0x9E3779B97F4A7C15ULL * (stream + 1)));
  g.next();
  return g.next();
}

} // namespace dsi
