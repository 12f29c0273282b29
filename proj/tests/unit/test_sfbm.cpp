#include "doctest.h"

#include <cmath>
#include <stdexcept>
#include <vector>

#include "dsi/sfbm.hpp"
#include "dsi/series.hpp"

using namespace dsi;

TEST_CASE("geometric grid structure") {
  const GeometricGrid g{2.0, 20, 10};
  const std::vector<double> t = grid_times(SamplingGrid{g});
  REQUIRE(t.size() == 200);
  CHECK(t[0] == 1.0);
  // interval starts have exact ratio lambda and hold exactly T points
  for (int n = 0; n + 1 < g.intervals; ++n) {
    const double s0 = t[static_cast<std::size_t>(n) * 20];
    const double s1 = t[static_cast<std::size_t>(n + 1) * 20];
    CHECK(s1 / s0 == 2.0);
    // every point of interval n stays below the next start
    for (int k = 0; k < 20; ++k) CHECK(t[static_cast<std::size_t>(n) * 20 + k] < s1);
  }
  // non power-of-two scale: ratio still exact to an ulp
  const std::vector<double> t12 = grid_times(SamplingGrid{GeometricGrid{1.2, 20, 20}});
  for (int n = 0; n + 1 < 20; ++n) {
    const double ratio = t12[static_cast<std::size_t>(n + 1) * 20] /
                         t12[static_cast<std::size_t>(n) * 20];
    CHECK(ratio == doctest::Approx(1.2).epsilon(1e-15));
  }
}

TEST_CASE("uniform grid structure") {
  const std::vector<double> t = grid_times(SamplingGrid{UniformGrid{101.0, 100}});
  REQUIRE(t.size() == 101);
  CHECK(t[0] == 1.0);
  CHECK(t.back() == doctest::Approx(101.0));
  CHECK(uniform_step(t) == doctest::Approx(1.0));
}

TEST_CASE("scale interval indexing") {
  CHECK(scale_interval_index(1.0, 2.0) == 1);
  CHECK(scale_interval_index(1.999, 2.0) == 1);
  CHECK(scale_interval_index(2.0, 2.0) == 2);
  CHECK(scale_interval_index(4.0, 2.0) == 3);
  CHECK(scale_interval_index(1000.0, 2.0) == 10);
  CHECK_THROWS_AS(scale_interval_index(0.5, 2.0), std::invalid_argument);
}

TEST_CASE("sfbm degenerates to the underlying fBm when H = H'") {
  const SfbmParams p{2.0, 0.4, 0.4};
  const SamplingGrid grid = UniformGrid{64.0, 512};
  const SfbmSample s = simulate_sfbm_with_underlying(p, grid, 9);
  CHECK(s.path.values == s.underlying.values);
}

TEST_CASE("sfbm piecewise factor is the exact interval factor") {
  const SfbmParams p{2.0, 0.9, 0.2};
  const SamplingGrid grid = UniformGrid{200.0, 4000};
  const SfbmSample s = simulate_sfbm_with_underlying(p, grid, 33);
  REQUIRE(s.path.size() == s.underlying.size());
  CHECK(s.path.times[0] == 1.0);
  // first sample equals B(1): interval 1 factor is lambda^0 = 1
  CHECK(s.path.values[0] == s.underlying.values[0]);
  const double h_diff = p.hurst_H - p.hurst_Hprime;
  for (std::size_t i = 0; i < s.path.size(); ++i) {
    const int n = scale_interval_index(s.path.times[i], p.lambda);
    const double factor = piecewise_scale_factor(p.lambda, n, h_diff);
    CHECK(s.path.values[i] == factor * s.underlying.values[i]);
  }
}

TEST_CASE("sfbm is deterministic in (params, grid, seed)") {
  const SfbmParams p{4.0, 0.6, 0.2};
  const SamplingGrid grid = UniformGrid{4096.0, 8192};
  const TimeSeries a = simulate_sfbm(p, grid, 1234);
  const TimeSeries b = simulate_sfbm(p, grid, 1234);
  CHECK(a.values == b.values);
  CHECK(a.times == b.times);
  const TimeSeries c = simulate_sfbm(p, grid, 1235);
  CHECK(a.values != c.values);

  // geometric grids run through the dense sampler; still deterministic
  const SamplingGrid geo = GeometricGrid{2.0, 20, 8};
  const TimeSeries d = simulate_sfbm(p, geo, 5);
  const TimeSeries e = simulate_sfbm(p, geo, 5);
  CHECK(d.values == e.values);
}

TEST_CASE("sfbm rejects invalid parameters") {
  const SamplingGrid grid = UniformGrid{16.0, 64};
  CHECK_THROWS_AS(simulate_sfbm(SfbmParams{1.0, 0.5, 0.5}, grid, 0), std::invalid_argument);
  CHECK_THROWS_AS(simulate_sfbm(SfbmParams{2.0, 1.5, 0.5}, grid, 0), std::invalid_argument);
  CHECK_THROWS_AS(simulate_sfbm(SfbmParams{2.0, 0.5, 0.0}, grid, 0), std::invalid_argument);
}

TEST_CASE("lamperti stationarization") {
  // X(t) = t^H sampled at alpha^n collapses to the constant 1
  const double alpha = 2.0;
  const double h = 0.3;
  TimeSeries x;
  for (int n = 0; n <= 10; ++n) {
    const double t = std::pow(alpha, n);
    x.times.push_back(t);
    x.values.push_back(std::pow(t, h));
  }
  const TimeSeries y = lamperti_stationarize(x, h, alpha);
  REQUIRE(y.size() == x.size());
  for (std::size_t i = 0; i < y.size(); ++i)
    CHECK(y.values[i] == doctest::Approx(1.0).epsilon(1e-12));

  // H = 0 leaves the values unchanged
  const TimeSeries y0 = lamperti_stationarize(x, 0.0, alpha);
  CHECK(y0.values == x.values);

  // single point at t = 2 = alpha^1 with X = 4: Y(1) = 4 * 2^{-1/2}
  TimeSeries one{{2.0}, {4.0}};
  const TimeSeries y1 = lamperti_stationarize(one, 0.5, 2.0);
  CHECK(y1.times[0] == 1.0);
  CHECK(y1.values[0] == doctest::Approx(4.0 * std::pow(2.0, -0.5)).epsilon(1e-12));
  CHECK(y1.values[0] == doctest::Approx(2.8284).epsilon(1e-4));

  // times off the geometric progression are rejected
  TimeSeries bad{{1.0, 2.0, 3.0}, {0.0, 0.0, 0.0}};
  CHECK_THROWS_AS(lamperti_stationarize(bad, 0.5, 2.0), std::invalid_argument);
  // non-consecutive exponents are rejected
  TimeSeries gap{{1.0, 4.0}, {0.0, 0.0}};
  CHECK_THROWS_AS(lamperti_stationarize(gap, 0.5, 2.0), std::invalid_argument);
}
