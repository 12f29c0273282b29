#include "doctest.h"

#include <cmath>
#include <vector>

#include "dsi/rng.hpp"
#include "dsi/series.hpp"
#include "dsi/sfbm.hpp"
#include "dsi/stats.hpp"

using namespace dsi;

namespace {

TimeSeries series_of(std::vector<double> values) {
  TimeSeries x;
  x.values = std::move(values);
  x.times.resize(x.values.size());
  for (std::size_t i = 0; i < x.times.size(); ++i) x.times[i] = 1.0 + static_cast<double>(i);
  return x;
}

} // namespace

TEST_CASE("increments of both orders") {
  const TimeSeries x = series_of({0.0, 1.0, 3.0});
  const IncrementSeries d1 = increments(x, 1);
  CHECK(d1.values == std::vector<double>{1.0, 2.0});
  CHECK(d1.source_times == std::vector<double>{1.0, 2.0});
  const IncrementSeries d2 = increments(x, 2);
  CHECK(d2.values == std::vector<double>{1.0});

  const TimeSeries c = series_of({5.0, 5.0, 5.0, 5.0});
  CHECK(increments(c, 1).values == std::vector<double>{0.0, 0.0, 0.0});
  CHECK(increments(c, 2).values == std::vector<double>{0.0, 0.0});

  CHECK_THROWS_AS(increments(series_of({1.0}), 1), std::invalid_argument);
  CHECK_THROWS_AS(increments(series_of({1.0, 2.0}), 2), std::invalid_argument);
  CHECK_THROWS_AS(increments(x, 3), std::invalid_argument);
}

TEST_CASE("sample variance") {
  CHECK(sample_variance(std::vector<double>{1, 2, 3, 4}) == doctest::Approx(5.0 / 3.0));
  CHECK(sample_variance(std::vector<double>{7, 7, 7}) == 0.0);
  CHECK(sample_variance(std::vector<double>{0, 2}) == doctest::Approx(2.0));
  CHECK_THROWS_AS(sample_variance(std::vector<double>{1.0}), std::invalid_argument);
}

TEST_CASE("moving sample variance") {
  const std::vector<double> ramp{1, 2, 3, 4};
  CHECK(moving_sample_variance(ramp, 2) == std::vector<double>{0.5, 0.5, 0.5});

  const std::vector<double> flat(20, 3.25);
  for (double v : moving_sample_variance(flat, 10)) CHECK(v == 0.0);

  CHECK_THROWS_AS(moving_sample_variance(ramp, 5), std::invalid_argument);
  CHECK_THROWS_AS(moving_sample_variance(ramp, 1), std::invalid_argument);

  // windowed value equals the plain sample variance of the window slice
  SplitMix64 rng(42);
  std::vector<double> noise(64);
  for (double& v : noise) v = rng.uniform01();
  const std::vector<double> msv = moving_sample_variance(noise, 10);
  REQUIRE(msv.size() == 55);
  for (std::size_t i = 0; i < msv.size(); ++i) {
    const std::vector<double> window(noise.begin() + static_cast<long>(i),
                                     noise.begin() + static_cast<long>(i) + 10);
    CHECK(msv[i] == doctest::Approx(sample_variance(window)).epsilon(1e-14));
  }
}

TEST_CASE("moving sample variance is unbiased on white noise") {
  // mean of V_i over repetitions approaches the true variance
  GaussianStream g(7);
  const double sigma2 = 4.0;
  CompensatedSum total;
  std::size_t count = 0;
  for (int rep = 0; rep < 200; ++rep) {
    std::vector<double> y(120);
    for (double& v : y) v = 2.0 * g.next();
    for (double v : moving_sample_variance(y, 10)) {
      total.add(v);
      ++count;
    }
  }
  const double mean_v = total.value() / static_cast<double>(count);
  CHECK(mean_v == doctest::Approx(sigma2).epsilon(0.05));
}

TEST_CASE("moving average: literal d*+1 window over d*") {
  CHECK(moving_average(std::vector<double>{1, 2, 3, 4}, 1) == std::vector<double>{3, 5, 7});

  const std::vector<double> flat(10, 2.0);
  for (double w : moving_average(flat, 4)) CHECK(w == doctest::Approx(2.0 * 5.0 / 4.0));

  // ramp v_j = j (0-based), d* = 2: W_i = (3i + 3) / 2
  std::vector<double> ramp(12);
  for (std::size_t i = 0; i < ramp.size(); ++i) ramp[i] = static_cast<double>(i);
  const std::vector<double> w = moving_average(ramp, 2);
  for (std::size_t i = 0; i < w.size(); ++i)
    CHECK(w[i] == doctest::Approx((3.0 * static_cast<double>(i) + 3.0) / 2.0));

  CHECK_THROWS_AS(moving_average(std::vector<double>{1, 2}, 2), std::invalid_argument);
}

TEST_CASE("variance traces stay nonnegative and cumulative sums monotone") {
  GaussianStream g(44);
  std::vector<double> y(400);
  for (double& v : y) v = g.next();
  const std::vector<double> msv = moving_sample_variance(y, 10);
  for (double v : msv) CHECK(v >= 0.0);
  const std::vector<double> w = moving_average(msv, 20);
  for (double v : w) CHECK(v >= 0.0);
  const std::vector<double> u = cumulative_sum(w);
  for (std::size_t i = 1; i < u.size(); ++i) CHECK(u[i] >= u[i - 1]);
}

TEST_CASE("cumulative sums") {
  CHECK(cumulative_sum(std::vector<double>{1, 2, 3}) == std::vector<double>{1, 3, 6});
  CHECK(cumulative_sum(std::vector<double>{0, 0, 0}) == std::vector<double>{0, 0, 0});
  // piecewise-constant input gives a piecewise-linear broken line
  std::vector<double> levels;
  for (int i = 0; i < 6; ++i) levels.push_back(2.0);
  for (int i = 0; i < 6; ++i) levels.push_back(5.0);
  const std::vector<double> u = cumulative_sum(levels);
  for (std::size_t i = 1; i < 6; ++i) CHECK(u[i] - u[i - 1] == doctest::Approx(2.0));
  for (std::size_t i = 7; i < 12; ++i) CHECK(u[i] - u[i - 1] == doctest::Approx(5.0));
  CHECK_THROWS_AS(cumulative_sum(std::vector<double>{}), std::invalid_argument);
}

TEST_CASE("scale interval variances: deterministic ramp") {
  // X(t) = t on a uniform grid: every increment equals the step
  const std::vector<double> times = grid_times(SamplingGrid{UniformGrid{64.0, 630}});
  TimeSeries x{times, times};
  const ScaleIntervalVariances siv = scale_interval_variances(x, 2.0, VarianceMode::mean_square);
  CHECK(siv.interval_count == 6); // 2^6 = 64 <= 64
  const double step = 63.0 / 630.0;
  for (int k = 1; k <= siv.interval_count; ++k) {
    if (siv.counts[static_cast<std::size_t>(k - 1)] == 0) continue;
    CHECK(siv.variances[static_cast<std::size_t>(k - 1)] ==
          doctest::Approx(step * step).epsilon(1e-12));
  }
  // the literal second-difference mode sees constant increments as zero
  // (up to grid rounding)
  const ScaleIntervalVariances sd =
      scale_interval_variances(x, 2.0, VarianceMode::second_difference);
  for (double v : sd.variances) CHECK(v <= 1e-25);
}

TEST_CASE("scale interval variances: bookkeeping identity over candidates") {
  const SfbmParams p{2.0, 0.9, 0.2};
  const TimeSeries x = simulate_sfbm(p, UniformGrid{512.0, 2048}, 17);
  const std::size_t total = x.size() - 1;
  for (double a : {1.5, 2.0, 2.7, 3.7}) {
    const ScaleIntervalVariances siv = scale_interval_variances(x, a);
    std::size_t counted = siv.dropped_boundary + siv.outside;
    for (std::size_t c : siv.counts) counted += c;
    CHECK(counted == total);
  }
  CHECK_THROWS_AS(scale_interval_variances(x, 0.9), std::invalid_argument);
}

TEST_CASE("scale interval variances: sfbm ratio law and fBm flatness") {
  // sfBm with lambda = 2, H - H' = 0.7: trailing interval variance ratios
  // approach 2^{1.4}
  const SfbmParams p{2.0, 0.9, 0.2};
  const TimeSeries x = simulate_sfbm(p, UniformGrid{131072.0, 100000}, 3);
  const ScaleIntervalVariances siv = scale_interval_variances(x, 2.0);
  REQUIRE(siv.interval_count == 17);
  const double want = std::pow(2.0, 1.4);
  for (int k = siv.interval_count - 3; k <= siv.interval_count; ++k) {
    const double ratio = siv.variances[static_cast<std::size_t>(k - 1)] /
                         siv.variances[static_cast<std::size_t>(k - 2)];
    CHECK(ratio == doctest::Approx(want).epsilon(0.15));
  }

  // H = H': stationary increments, ratios near 1
  const TimeSeries f = simulate_sfbm(SfbmParams{2.0, 0.3, 0.3}, UniformGrid{65536.0, 80000}, 4);
  const ScaleIntervalVariances flat = scale_interval_variances(f, 2.0);
  for (int k = flat.interval_count - 2; k <= flat.interval_count; ++k) {
    const double ratio = flat.variances[static_cast<std::size_t>(k - 1)] /
                         flat.variances[static_cast<std::size_t>(k - 2)];
    CHECK(ratio == doctest::Approx(1.0).epsilon(0.15));
  }
}
