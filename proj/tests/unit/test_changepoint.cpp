#include "doctest.h"

#include <cmath>
#include <cstddef>
#include <vector>

#include "dsi/changepoint.hpp"
#include "dsi/errors.hpp"
#include "dsi/rng.hpp"

using namespace dsi;

namespace {

// Independent re-evaluation of the CUSUM statistic: for every split point,
// re-sum the centered prefix from scratch.
std::size_t brute_cusum(const std::vector<double>& w) {
  double mean = 0.0;
  for (double v : w) mean += v;
  mean /= static_cast<double>(w.size());
  double best = -1.0;
  std::size_t best_k = 0;
  for (std::size_t k = 0; k + 1 < w.size(); ++k) {
    double s = 0.0;
    for (std::size_t i = 0; i <= k; ++i) s += w[i] - mean;
    if (std::abs(s) > best) {
      best = std::abs(s);
      best_k = k;
    }
  }
  return best_k + 1;
}

// Direct two-pass evaluation of S(z) = L(z) + U(z) for each admissible z,
// argmin with ties to the largest z.
std::size_t brute_split_argmin(const std::vector<double>& w, std::size_t l_star) {
  const std::size_t n = w.size();
  double best = 0.0;
  std::size_t best_z = 0;
  bool first = true;
  for (std::size_t z = l_star; z <= n - l_star; ++z) {
    double m1 = 0.0, m2 = 0.0;
    for (std::size_t i = 0; i < z; ++i) m1 += w[i];
    for (std::size_t i = z; i < n; ++i) m2 += w[i];
    m1 /= static_cast<double>(z);
    m2 /= static_cast<double>(n - z);
    double l = 0.0, u = 0.0;
    for (std::size_t i = 0; i < z; ++i) l += (w[i] - m1) * (w[i] - m1);
    for (std::size_t i = z; i < n; ++i) u += (w[i] - m2) * (w[i] - m2);
    const double s = l / static_cast<double>(z) + u / static_cast<double>(n - z);
    if (first || s <= best) {
      best = s;
      best_z = z;
      first = false;
    }
  }
  return best_z;
}

std::vector<double> staircase(const std::vector<std::size_t>& starts,
                              const std::vector<double>& levels, std::size_t total) {
  std::vector<double> w(total);
  std::size_t seg = 0;
  for (std::size_t i = 0; i < total; ++i) {
    while (seg + 1 < starts.size() && i >= starts[seg + 1]) ++seg;
    w[i] = levels[seg];
  }
  return w;
}

} // namespace

TEST_CASE("cusum single change point on step sequences") {
  const std::vector<double> step{0, 0, 0, 0, 1, 1, 1, 1};
  const CusumPoint p = cusum_single_changepoint(step);
  CHECK(p.index == 4);
  CHECK(p.index == brute_cusum(step));
  CHECK_FALSE(p.low_confidence);

  // the larger mean shift dominates
  std::vector<double> two_step;
  for (int i = 0; i < 6; ++i) two_step.push_back(0.0);
  for (int i = 0; i < 6; ++i) two_step.push_back(1.0);
  for (int i = 0; i < 6; ++i) two_step.push_back(5.0);
  const CusumPoint q = cusum_single_changepoint(two_step);
  CHECK(q.index == 12);
  CHECK(q.index == brute_cusum(two_step));

  CHECK_THROWS_AS(cusum_single_changepoint(std::vector<double>{1, 2, 3}),
                  std::invalid_argument);
}

TEST_CASE("cusum flags constant input as low confidence") {
  const std::vector<double> flat(32, 2.5);
  const CusumPoint p = cusum_single_changepoint(flat);
  CHECK(p.low_confidence);
  CHECK(p.index == 1); // deterministic smallest-index tie break
}

TEST_CASE("cusum matches brute force on random mixtures") {
  SplitMix64 rng(99);
  for (int trial = 0; trial < 50; ++trial) {
    const std::size_t n = 20 + rng.next() % 200;
    std::vector<double> w(n);
    const std::size_t jump = n / 4 + rng.next() % (n / 2);
    for (std::size_t i = 0; i < n; ++i)
      w[i] = (i >= jump ? 2.0 : 0.0) + rng.uniform01();
    CHECK(cusum_single_changepoint(w).index == brute_cusum(w));
  }
}

TEST_CASE("iterated cusum finds the last three staircase jumps") {
  const std::vector<double> w =
      staircase({0, 100, 300, 900}, {0.0, 1.0, 3.0, 9.0}, 1200);
  const ChangePointTriple t = last_three_changepoints_cusum(w);
  CHECK(t.tau1 == 100);
  CHECK(t.tau2 == 300);
  CHECK(t.tau3 == 900);
  CHECK(initial_scale(t) == doctest::Approx(3.0));

  CHECK_THROWS_AS(last_three_changepoints_cusum(std::vector<double>{1, 2, 3, 4, 5}),
                  degeneracy_error);
}

TEST_CASE("variance split scan") {
  // perfect step: both halves have zero variance exactly at the boundary
  std::vector<double> step;
  for (int i = 0; i < 10; ++i) step.push_back(0.0);
  for (int i = 0; i < 10; ++i) step.push_back(1.0);
  const std::vector<double> s = variance_split_scan(step, 2);
  REQUIRE(s.size() == 17); // z = 2..18
  std::size_t best = 0;
  for (std::size_t i = 1; i < s.size(); ++i)
    if (s[i] <= s[best]) best = i;
  CHECK(best + 2 == 10);
  CHECK(best + 2 == brute_split_argmin(step, 2));

  // constant input: identically zero objective
  const std::vector<double> flat(30, 4.0);
  for (double v : variance_split_scan(flat, 3)) CHECK(v == 0.0);

  // linear ramp: interior minimum near the midpoint
  std::vector<double> ramp(101);
  for (std::size_t i = 0; i < ramp.size(); ++i) ramp[i] = static_cast<double>(i);
  const std::size_t z_opt = brute_split_argmin(ramp, 5);
  const std::vector<double> sr = variance_split_scan(ramp, 5);
  std::size_t impl_best = 0;
  for (std::size_t i = 1; i < sr.size(); ++i)
    if (sr[i] <= sr[impl_best]) impl_best = i;
  CHECK(impl_best + 5 == z_opt);
  CHECK(z_opt > 25);
  CHECK(z_opt < 76);

  CHECK_THROWS_AS(variance_split_scan(std::vector<double>{1, 2, 3}, 2),
                  std::invalid_argument);
}

TEST_CASE("variance split objective properties") {
  SplitMix64 rng(5);
  std::vector<double> w(200);
  for (std::size_t i = 0; i < w.size(); ++i) w[i] = rng.uniform01() + (i > 120 ? 3.0 : 0.0);
  const std::vector<double> s = variance_split_scan(w, 10);
  for (double v : s) CHECK(v >= 0.0);
  // invariant under adding a constant
  std::vector<double> shifted = w;
  for (double& v : shifted) v += 1000.0;
  const std::vector<double> s2 = variance_split_scan(shifted, 10);
  REQUIRE(s2.size() == s.size());
  for (std::size_t i = 0; i < s.size(); ++i)
    CHECK(s2[i] == doctest::Approx(s[i]).epsilon(1e-9).scale(1.0 + s[i]));
}

TEST_CASE("variance split matches brute force on random mixtures") {
  SplitMix64 rng(123);
  for (int trial = 0; trial < 50; ++trial) {
    const std::size_t n = 30 + rng.next() % 150;
    std::vector<double> w(n);
    const std::size_t jump = n / 4 + rng.next() % (n / 2);
    for (std::size_t i = 0; i < n; ++i)
      w[i] = (i >= jump ? 1.5 : 0.0) + rng.uniform01();
    const std::vector<double> s = variance_split_scan(w, 5);
    std::size_t impl = 0;
    for (std::size_t i = 1; i < s.size(); ++i)
      if (s[i] <= s[impl]) impl = i;
    CHECK(impl + 5 == brute_split_argmin(w, 5));
  }
}

TEST_CASE("iterated variance split finds staircase boundaries") {
  const std::vector<double> w =
      staircase({0, 200, 500, 1400}, {0.0, 1.0, 3.0, 9.0}, 2000);
  const ChangePointTriple t = last_three_minima_variance_split(w, 30, 50);
  CHECK(t.tau1 == 200);
  CHECK(t.tau2 == 500);
  CHECK(t.tau3 == 1400);
  CHECK(t.method == ChangePointTriple::Method::variance_split);

  CHECK_THROWS_AS(last_three_minima_variance_split(std::vector<double>(70, 1.0), 30, 50),
                  degeneracy_error);
}

TEST_CASE("initial scale ratios") {
  const auto triple = [](std::size_t a, std::size_t b, std::size_t c) {
    return ChangePointTriple{a, b, c, ChangePointTriple::Method::cusum};
  };
  // realized index triples and the ratios they imply
  CHECK(initial_scale(triple(16354, 32745, 65480)) ==
        doctest::Approx(32735.0 / 16391.0).epsilon(1e-12));
  CHECK(initial_scale(triple(16354, 32745, 65480)) == doctest::Approx(1.9972).epsilon(1e-4));
  CHECK(initial_scale(triple(4056, 16345, 65498)) == doctest::Approx(3.9998).epsilon(1e-4));
  CHECK(initial_scale(triple(100, 300, 900)) == 3.0);

  // translation invariance
  CHECK(initial_scale(triple(1100, 1300, 1900)) == 3.0);

  CHECK_THROWS_AS(initial_scale(triple(10, 20, 25)), degeneracy_error); // ratio < 1
  CHECK_THROWS_AS(initial_scale(triple(20, 10, 30)), std::invalid_argument);
}

TEST_CASE("noiseless geometric staircase recovers the scale exactly") {
  // interval lengths 100, 300, 900, 2700 (ratio 3), jump sizes growing
  const std::vector<double> w = staircase({0, 100, 400, 1300}, {1.0, 2.0, 4.0, 8.0}, 4000);
  const ChangePointTriple cusum = last_three_changepoints_cusum(w);
  CHECK(initial_scale(cusum) == 3.0);
  const ChangePointTriple vs = last_three_minima_variance_split(w, 10, 20);
  CHECK(initial_scale(vs) == 3.0);
}
