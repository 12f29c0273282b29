#include "dsi/changepoint.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "dsi/errors.hpp"
#include "dsi/numeric.hpp"

namespace dsi {

CusumPoint cusum_single_changepoint(std::span<const double> w) {
  const std::size_t n = w.size();
  if (n < 4) throw std::invalid_argument("cusum_single_changepoint: need at least 4 values");

  const double m = mean(w);
  double best = -1.0;
  std::size_t best_k = 0;
  double scale = 0.0;
  CompensatedSum prefix;
  for (std::size_t k = 0; k + 1 < n; ++k) { // split after k; k = n-1 is no split
    prefix.add(w[k] - m);
    const double stat = std::abs(prefix.value());
    scale = std::max(scale, std::abs(w[k]));
    if (stat > best) {
      best = stat;
      best_k = k;
    }
  }
  CusumPoint out;
  out.index = best_k + 1;
  out.statistic = best;
  out.low_confidence = best <= 1e-12 * static_cast<double>(n) * std::max(1.0, scale);
  return out;
}

ChangePointTriple last_three_changepoints_cusum(std::span<const double> w) {
  std::vector<std::size_t> found;
  std::span<const double> cur = w;
  for (int round = 0; round < 3; ++round) {
    if (cur.size() < 4) {
      std::string msg = "last_three_changepoints_cusum: only " + std::to_string(found.size()) +
                        " change point(s) detectable (found:";
      for (std::size_t idx : found) msg += " " + std::to_string(idx);
      msg += ")";
      throw degeneracy_error(msg);
    }
    const CusumPoint cp = cusum_single_changepoint(cur);
    found.push_back(cp.index);
    cur = cur.first(cp.index); // delete from the change point to the end
  }
  return ChangePointTriple{found[2], found[1], found[0], ChangePointTriple::Method::cusum};
}

std::vector<double> variance_split_scan(std::span<const double> w, std::size_t l_star) {
  const std::size_t n = w.size();
  if (l_star < 2) throw std::invalid_argument("variance_split_scan: margin must be >= 2");
  if (n <= 2 * l_star)
    throw std::invalid_argument("variance_split_scan: sequence no longer than twice the margin");

  // Prefix sums of globally centered values keep the textbook identity
  // sum (w - mean_part)^2 = sum w'^2 - z * mean'^2 well conditioned.
  const double gmean = mean(w);
  std::vector<double> ps(n + 1, 0.0), ps2(n + 1, 0.0);
  CompensatedSum s, s2;
  for (std::size_t i = 0; i < n; ++i) {
    const double c = w[i] - gmean;
    s.add(c);
    s2.add(c * c);
    ps[i + 1] = s.value();
    ps2[i + 1] = s2.value();
  }

  std::vector<double> out;
  out.reserve(n - 2 * l_star + 1);
  for (std::size_t z = l_star; z <= n - l_star; ++z) {
    const double nz = static_cast<double>(z);
    const double mz = static_cast<double>(n - z);
    const double m1 = ps[z] / nz;
    const double m2 = (ps[n] - ps[z]) / mz;
    const double left = std::max(0.0, ps2[z] / nz - m1 * m1);
    const double right = std::max(0.0, (ps2[n] - ps2[z]) / mz - m2 * m2);
    out.push_back(left + right);
  }
  return out;
}

namespace {

// argmin of S over z = l_star..n-l_star, ties to the largest z.
std::size_t argmin_split(std::span<const double> w, std::size_t l_star) {
  const std::vector<double> s = variance_split_scan(w, l_star);
  std::size_t best = 0;
  for (std::size_t i = 1; i < s.size(); ++i) {
    if (s[i] <= s[best]) best = i;
  }
  return best + l_star;
}

} // namespace

ChangePointTriple last_three_minima_variance_split(std::span<const double> w,
                                                   std::size_t l_star, std::size_t j_star) {
  std::vector<std::size_t> found;
  std::span<const double> cur = w;
  for (int round = 0; round < 3; ++round) {
    if (cur.size() <= 2 * l_star) {
      std::string msg = "last_three_minima_variance_split: only " +
                        std::to_string(found.size()) + " minima detectable (found:";
      for (std::size_t idx : found) msg += " " + std::to_string(idx);
      msg += ")";
      throw degeneracy_error(msg);
    }
    const std::size_t iz = argmin_split(cur, l_star);
    found.push_back(iz);
    if (iz <= j_star) {
      std::string msg = "last_three_minima_variance_split: truncation below change point " +
                        std::to_string(iz) + " leaves no data";
      throw degeneracy_error(msg);
    }
    cur = cur.first(iz - j_star); // omit samples from i - j* to the end
  }
  return ChangePointTriple{found[2], found[1], found[0],
                           ChangePointTriple::Method::variance_split};
}

double initial_scale(const ChangePointTriple& cp) {
  if (!(cp.tau1 < cp.tau2 && cp.tau2 < cp.tau3))
    throw std::invalid_argument("initial_scale: change points must be strictly increasing");
  const double ratio = static_cast<double>(cp.tau3 - cp.tau2) /
                       static_cast<double>(cp.tau2 - cp.tau1);
  if (!(ratio > 1.0))
    throw degeneracy_error("initial_scale: interval-length ratio " + std::to_string(ratio) +
                           " is not an expansion scale (> 1 required)");
  return ratio;
}

} // namespace dsi
