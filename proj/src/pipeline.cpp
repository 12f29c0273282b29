#include "dsi/pipeline.hpp"

#include <cmath>
#include <stdexcept>

#include "dsi/errors.hpp"

namespace dsi {

namespace {

template <typename F>
auto stage(const char* name, F&& f) {
  try {
    return f();
  } catch (const degeneracy_error& e) {
    throw degeneracy_error(std::string(name) + ": " + e.what());
  } catch (const std::invalid_argument& e) {
    throw std::invalid_argument(std::string(name) + ": " + e.what());
  }
}

InitializerOutcome run_initializer(bool use_cusum, std::span<const double> w) {
  InitializerOutcome out;
  try {
    const ChangePointTriple cp = use_cusum ? last_three_changepoints_cusum(w)
                                           : last_three_minima_variance_split(w);
    out.tau1 = cp.tau1;
    out.tau2 = cp.tau2;
    out.tau3 = cp.tau3;
    out.lambda0 = initial_scale(cp);
    out.ok = true;
  } catch (const std::exception& e) {
    out.error = e.what();
  }
  return out;
}

} // namespace

ScaleReport estimate_scale(const TimeSeries& x, const EstimatorKnobs& knobs) {
  x.validate();
  ScaleReport rep;
  rep.knobs = knobs;
  rep.sample_count = x.size();

  // Gate on the combined window requirements before doing any work.
  const std::size_t need = static_cast<std::size_t>(knobs.b_star) +
                           static_cast<std::size_t>(knobs.d_star) + 2 * knobs.l_star + 2;
  if (x.size() < need)
    throw std::invalid_argument("estimate_scale: input of " + std::to_string(x.size()) +
                                " samples is shorter than b* + d* + 2l* + 2 = " +
                                std::to_string(need));

  const IncrementSeries incr = stage("increments", [&] { return increments(x, 1); });
  const std::vector<double> v =
      stage("moving-sample-variance", [&] { return moving_sample_variance(incr, knobs.b_star); });
  rep.w_trace = stage("moving-average", [&] { return moving_average(v, knobs.d_star); });
  rep.u_trace = stage("cumulative-sum", [&] { return cumulative_sum(rep.w_trace); });
  rep.split_trace =
      stage("variance-split-scan", [&] { return variance_split_scan(rep.w_trace, knobs.l_star); });

  rep.cusum = run_initializer(true, rep.w_trace);
  rep.variance_split = run_initializer(false, rep.w_trace);

  const bool want_cusum = knobs.initializer == "cusum";
  if (!want_cusum && knobs.initializer != "variance_split")
    throw std::invalid_argument("estimate_scale: unknown initializer '" + knobs.initializer +
                                "' (expected cusum or variance_split)");
  const InitializerOutcome& chosen = want_cusum ? rep.cusum : rep.variance_split;
  if (!chosen.ok)
    throw degeneracy_error("initializer-" + knobs.initializer + ": " + chosen.error);
  rep.lambda0 = chosen.lambda0;

  const TrailingCoverage tc = stage(
      "trailing-coverage", [&] { return trailing_interval_count(x, rep.lambda0, knobs.coverage); });
  rep.j = tc.j;
  rep.coverage_fraction = tc.fraction;
  rep.coverage_attained = tc.attained;

  const double half_width =
      knobs.grid_half_width > 0.0 ? knobs.grid_half_width : 0.025 * rep.lambda0;
  const CandidateGrid grid = stage(
      "candidate-grid", [&] { return candidate_grid(rep.lambda0, half_width, knobs.grid_points); });

  const RefineResult rr = stage("refine-scale", [&] {
    return refine_scale(x, grid, rep.j, knobs.k_star, knobs.mode, knobs.threads);
  });
  rep.lambda_star = rr.lambda_star;
  rep.degenerate_flat = rr.degenerate_flat;
  rep.objective_trace = rr.trace;

  rep.mu_k = stage("mu-ratios", [&] { return mu_ratios(x, rep.lambda_star, rep.j, knobs.mode); });
  rep.mu_bar_star = stage("weighted-mu", [&] { return weighted_mu(rep.mu_k, rep.lambda_star); });
  rep.h_minus_hprime = stage("h-minus-hprime", [&] {
    return estimate_H_minus_Hprime(rep.mu_bar_star, rep.lambda_star);
  });

  const ScaleIntervalVariances siv = stage(
      "interval-variances", [&] { return scale_interval_variances(x, rep.lambda_star, knobs.mode); });
  rep.interval_count = siv.interval_count;
  rep.interval_counts = siv.counts;
  rep.interval_variances = siv.variances;
  return rep;
}

HurstReport estimate_hurst(const TimeSeries& x, const std::string& method,
                           const std::optional<HurstPrior>& prior, const EstimatorKnobs& knobs) {
  x.validate();
  HurstReport rep;
  rep.knobs = knobs;
  rep.method = method;
  rep.prior = prior;

  const TimeSeries* input = &x;
  TimeSeries rescaled;
  if (prior) {
    rescaled = stage("rescale-to-fbm",
                     [&] { return rescale_to_fbm(x, prior->lambda_star, prior->h_minus_hprime); });
    input = &rescaled;
  }
  const std::span<const double> values(input->values);
  rep.sparse_subsample = hurst_subsample_sparse(values.size(), knobs.k_max);

  if (method == "auto") {
    const HurstAutoResult r = stage("hurst-auto", [&] { return hurst_auto(values, knobs.k_max); });
    rep.estimate = r.estimate;
    rep.order1_screen = r.order1_combined;
    rep.used_order2 = r.used_order2;
  } else if (method == "ratio1") {
    rep.estimate = stage("hurst-ratio1", [&] { return hurst_ratio(values, 1, knobs.k_max); });
  } else if (method == "ratio2") {
    rep.estimate = stage("hurst-ratio2", [&] { return hurst_ratio(values, 2, knobs.k_max); });
  } else if (method == "qv") {
    rep.estimate = stage("hurst-qv", [&] { return hurst_quadratic_variation(values); });
  } else {
    throw std::invalid_argument("estimate_hurst: unknown method '" + method +
                                "' (expected auto, ratio1, ratio2 or qv)");
  }
  rep.hurst_prime = rep.estimate.combined;
  if (prior) rep.hurst_total = rep.hurst_prime + prior->h_minus_hprime;
  return rep;
}

} // namespace dsi
