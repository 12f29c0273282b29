#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <optional>
#include <variant>

#include "dsi/bench.hpp"
#include "dsi/changepoint.hpp"
#include "dsi/fbm.hpp"
#include "dsi/hurst.hpp"
#include "dsi/pipeline.hpp"
#include "dsi/scale_refine.hpp"
#include "dsi/sfbm.hpp"
#include "dsi/stats.hpp"

namespace py = pybind11;
using namespace pybind11::literals;

namespace {

dsi::SamplingGrid grid_from_args(const std::string& kind, double lambda, int T, int M, double C,
                                 int N) {
  if (kind == "geometric") return dsi::GeometricGrid{lambda, T, M};
  if (kind == "uniform") return dsi::UniformGrid{C, N};
  throw std::invalid_argument("grid kind must be 'geometric' or 'uniform'");
}

dsi::VarianceMode mode_from_name(const std::string& mode) {
  if (mode == "mean_square") return dsi::VarianceMode::mean_square;
  if (mode == "second_difference") return dsi::VarianceMode::second_difference;
  throw std::invalid_argument("variance mode must be 'mean_square' or 'second_difference'");
}

} // namespace

PYBIND11_MODULE(_dsi, m) {
  m.doc() = "Simulation and estimation for semi-selfsimilar processes";

  py::class_<dsi::TimeSeries>(m, "TimeSeries")
      .def(py::init<>())
      .def(py::init([](std::vector<double> times, std::vector<double> values) {
             dsi::TimeSeries x{std::move(times), std::move(values)};
             x.validate();
             return x;
           }),
           "times"_a, "values"_a)
      .def_readwrite("times", &dsi::TimeSeries::times)
      .def_readwrite("values", &dsi::TimeSeries::values)
      .def("__len__", [](const dsi::TimeSeries& x) { return x.size(); });

  py::class_<dsi::FbmPath>(m, "FbmPath")
      .def_readonly("hurst", &dsi::FbmPath::hurst)
      .def_readonly("grid_step", &dsi::FbmPath::grid_step)
      .def_readonly("values", &dsi::FbmPath::values);

  py::class_<dsi::ScaleIntervalVariances>(m, "ScaleIntervalVariances")
      .def_readonly("lambda_", &dsi::ScaleIntervalVariances::lambda)
      .def_readonly("interval_count", &dsi::ScaleIntervalVariances::interval_count)
      .def_readonly("variances", &dsi::ScaleIntervalVariances::variances)
      .def_readonly("counts", &dsi::ScaleIntervalVariances::counts)
      .def_readonly("dropped_boundary", &dsi::ScaleIntervalVariances::dropped_boundary)
      .def_readonly("outside", &dsi::ScaleIntervalVariances::outside);

  py::class_<dsi::HurstEstimate>(m, "HurstEstimate")
      .def_property_readonly("method",
                             [](const dsi::HurstEstimate& e) {
                               return dsi::hurst_method_name(e.method);
                             })
      .def_readonly("per_stride", &dsi::HurstEstimate::per_stride)
      .def_readonly("combined", &dsi::HurstEstimate::combined)
      .def_readonly("k_max", &dsi::HurstEstimate::k_max);

  // process simulation -------------------------------------------------------

  m.def("fgn_autocovariance", &dsi::fgn_autocovariance, "hurst"_a, "lag"_a);
  m.def("circulant_eigenvalues", &dsi::circulant_eigenvalues, "hurst"_a, "half_size"_a);
  m.def(
      "simulate_fbm",
      [](double hurst, std::size_t n_points, double grid_step, std::uint64_t seed) {
        return dsi::simulate_fbm(hurst, n_points, grid_step, seed);
      },
      "hurst"_a, "n_points"_a, "grid_step"_a = 1.0, "seed"_a = 0);
  m.def(
      "simulate_sfbm",
      [](double lambda, double hurst, double hurst_prime, const std::string& grid, int T, int M,
         double C, int N, std::uint64_t seed) {
        return dsi::simulate_sfbm(dsi::SfbmParams{lambda, hurst, hurst_prime},
                                  grid_from_args(grid, lambda, T, M, C, N), seed);
      },
      "lambda_"_a, "hurst"_a, "hurst_prime"_a, "grid"_a = "uniform", "T"_a = 20, "M"_a = 20,
      "C"_a = 100000.0, "N"_a = 100000, "seed"_a = 0);
  m.def(
      "simulate_path_on_grid",
      [](double hurst, const std::string& grid, double lambda, int T, int M, double C, int N,
         std::uint64_t seed) {
        return dsi::simulate_path_on_grid(hurst, grid_from_args(grid, lambda, T, M, C, N), seed);
      },
      "hurst"_a, "grid"_a = "uniform", "lambda_"_a = 2.0, "T"_a = 20, "M"_a = 20,
      "C"_a = 100000.0, "N"_a = 100000, "seed"_a = 0);
  m.def("lamperti_stationarize", &dsi::lamperti_stationarize, "x"_a, "hurst"_a, "alpha"_a);

  // increment statistics -----------------------------------------------------

  m.def(
      "increments",
      [](const dsi::TimeSeries& x, int order) {
        const dsi::IncrementSeries s = dsi::increments(x, order);
        return py::make_tuple(s.values, s.source_times);
      },
      "x"_a, "order"_a = 1, "Returns (values, source_times)");
  m.def(
      "difference",
      [](const std::vector<double>& x, int order) { return dsi::difference(x, order); },
      "x"_a, "order"_a = 1);
  m.def(
      "sample_variance",
      [](const std::vector<double>& v) { return dsi::sample_variance(v); }, "v"_a);
  m.def(
      "moving_sample_variance",
      [](const std::vector<double>& y, int b_star) {
        return dsi::moving_sample_variance(std::span<const double>(y), b_star);
      },
      "y"_a, "b_star"_a = 10);
  m.def(
      "moving_average",
      [](const std::vector<double>& v, int d_star) { return dsi::moving_average(v, d_star); },
      "v"_a, "d_star"_a = 20);
  m.def(
      "cumulative_sum",
      [](const std::vector<double>& w) { return dsi::cumulative_sum(w); }, "w"_a);
  m.def(
      "scale_interval_variances",
      [](const dsi::TimeSeries& x, double candidate_lambda, const std::string& mode) {
        return dsi::scale_interval_variances(x, candidate_lambda, mode_from_name(mode));
      },
      "x"_a, "candidate_lambda"_a, "mode"_a = "mean_square");

  // change-point initializers ------------------------------------------------

  m.def(
      "cusum_single_changepoint",
      [](const std::vector<double>& w) {
        const dsi::CusumPoint p = dsi::cusum_single_changepoint(w);
        return py::make_tuple(p.index, p.statistic, p.low_confidence);
      },
      "w"_a, "Returns (index, statistic, low_confidence)");
  m.def(
      "last_three_changepoints_cusum",
      [](const std::vector<double>& w) {
        const dsi::ChangePointTriple t = dsi::last_three_changepoints_cusum(w);
        return py::make_tuple(t.tau1, t.tau2, t.tau3);
      },
      "w"_a);
  m.def(
      "variance_split_scan",
      [](const std::vector<double>& w, std::size_t l_star) {
        return dsi::variance_split_scan(w, l_star);
      },
      "w"_a, "l_star"_a = 30);
  m.def(
      "last_three_minima_variance_split",
      [](const std::vector<double>& w, std::size_t l_star, std::size_t j_star) {
        const dsi::ChangePointTriple t = dsi::last_three_minima_variance_split(w, l_star, j_star);
        return py::make_tuple(t.tau1, t.tau2, t.tau3);
      },
      "w"_a, "l_star"_a = 30, "j_star"_a = 50);
  m.def(
      "initial_scale",
      [](std::size_t tau1, std::size_t tau2, std::size_t tau3) {
        return dsi::initial_scale(dsi::ChangePointTriple{
            tau1, tau2, tau3, dsi::ChangePointTriple::Method::variance_split});
      },
      "tau1"_a, "tau2"_a, "tau3"_a);

  // scale refinement ---------------------------------------------------------

  m.def(
      "candidate_grid",
      [](double lambda0, double half_width, int m_points) {
        return dsi::candidate_grid(lambda0, half_width, m_points).points;
      },
      "lambda0"_a, "half_width"_a, "m"_a = 1000);
  m.def(
      "trailing_interval_count",
      [](const dsi::TimeSeries& x, double lambda, double coverage) {
        const dsi::TrailingCoverage tc = dsi::trailing_interval_count(x, lambda, coverage);
        return py::make_tuple(tc.j, tc.attained, tc.fraction);
      },
      "x"_a, "lambda_"_a, "coverage"_a = 0.95, "Returns (j, attained, fraction)");
  m.def(
      "scale_objective_R",
      [](const dsi::TimeSeries& x, double a, int j, const std::string& mode) {
        return dsi::scale_objective_R(x, a, j, mode_from_name(mode));
      },
      "x"_a, "a"_a, "j"_a, "mode"_a = "mean_square");
  m.def(
      "refine_scale",
      [](const dsi::TimeSeries& x, const std::vector<double>& candidates, int j, int k_star,
         const std::string& mode, int threads) {
        dsi::CandidateGrid grid{candidates};
        const dsi::RefineResult r =
            dsi::refine_scale(x, grid, j, k_star, mode_from_name(mode), threads);
        std::vector<double> a, rr, vv;
        for (const auto& t : r.trace) {
          a.push_back(t.a);
          rr.push_back(t.r);
          vv.push_back(t.v);
        }
        return py::make_tuple(r.lambda_star, r.degenerate_flat,
                              py::make_tuple(a, rr, vv));
      },
      "x"_a, "candidates"_a, "j"_a, "k_star"_a = 20, "mode"_a = "mean_square", "threads"_a = 0,
      "Returns (lambda_star, degenerate_flat, (a, R, V))");
  m.def(
      "mu_ratios",
      [](const dsi::TimeSeries& x, double lambda_star, int j, const std::string& mode) {
        return dsi::mu_ratios(x, lambda_star, j, mode_from_name(mode));
      },
      "x"_a, "lambda_star"_a, "j"_a, "mode"_a = "mean_square");
  m.def(
      "weighted_mu",
      [](const std::vector<double>& mu, double lambda_star) {
        return dsi::weighted_mu(mu, lambda_star);
      },
      "mu"_a, "lambda_star"_a);
  m.def("estimate_H_minus_Hprime", &dsi::estimate_H_minus_Hprime, "mu_bar_star"_a,
        "lambda_star"_a);
  m.def("rescale_to_fbm", &dsi::rescale_to_fbm, "x"_a, "lambda_star"_a, "h_minus_hprime"_a);

  // Hurst estimation ---------------------------------------------------------

  m.def(
      "stride_subsample",
      [](const std::vector<double>& x, std::size_t k) { return dsi::stride_subsample(x, k); },
      "x"_a, "k"_a);
  m.def(
      "hurst_ratio",
      [](const std::vector<double>& x, int order, int k_max) {
        return dsi::hurst_ratio(x, order, k_max);
      },
      "x"_a, "order"_a = 1, "k_max"_a = 5);
  m.def(
      "hurst_auto",
      [](const std::vector<double>& x, int k_max) {
        const dsi::HurstAutoResult r = dsi::hurst_auto(x, k_max);
        return py::make_tuple(r.estimate, r.order1_combined, r.used_order2);
      },
      "x"_a, "k_max"_a = 5, "Returns (estimate, order1_screen, used_order2)");
  m.def(
      "hurst_quadratic_variation",
      [](const std::vector<double>& x) { return dsi::hurst_quadratic_variation(x); }, "x"_a);

  // pipelines and benchmark --------------------------------------------------

  m.def(
      "estimate_scale",
      [](const dsi::TimeSeries& x, int b_star, int d_star, std::size_t l_star,
         std::size_t j_star, int k_star, double coverage, double grid_half_width,
         int grid_points, const std::string& mode, const std::string& initializer,
         int threads) {
        dsi::EstimatorKnobs k;
        k.b_star = b_star;
        k.d_star = d_star;
        k.l_star = l_star;
        k.j_star = j_star;
        k.k_star = k_star;
        k.coverage = coverage;
        k.grid_half_width = grid_half_width;
        k.grid_points = grid_points;
        k.mode = mode_from_name(mode);
        k.initializer = initializer;
        k.threads = threads;
        const dsi::ScaleReport r = dsi::estimate_scale(x, k);
        py::dict d;
        d["lambda0"] = r.lambda0;
        d["lambda0_cusum"] = r.cusum.ok ? py::object(py::float_(r.cusum.lambda0))
                                        : py::object(py::none());
        d["lambda0_variance_split"] = r.variance_split.ok
                                          ? py::object(py::float_(r.variance_split.lambda0))
                                          : py::object(py::none());
        d["j"] = r.j;
        d["coverage_fraction"] = r.coverage_fraction;
        d["lambda_star"] = r.lambda_star;
        d["degenerate_flat"] = r.degenerate_flat;
        d["mu_k"] = r.mu_k;
        d["mu_bar_star"] = r.mu_bar_star;
        d["h_minus_hprime"] = r.h_minus_hprime;
        d["interval_count"] = r.interval_count;
        return d;
      },
      "x"_a, "b_star"_a = 10, "d_star"_a = 20, "l_star"_a = 30, "j_star"_a = 50, "k_star"_a = 20,
      "coverage"_a = 0.95, "grid_half_width"_a = 0.0, "grid_points"_a = 1000,
      "mode"_a = "mean_square", "initializer"_a = "variance_split", "threads"_a = 0);
  m.def(
      "estimate_hurst",
      [](const dsi::TimeSeries& x, const std::string& method, py::object prior_lambda,
         py::object prior_hhp, int k_max) {
        std::optional<dsi::HurstPrior> prior;
        if (!prior_lambda.is_none() && !prior_hhp.is_none())
          prior = dsi::HurstPrior{prior_lambda.cast<double>(), prior_hhp.cast<double>()};
        dsi::EstimatorKnobs k;
        k.k_max = k_max;
        const dsi::HurstReport r = dsi::estimate_hurst(x, method, prior, k);
        py::dict d;
        d["method"] = dsi::hurst_method_name(r.estimate.method);
        d["hurst_prime"] = r.hurst_prime;
        d["per_stride"] = r.estimate.per_stride;
        if (r.hurst_total) d["hurst"] = *r.hurst_total;
        if (r.method == "auto") {
          d["order1_screen"] = r.order1_screen;
          d["used_order2"] = r.used_order2;
        }
        return d;
      },
      "x"_a, "method"_a = "auto", "prior_lambda"_a = py::none(), "prior_hhp"_a = py::none(),
      "k_max"_a = 5);
  m.def(
      "run_bench",
      [](const std::vector<double>& hursts, std::size_t n, int reps,
         const std::vector<std::string>& methods, std::uint64_t seed, int k_max, int threads) {
        py::list rows;
        for (const auto& r : dsi::run_bench(hursts, n, reps, methods, seed, k_max, threads)) {
          py::dict d;
          d["true_H"] = r.true_hurst;
          d["method"] = r.method;
          d["N"] = r.path_length;
          d["repetitions"] = r.repetitions;
          d["mean_estimate"] = r.mean_estimate;
          d["bias"] = r.bias;
          d["variance"] = r.variance;
          d["mse"] = r.mse;
          rows.append(d);
        }
        return rows;
      },
      "hurst_values"_a, "n"_a = 10000, "repetitions"_a = 100,
      "methods"_a = std::vector<std::string>{"ratio1", "ratio2", "qv"}, "seed"_a = 0,
      "k_max"_a = 5, "threads"_a = 0);

#ifdef VERSION_INFO
  m.attr("__version__") = VERSION_INFO;
#else
  m.attr("__version__") = "dev";
#endif
}
