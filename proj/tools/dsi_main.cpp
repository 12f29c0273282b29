// dsi: simulate semi-selfsimilar sample paths and estimate their scale and
// Hurst parameters. Subcommands: simulate, estimate-scale, estimate-hurst,
// bench. Exit codes: 0 success, 2 configuration error, 3 numerical
// degeneracy, 4 I/O error.

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "dsi/bench.hpp"
#include "dsi/csv.hpp"
#include "dsi/errors.hpp"
#include "dsi/fbm.hpp"
#include "dsi/pipeline.hpp"
#include "dsi/sfbm.hpp"
#include "dsi/stats.hpp"

namespace {

using nlohmann::json;

struct SimSpec {
  double lambda = 0.0; // 0 = plain fBm
  double hurst = 0.5;
  double hurst_prime = 0.5;
  std::string grid_kind = "uniform";
  int points_per_interval = 20; // --T
  int intervals = 20;           // --M
  double end_time = 100000.0;   // --C
  int steps = 100000;           // --N
  std::uint64_t seed = 0;
};

struct EstimateInput {
  std::string in_path; // CSV input; empty = inline simulation
  bool sim_given = false;
  SimSpec sim;
};

dsi::SamplingGrid make_grid(const SimSpec& s) {
  if (s.grid_kind == "geometric") {
    if (!(s.lambda > 1.0))
      throw std::invalid_argument("a geometric grid needs --lambda > 1");
    return dsi::GeometricGrid{s.lambda, s.points_per_interval, s.intervals};
  }
  if (s.grid_kind == "uniform") return dsi::UniformGrid{s.end_time, s.steps};
  throw std::invalid_argument("--grid must be geometric or uniform");
}

dsi::TimeSeries simulate_series(const SimSpec& s) {
  const dsi::SamplingGrid grid = make_grid(s);
  if (s.lambda > 0.0) {
    return dsi::simulate_sfbm(dsi::SfbmParams{s.lambda, s.hurst, s.hurst_prime}, grid, s.seed);
  }
  return dsi::simulate_path_on_grid(s.hurst, grid, s.seed);
}

dsi::TimeSeries load_input(const EstimateInput& in) {
  if (!in.in_path.empty()) return dsi::read_series_csv(in.in_path);
  if (!in.sim_given)
    throw std::invalid_argument(
        "no input: give --in <csv> or an inline simulation spec (--hurst ...)");
  return simulate_series(in.sim);
}

json grid_json(const SimSpec& s) {
  json g;
  g["kind"] = s.grid_kind;
  if (s.grid_kind == "geometric") {
    g["T"] = s.points_per_interval;
    g["M"] = s.intervals;
    g["lambda"] = s.lambda;
  } else {
    g["C"] = s.end_time;
    g["N"] = s.steps;
  }
  return g;
}

json input_json(const EstimateInput& in) {
  json j;
  if (!in.in_path.empty()) {
    j["csv"] = in.in_path;
  } else {
    j["simulation"] = {{"lambda", in.sim.lambda},
                       {"hurst", in.sim.hurst},
                       {"hurst_prime", in.sim.hurst_prime},
                       {"seed", in.sim.seed},
                       {"grid", grid_json(in.sim)}};
  }
  return j;
}

json knobs_json(const dsi::EstimatorKnobs& k) {
  return json{{"b_star", k.b_star},
              {"d_star", k.d_star},
              {"l_star", k.l_star},
              {"j_star", k.j_star},
              {"k_star", k.k_star},
              {"k_max", k.k_max},
              {"coverage", k.coverage},
              {"grid_half_width", k.grid_half_width},
              {"grid_points", k.grid_points},
              {"variance_mode",
               k.mode == dsi::VarianceMode::mean_square ? "mean_square" : "second_difference"},
              // threads is scheduling only; results are thread-count invariant
              {"initializer", k.initializer}};
}

json initializer_json(const dsi::InitializerOutcome& o) {
  json j;
  j["ok"] = o.ok;
  if (o.ok) {
    j["change_points"] = {o.tau1, o.tau2, o.tau3};
    j["lambda0"] = o.lambda0;
  } else {
    j["error"] = o.error;
  }
  return j;
}

void write_text(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw dsi::io_error("cannot open for writing: " + path);
  out << text;
  if (!out) throw dsi::io_error("write failed: " + path);
}

// Returns the --hurst option so callers can tell whether an inline
// simulation spec was actually given.
CLI::Option* add_sim_options(CLI::App* cmd, SimSpec& s, bool hurst_required) {
  cmd->add_option("--lambda", s.lambda, "Scale parameter (> 1); omit for plain fBm")
      ->envname("DSI_LAMBDA");
  CLI::Option* hurst = cmd->add_option("--hurst", s.hurst, "Hurst index H of the process")
                           ->envname("DSI_HURST");
  if (hurst_required) hurst->required();
  cmd->add_option("--hurst-prime", s.hurst_prime,
                  "Hurst index H' of the underlying fBm (default 0.5)")
      ->envname("DSI_HURST_PRIME");
  cmd->add_option("--grid", s.grid_kind, "Sampling grid: uniform | geometric")
      ->check(CLI::IsMember({"uniform", "geometric"}))
      ->envname("DSI_GRID");
  cmd->add_option("--T", s.points_per_interval, "Geometric grid: points per scale interval");
  cmd->add_option("--M", s.intervals, "Geometric grid: number of scale intervals");
  cmd->add_option("--C", s.end_time, "Uniform grid: end time of [1, C]");
  cmd->add_option("--N", s.steps, "Uniform grid: number of steps (N+1 samples)");
  cmd->add_option("--seed", s.seed, "Random seed")->envname("DSI_SEED");
  return hurst;
}

void add_knob_options(CLI::App* cmd, dsi::EstimatorKnobs& k) {
  cmd->add_option("--b-star", k.b_star, "Moving sample variance window");
  cmd->add_option("--d-star", k.d_star, "Moving average window");
  cmd->add_option("--l-star", k.l_star, "Variance-split scan margin");
  cmd->add_option("--j-star", k.j_star, "Back-off after each variance-split minimum");
  cmd->add_option("--k-star", k.k_star, "Refinement split margin");
  cmd->add_option("--kmax", k.k_max, "Largest stride for the Hurst ratio methods");
  cmd->add_option("--coverage", k.coverage, "Trailing-interval coverage target");
  cmd->add_option("--grid-width", k.grid_half_width,
                  "Candidate grid half width (0 = 2.5% of lambda0)");
  cmd->add_option("--grid-points", k.grid_points, "Number of scale candidates");
  cmd->add_option("--threads", k.threads, "Worker threads (0 = hardware)")
      ->envname("DSI_THREADS");
}

int run_simulate(const SimSpec& s, const std::string& out_path, const std::string& msv_out,
                 const dsi::EstimatorKnobs& knobs) {
  const dsi::TimeSeries x = simulate_series(s);
  dsi::write_series_csv(out_path, x);
  if (!msv_out.empty()) {
    const dsi::IncrementSeries incr = dsi::increments(x, 1);
    const std::vector<double> v = dsi::moving_sample_variance(incr, knobs.b_star);
    const std::vector<double> w = dsi::moving_average(v, knobs.d_star);
    const std::vector<double> u = dsi::cumulative_sum(w);
    std::vector<double> idx(v.size());
    for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = static_cast<double>(i);
    dsi::write_columns_csv(msv_out, {"i", "msv", "moving_average", "cumulative_sum"},
                           {idx, v, w, u});
  }
  std::cout << "wrote " << x.size() << " samples to " << out_path << "\n";
  return 0;
}

int run_estimate_scale(const EstimateInput& in, dsi::EstimatorKnobs knobs,
                       const std::string& out_path, const std::string& trace_dir) {
  const dsi::TimeSeries x = load_input(in);
  const dsi::ScaleReport rep = dsi::estimate_scale(x, knobs);

  json j;
  j["command"] = "estimate-scale";
  j["input"] = input_json(in);
  j["config"] = knobs_json(rep.knobs);
  j["sample_count"] = rep.sample_count;
  j["initializers"] = {{"cusum", initializer_json(rep.cusum)},
                       {"variance_split", initializer_json(rep.variance_split)}};
  j["lambda0"] = rep.lambda0;
  j["j"] = rep.j;
  j["coverage_fraction"] = rep.coverage_fraction;
  j["coverage_attained"] = rep.coverage_attained;
  j["lambda_star"] = rep.lambda_star;
  j["degenerate_flat"] = rep.degenerate_flat;
  j["mu_k"] = rep.mu_k;
  j["mu_bar_star"] = rep.mu_bar_star;
  j["h_minus_hprime"] = rep.h_minus_hprime;
  j["interval_count"] = rep.interval_count;
  j["interval_sample_counts"] = rep.interval_counts;
  j["interval_variances"] = rep.interval_variances;

  const std::string text = j.dump(2) + "\n";
  if (out_path.empty()) {
    std::cout << text;
  } else {
    write_text(out_path, text);
    std::cout << "lambda0=" << dsi::format_double(rep.lambda0)
              << " lambda_star=" << dsi::format_double(rep.lambda_star)
              << " h_minus_hprime=" << dsi::format_double(rep.h_minus_hprime) << "\n"
              << "report written to " << out_path << "\n";
  }

  if (!trace_dir.empty()) {
    std::filesystem::create_directories(trace_dir);
    const auto p = [&](const char* name) {
      return (std::filesystem::path(trace_dir) / name).string();
    };
    std::vector<double> wi(rep.w_trace.size());
    for (std::size_t i = 0; i < wi.size(); ++i) wi[i] = static_cast<double>(i);
    dsi::write_columns_csv(p("w_u.csv"), {"i", "w", "u"}, {wi, rep.w_trace, rep.u_trace});
    std::vector<double> z(rep.split_trace.size());
    for (std::size_t i = 0; i < z.size(); ++i)
      z[i] = static_cast<double>(i + rep.knobs.l_star);
    dsi::write_columns_csv(p("s_z.csv"), {"z", "s"}, {z, rep.split_trace});
    std::vector<double> a, r, v;
    for (const auto& t : rep.objective_trace) {
      a.push_back(t.a);
      r.push_back(t.r);
      v.push_back(t.v);
    }
    dsi::write_columns_csv(p("objective.csv"), {"a", "r", "v"}, {a, r, v});
  }
  return 0;
}

int run_estimate_hurst(const EstimateInput& in, const dsi::EstimatorKnobs& knobs,
                       const std::string& method, std::optional<double> prior_lambda,
                       std::optional<double> prior_hhp, const std::string& out_path) {
  if (prior_lambda.has_value() != prior_hhp.has_value())
    throw CLI::ValidationError("--prior-lambda and --prior-hhp must be given together");
  const dsi::TimeSeries x = load_input(in);
  std::optional<dsi::HurstPrior> prior;
  if (prior_lambda) prior = dsi::HurstPrior{*prior_lambda, *prior_hhp};

  const dsi::HurstReport rep = dsi::estimate_hurst(x, method, prior, knobs);
  if (rep.sparse_subsample)
    std::cerr << "warning: sparsest sub-sample has fewer than 30 points; "
                 "estimates may be unstable (reduce --kmax or use more samples)\n";

  json j;
  j["command"] = "estimate-hurst";
  j["input"] = input_json(in);
  j["config"] = knobs_json(rep.knobs);
  j["method"] = rep.method;
  if (prior) j["prior"] = {{"lambda_star", prior->lambda_star},
                           {"h_minus_hprime", prior->h_minus_hprime}};
  json per;
  for (const auto& [k, h] : rep.estimate.per_stride) per.push_back({{"k", k}, {"hurst", h}});
  j["estimate"] = {{"method", dsi::hurst_method_name(rep.estimate.method)},
                   {"per_stride", per},
                   {"combined", rep.estimate.combined}};
  if (rep.method == "auto") {
    j["order1_screen"] = rep.order1_screen;
    j["used_order2"] = rep.used_order2;
  }
  j["sparse_subsample"] = rep.sparse_subsample;
  j["hurst_prime"] = rep.hurst_prime;
  if (rep.hurst_total) j["hurst"] = *rep.hurst_total;

  const std::string text = j.dump(2) + "\n";
  if (out_path.empty()) {
    std::cout << text;
  } else {
    write_text(out_path, text);
    std::cout << "hurst_prime=" << dsi::format_double(rep.hurst_prime);
    if (rep.hurst_total) std::cout << " hurst=" << dsi::format_double(*rep.hurst_total);
    std::cout << "\nreport written to " << out_path << "\n";
  }
  return 0;
}

int run_bench_cmd(const std::vector<double>& hursts, std::size_t n, int reps,
                  const std::vector<std::string>& methods, std::uint64_t seed, int k_max,
                  int threads, const std::string& out_path) {
  const std::vector<dsi::BenchRow> rows = dsi::run_bench(hursts, n, reps, methods, seed,
                                                         k_max, threads);
  if (out_path.empty()) {
    std::cout << "true_H,method,N,repetitions,mean_estimate,bias,variance,mse\n";
    for (const auto& r : rows)
      std::cout << dsi::format_double(r.true_hurst) << ',' << r.method << ',' << r.path_length
                << ',' << r.repetitions << ',' << dsi::format_double(r.mean_estimate) << ','
                << dsi::format_double(r.bias) << ',' << dsi::format_double(r.variance) << ','
                << dsi::format_double(r.mse) << '\n';
  } else {
    dsi::write_bench_csv(out_path, rows);
    std::cout << "wrote " << rows.size() << " rows to " << out_path << "\n";
  }
  return 0;
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"Simulation and estimation for semi-selfsimilar processes"};
  app.require_subcommand(1);
  app.set_config("--config", "", "Read options from a key=value file");
  app.footer("Every option can also be set through DSI_* environment variables "
             "(e.g. DSI_SEED); flags override file and environment values.");

  // simulate
  SimSpec sim_spec;
  dsi::EstimatorKnobs sim_knobs;
  std::string sim_out, sim_msv_out;
  auto* sim = app.add_subcommand("simulate", "Generate a sample path CSV");
  add_sim_options(sim, sim_spec, true);
  sim->add_option("--out", sim_out, "Output CSV path")->required()->envname("DSI_OUT");
  sim->add_option("--msv-out", sim_msv_out,
                  "Companion CSV with the moving-variance traces (V, W, U)");
  sim->add_option("--b-star", sim_knobs.b_star, "MSV window for --msv-out");
  sim->add_option("--d-star", sim_knobs.d_star, "Moving average window for --msv-out");

  // estimate-scale
  EstimateInput es_in;
  dsi::EstimatorKnobs es_knobs;
  std::string es_out, es_traces;
  auto* es = app.add_subcommand("estimate-scale", "Estimate the scale parameter");
  es->add_option("--in", es_in.in_path, "Input time,value CSV (omit to simulate inline)");
  CLI::Option* es_hurst = add_sim_options(es, es_in.sim, false);
  add_knob_options(es, es_knobs);
  es->add_option("--method", es_knobs.initializer,
                 "Initializer: variance_split (default) | cusum")
      ->check(CLI::IsMember({"variance_split", "cusum"}));
  es->add_option("--out", es_out, "Report JSON path (default: stdout)")->envname("DSI_OUT");
  es->add_option("--traces", es_traces, "Directory for stage trace CSVs");

  // estimate-hurst
  EstimateInput eh_in;
  dsi::EstimatorKnobs eh_knobs;
  std::string eh_out;
  std::string eh_method = "auto";
  std::optional<double> eh_prior_lambda, eh_prior_hhp;
  auto* eh = app.add_subcommand("estimate-hurst", "Estimate the Hurst index");
  eh->add_option("--in", eh_in.in_path, "Input time,value CSV (omit to simulate inline)");
  CLI::Option* eh_hurst = add_sim_options(eh, eh_in.sim, false);
  add_knob_options(eh, eh_knobs);
  eh->add_option("--method", eh_method, "auto | ratio1 | ratio2 | qv")
      ->check(CLI::IsMember({"auto", "ratio1", "ratio2", "qv"}));
  eh->add_option("--prior-lambda", eh_prior_lambda,
                 "Scale estimate used to rescale the input to its underlying fBm");
  eh->add_option("--prior-hhp", eh_prior_hhp, "H - H' estimate used with --prior-lambda");
  eh->add_option("--out", eh_out, "Report JSON path (default: stdout)")->envname("DSI_OUT");

  // bench
  std::vector<double> bench_hursts{0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9};
  std::vector<std::string> bench_methods{"ratio1", "ratio2", "qv"};
  std::size_t bench_n = 10000;
  int bench_reps = 500;
  int bench_kmax = 5;
  int bench_threads = 0;
  std::uint64_t bench_seed = 0;
  std::string bench_out;
  auto* be = app.add_subcommand("bench", "Monte Carlo MSE benchmark of the Hurst estimators");
  be->add_option("--hurst", bench_hursts, "True Hurst values");
  be->add_option("--N", bench_n, "Samples per path");
  be->add_option("--reps", bench_reps, "Monte Carlo repetitions")->envname("DSI_REPS");
  be->add_option("--method", bench_methods, "Estimators: ratio1 ratio2 qv auto");
  be->add_option("--seed", bench_seed, "Master seed")->envname("DSI_SEED");
  be->add_option("--kmax", bench_kmax, "Largest stride for the ratio methods");
  be->add_option("--threads", bench_threads, "Worker threads (0 = hardware)")
      ->envname("DSI_THREADS");
  be->add_option("--out", bench_out, "Output CSV (default: stdout)")->envname("DSI_OUT");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }
  es_in.sim_given = es_hurst->count() > 0;
  eh_in.sim_given = eh_hurst->count() > 0;

  try {
    if (*sim) return run_simulate(sim_spec, sim_out, sim_msv_out, sim_knobs);
    if (*es) return run_estimate_scale(es_in, es_knobs, es_out, es_traces);
    if (*eh)
      return run_estimate_hurst(eh_in, eh_knobs, eh_method, eh_prior_lambda, eh_prior_hhp,
                                eh_out);
    if (*be)
      return run_bench_cmd(bench_hursts, bench_n, bench_reps, bench_methods, bench_seed,
                           bench_kmax, bench_threads, bench_out);
  } catch (const dsi::io_error& e) {
    std::cerr << "I/O error: " << e.what() << "\n";
    return 4;
  } catch (const dsi::degeneracy_error& e) {
    std::cerr << "numerical degeneracy: " << e.what() << "\n";
    return 3;
  } catch (const std::invalid_argument& e) {
    std::cerr << "configuration error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
