// Command-line front end: variable selection with estimated-FNP control on
// user data, scenario simulation, and the desk-scale benchmark tables.

#include <cstdio>
#include <exception>
#include <string>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

#include <CLI11.hpp>

#include "fnc/bench.hpp"
#include "fnc/csv.hpp"
#include "fnc/debias.hpp"
#include "fnc/fnp.hpp"
#include "fnc/result_io.hpp"
#include "fnc/simgen.hpp"

namespace {

struct SelectArgs {
  std::string x_path;
  std::string y_path;
  double epsilon = 0.1;
  std::string sigma = "auto";
  int reps_null = 1000;
  std::string calib = "fast";
  std::uint64_t seed = 1;
  std::string out = "selection.json";
  bool quiet = false;
};

int run_select(const SelectArgs& args) {
  const fnc::Dataset data = fnc::load_dataset(args.x_path, args.y_path);

  fnc::PipelineConfig cfg;
  cfg.epsilon = args.epsilon;
  if (args.sigma != "auto") {
    const double s = std::stod(args.sigma);
    if (!(s > 0.0)) throw std::invalid_argument("--sigma must be positive or 'auto'");
    cfg.sigma = s;
  }
  cfg.null_reps = args.reps_null;
  if (args.calib == "fast")
    cfg.calib_mode = fnc::CalibrationMode::fast_gaussian;
  else if (args.calib == "full")
    cfg.calib_mode = fnc::CalibrationMode::full_pipeline;
  else
    throw std::invalid_argument("--calib must be 'fast' or 'full'");
  cfg.seed = args.seed;

  if (!args.quiet)
    std::fprintf(stderr, "[select] n=%zu p=%zu epsilon=%g calib=%s reps=%d\n", data.n(), data.p(),
                 args.epsilon, args.calib.c_str(), args.reps_null);

  const fnc::PipelineResult res = fnc_reg(data, args.epsilon, cfg);

  fnc::SelectionDocument doc;
  doc.selection = res.selection;
  doc.c_tilde = res.calibration.c_tilde;
  doc.alpha_p = res.calibration.alpha;
  doc.pi_raw = res.signal.pi_raw;
  doc.pi_hat = res.signal.pi_hat;
  doc.sigma = res.debiased.sigma_hat;
  doc.sigma_source = res.debiased.sigma_source;
  doc.lambda = res.fit.lambda;
  doc.lambda_rule = "cv";
  doc.calib_mode = args.calib == "fast" ? "fast_gaussian" : "full_pipeline";
  doc.reps_null = args.reps_null;
  doc.seed = args.seed;
  doc.diag = res.diag;
  fnc::save_selection(args.out, doc);

  if (!args.quiet)
    std::printf("selected %zu of %zu predictors (s_hat=%zu) -> %s\n", res.selection.selected.size(),
                data.p(), res.signal.s_hat, args.out.c_str());
  return 0;
}

struct SimulateArgs {
  std::size_t n = 150;
  std::size_t p = 200;
  std::size_t s = 10;
  double theta = 0.02;
  double beta1 = 0.5;
  double sigma = 1.0;
  std::uint64_t seed = 1;
  std::string out_dir = ".";
  bool quiet = false;
};

int run_simulate(const SimulateArgs& args) {
  if (args.s > args.p) throw std::invalid_argument("--s must not exceed --p");
  if (!(args.sigma > 0.0)) throw std::invalid_argument("--sigma must be positive");
  if (args.theta < 0.0 || args.theta > 1.0)
    throw std::invalid_argument("--theta must lie in [0,1]");

  const fnc::PrecisionGraph graph = fnc::gen_precision_er(args.p, args.theta, 0.4, 0.8, args.seed);
  const fnc::GroundTruth truth = fnc::make_beta(args.p, args.s, args.beta1);
  const fnc::Matrix x = fnc::gen_design(args.n, graph.theta, args.seed);
  const fnc::Response resp = fnc::gen_response(x, truth.beta, args.sigma, args.seed);

  const std::string dir = args.out_dir + "/";
  fnc::write_matrix_csv(dir + "x.csv", x);
  fnc::write_vector_csv(dir + "y.csv", resp.y);
  fnc::write_vector_csv(dir + "beta.csv", truth.beta);
  fnc::write_matrix_csv(dir + "precision.csv", graph.theta);

  fnc::TruthDocument doc;
  doc.truth = truth;
  doc.truth.sigma = args.sigma;
  doc.n = args.n;
  doc.p = args.p;
  doc.theta_edge = args.theta;
  doc.s_max = graph.s_max;
  doc.seed = args.seed;
  fnc::save_truth(dir + "truth.json", doc);

  if (!args.quiet)
    std::printf("wrote x.csv y.csv beta.csv precision.csv truth.json to %s\n",
                args.out_dir.c_str());
  return 0;
}

struct BenchArgs {
  std::string table = "1";
  int replicates = 100;
  std::uint64_t seed = 1;
  int workers = 0;
  std::size_t n = 150;
  std::size_t p = 200;
  std::size_t s = 10;
  double theta = 0.02;
  double sigma = 1.0;
  double epsilon = 0.1;
  int reps_null = 1000;
  std::string out;
  bool quiet = false;
};

int run_bench(const BenchArgs& args) {
  if (args.table != "1" && args.table != "2" && args.table != "shat")
    throw std::invalid_argument("--table must be one of 1, 2, shat");
  if (args.replicates < 1) throw std::invalid_argument("--replicates must be positive");
#ifdef _OPENMP
  if (args.workers > 0) omp_set_num_threads(args.workers);
#endif

  fnc::ScenarioConfig base;
  base.n = args.n;
  base.p = args.p;
  base.s = args.s;
  base.theta = args.theta;
  base.sigma = args.sigma;
  base.epsilon = args.epsilon;
  base.replicates = args.replicates;
  base.master_seed = args.seed;
  validate(base);

  std::string csv;
  std::string out = args.out;
  if (args.table == "1") {
    csv = fnc::bench_table1(base, args.reps_null, !args.quiet);
    if (out.empty()) out = "table1.csv";
  } else if (args.table == "2") {
    csv = fnc::bench_table2(base, args.reps_null, !args.quiet);
    if (out.empty()) out = "table2.csv";
  } else {
    csv = fnc::bench_shat(base, args.reps_null, !args.quiet);
    if (out.empty()) out = "shat.csv";
  }

  std::FILE* f = std::fopen(out.c_str(), "wb");
  if (!f) throw std::runtime_error(out + ": cannot write");
  std::fwrite(csv.data(), 1, csv.size(), f);
  std::fclose(f);

  if (!args.quiet) std::printf("wrote %s\n", out.c_str());
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"FNC-Reg: variable selection with false negative proportion control"};
  app.require_subcommand(1);

  SelectArgs sel;
  CLI::App* cmd_select = app.add_subcommand("select", "run selection on a dataset");
  cmd_select->add_option("--x", sel.x_path, "design matrix CSV")->required();
  cmd_select->add_option("--y", sel.y_path, "response CSV (single column)")->required();
  cmd_select->add_option("--epsilon", sel.epsilon, "FNP control level in (0,1]")
      ->required()
      ->check(CLI::Range(1e-12, 1.0));
  cmd_select->add_option("--sigma", sel.sigma, "noise sd or 'auto' (default)");
  cmd_select->add_option("--reps-null", sel.reps_null, "null calibration replicates")
      ->check(CLI::Range(100, 1000000));
  cmd_select->add_option("--calib", sel.calib, "calibration mode: fast | full");
  cmd_select->add_option("--seed", sel.seed, "master seed");
  cmd_select->add_option("--out", sel.out, "output document path");
  cmd_select->add_flag("--quiet", sel.quiet, "suppress progress and status output");

  SimulateArgs sim;
  CLI::App* cmd_sim = app.add_subcommand("simulate", "generate a synthetic scenario");
  cmd_sim->add_option("--n", sim.n, "observations")->required();
  cmd_sim->add_option("--p", sim.p, "predictors")->required();
  cmd_sim->add_option("--s", sim.s, "relevant predictors")->required();
  cmd_sim->add_option("--theta", sim.theta, "precision edge probability")->required();
  cmd_sim->add_option("--beta1", sim.beta1, "signal magnitude")->required();
  cmd_sim->add_option("--sigma", sim.sigma, "noise sd")->required();
  cmd_sim->add_option("--seed", sim.seed, "seed");
  cmd_sim->add_option("--out-dir", sim.out_dir, "output directory")->required();
  cmd_sim->add_flag("--quiet", sim.quiet, "suppress status output");

  BenchArgs bench;
  CLI::App* cmd_bench = app.add_subcommand("bench", "reproduce the benchmark tables");
  cmd_bench->add_option("--table", bench.table, "1 | 2 | shat")->required();
  cmd_bench->add_option("--replicates", bench.replicates, "replicates per scenario");
  cmd_bench->add_option("--seed", bench.seed, "master seed");
  cmd_bench->add_option("--workers", bench.workers, "worker threads (0 = library default)");
  cmd_bench->add_option("--n", bench.n, "observations");
  cmd_bench->add_option("--p", bench.p, "predictors");
  cmd_bench->add_option("--s", bench.s, "relevant predictors");
  cmd_bench->add_option("--theta", bench.theta, "precision edge probability");
  cmd_bench->add_option("--sigma", bench.sigma, "noise sd");
  cmd_bench->add_option("--epsilon", bench.epsilon, "FNP control level");
  cmd_bench->add_option("--reps-null", bench.reps_null, "null calibration replicates");
  cmd_bench->add_option("--out", bench.out, "output CSV path");
  cmd_bench->add_flag("--quiet", bench.quiet, "suppress progress output");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);  // --help and friends
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  }

  try {
    if (*cmd_select) return run_select(sel);
    if (*cmd_sim) return run_simulate(sim);
    if (*cmd_bench) return run_bench(bench);
  } catch (const std::invalid_argument& e) {
    std::fprintf(stderr, "validation error: %s\n", e.what());
    return 2;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "runtime error: %s\n", e.what());
    return 1;
  }
  return 2;
}
