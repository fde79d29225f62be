#include "fnc/bench.hpp"

#include <charconv>
#include <cinttypes>
#include <cstdio>
#include <stdexcept>

#include "fnc/rng.hpp"

namespace fnc {

namespace {

constexpr std::uint64_t kTagPrecision = 101;
constexpr std::uint64_t kTagDesign = 102;
constexpr std::uint64_t kTagResponse = 103;
constexpr std::uint64_t kTagPipeline = 104;

std::vector<std::size_t> support_of(const std::vector<double>& beta) {
  std::vector<std::size_t> s;
  for (std::size_t j = 0; j < beta.size(); ++j)
    if (beta[j] != 0.0) s.push_back(j);
  return s;
}

void append_num(std::string& out, double v) {
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  out.append(buf, static_cast<std::size_t>(res.ptr - buf));
}

}  // namespace

ScenarioRun run_scenario(const ScenarioConfig& scenario, const std::vector<double>& epsilons,
                         std::uint64_t scenario_id, int null_reps, bool progress) {
  validate(scenario);
  if (epsilons.empty()) throw std::invalid_argument("run_scenario: need at least one epsilon");

  ScenarioRun run;
  run.scenario = scenario;
  run.epsilons = epsilons;
  run.outcomes.resize(static_cast<std::size_t>(scenario.replicates));

  const PrecisionGraph graph = gen_precision_er(
      scenario.p, scenario.theta, 0.4, 0.8,
      derive_seed(scenario.master_seed, scenario_id, kTagPrecision));
  run.s_max = graph.s_max;
  const GroundTruth truth = make_beta(scenario.p, scenario.s, scenario.beta1);

  if (progress)
    std::fprintf(stderr, "[bench] scenario id=%" PRIu64 " beta1=%g n=%zu: %d replicates\n",
                 scenario_id, scenario.beta1, scenario.n, scenario.replicates);

  const std::ptrdiff_t reps = scenario.replicates;
#pragma omp parallel for schedule(dynamic)
  for (std::ptrdiff_t r = 0; r < reps; ++r) {
    const auto rr = static_cast<std::uint64_t>(r);
    const Matrix x = gen_design(scenario.n, graph.theta,
                                derive_seed(scenario.master_seed, scenario_id, rr * 8 + kTagDesign));
    const Response resp = gen_response(x, truth.beta, scenario.sigma,
                                       derive_seed(scenario.master_seed, scenario_id,
                                                   rr * 8 + kTagResponse));
    Dataset data;
    data.x = x;
    data.y = resp.y;

    PipelineConfig cfg;
    cfg.sigma = 0.0;  // estimated, as the reference implementation the tables came from does
    cfg.null_reps = null_reps;
    cfg.seed = derive_seed(scenario.master_seed, scenario_id, rr * 8 + kTagPipeline);
    const PipelineResult res = fnc_reg(data, epsilons.front(), cfg);

    ReplicateOutcome& out = run.outcomes[static_cast<std::size_t>(r)];
    out.s_hat = res.signal.s_hat;
    out.s_hat_ratio = static_cast<double>(res.signal.s_hat) / static_cast<double>(scenario.s);
    out.fnc.reserve(epsilons.size());
    out.fnc.push_back(evaluate(res.selection.selected, truth));
    for (std::size_t e = 1; e < epsilons.size(); ++e) {
      if (res.signal.s_hat == 0) {
        out.fnc.push_back(evaluate({}, truth));
      } else {
        const SelectionResult sel = threshold_select(res.selection.curve, epsilons[e]);
        out.fnc.push_back(evaluate(sel.selected, truth));
      }
    }
    out.lasso_cv = evaluate(support_of(res.fit.beta_hat), truth);

    if (progress && (r + 1) % 20 == 0) {
#pragma omp critical
      std::fprintf(stderr, "[bench]   replicate %td/%td\n", r + 1, reps);
    }
  }
  return run;
}

std::string bench_table1(const ScenarioConfig& base, int null_reps, bool progress) {
  const std::vector<double> beta1_sweep{0.2, 0.3, 0.4, 0.5};
  std::string csv =
      "# FNP/FDP/F-measure, mean (sd) over replicates per method and signal size\n"
      "# method: 0 = fnc_reg, 1 = lasso_cv support\n"
      "# Knockoff comparator omitted: external method, out of scope\n"
      "beta1,method,mean_fnp,sd_fnp,mean_fdp,sd_fdp,mean_f,sd_f\n";
  std::uint64_t scen_id = 1000;
  for (double b1 : beta1_sweep) {
    ScenarioConfig scen = base;
    scen.beta1 = b1;
    const ScenarioRun run = run_scenario(scen, {base.epsilon}, scen_id++, null_reps, progress);
    std::vector<EvaluationMetrics> fnc, lasso;
    for (const auto& o : run.outcomes) {
      fnc.push_back(o.fnc.front());
      lasso.push_back(o.lasso_cv);
    }
    const AggregateSummary af = aggregate(fnc, base.epsilon);
    const AggregateSummary al = aggregate(lasso, base.epsilon);
    for (int method = 0; method < 2; ++method) {
      const AggregateSummary& a = method == 0 ? af : al;
      append_num(csv, b1);
      csv += ',';
      csv += method == 0 ? '0' : '1';
      for (double v : {a.mean_fnp, a.sd_fnp, a.mean_fdp, a.sd_fdp, a.mean_f, a.sd_f}) {
        csv += ',';
        append_num(csv, v);
      }
      csv += '\n';
    }
  }
  return csv;
}

std::string bench_table2(const ScenarioConfig& base, int null_reps, bool progress) {
  const std::vector<double> beta1_sweep{0.3, 0.5, 0.7};
  const std::vector<double> eps_sweep{0.1, 0.2, 0.3};
  std::string csv =
      "# relative frequency of {FNP <= epsilon} and mean FDP per signal size and level\n"
      "beta1,epsilon,freq_fnp_le_epsilon,mean_fdp\n";
  std::uint64_t scen_id = 2000;
  for (double b1 : beta1_sweep) {
    ScenarioConfig scen = base;
    scen.beta1 = b1;
    const ScenarioRun run = run_scenario(scen, eps_sweep, scen_id++, null_reps, progress);
    for (std::size_t e = 0; e < eps_sweep.size(); ++e) {
      std::vector<EvaluationMetrics> fnc;
      for (const auto& o : run.outcomes) fnc.push_back(o.fnc[e]);
      const AggregateSummary a = aggregate(fnc, eps_sweep[e]);
      append_num(csv, b1);
      csv += ',';
      append_num(csv, eps_sweep[e]);
      csv += ',';
      append_num(csv, a.freq_fnp_le_epsilon);
      csv += ',';
      append_num(csv, a.mean_fdp);
      csv += '\n';
    }
  }
  return csv;
}

std::string bench_shat(const ScenarioConfig& base, int null_reps, bool progress) {
  const std::vector<double> beta1_sweep{0.2, 0.3, 0.4, 0.5};
  const std::vector<std::size_t> n_sweep{100, 150};
  std::string csv =
      "# per-replicate s_hat / s, plot-ready for box plots by (beta1, n)\n"
      "beta1,n,replicate,s_hat_ratio\n";
  std::uint64_t scen_id = 3000;
  for (std::size_t n : n_sweep) {
    for (double b1 : beta1_sweep) {
      ScenarioConfig scen = base;
      scen.n = n;
      scen.beta1 = b1;
      const ScenarioRun run = run_scenario(scen, {base.epsilon}, scen_id++, null_reps, progress);
      for (std::size_t r = 0; r < run.outcomes.size(); ++r) {
        append_num(csv, b1);
        csv += ',';
        csv += std::to_string(n);
        csv += ',';
        csv += std::to_string(r + 1);
        csv += ',';
        append_num(csv, run.outcomes[r].s_hat_ratio);
        csv += '\n';
      }
    }
  }
  return csv;
}

}  // namespace fnc
