#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "fnc/evalmetrics.hpp"
#include "fnc/fnp.hpp"
#include "fnc/simgen.hpp"
#include "fnc/types.hpp"

namespace fnc {

// Desk-scale reproduction harness. A scenario fixes (n, p, s, theta, beta1,
// sigma); the precision graph is generated once per scenario and the design,
// response, and pipeline randomness are regenerated per replicate from seeds
// hash(master_seed, scenario id, replicate index). Replicates run in a worker
// pool and land in preassigned slots, so results do not depend on worker
// count or scheduling.

struct ReplicateOutcome {
  std::vector<EvaluationMetrics> fnc;  // one entry per requested epsilon
  EvaluationMetrics lasso_cv;          // support of the CV Lasso fit as selection
  std::size_t s_hat = 0;
  double s_hat_ratio = 0.0;
};

struct ScenarioRun {
  ScenarioConfig scenario;
  std::vector<double> epsilons;
  std::vector<ReplicateOutcome> outcomes;  // indexed by replicate
  std::size_t s_max = 0;                   // realized precision row support
};

ScenarioRun run_scenario(const ScenarioConfig& scenario, const std::vector<double>& epsilons,
                         std::uint64_t scenario_id, int null_reps, bool progress);

// CSV table emitters for the three benchmark modes. Data rows are numeric
// (the loader treats '#' lines as comments and the first non-numeric row as
// a header), so every emitted table reloads through the CSV reader.
std::string bench_table1(const ScenarioConfig& base, int null_reps, bool progress);
std::string bench_table2(const ScenarioConfig& base, int null_reps, bool progress);
std::string bench_shat(const ScenarioConfig& base, int null_reps, bool progress);

}  // namespace fnc
