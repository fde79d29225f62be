#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "fnc/fnp.hpp"
#include "fnc/lasso.hpp"
#include "fnc/rng.hpp"
#include "fnc/simgen.hpp"

using namespace fnc;

namespace {

Dataset scenario_data(std::size_t n, std::size_t p, std::size_t s, double beta1,
                      std::uint64_t seed) {
  const PrecisionGraph g = gen_precision_er(p, 0.05, 0.4, 0.8, seed);
  const GroundTruth truth = make_beta(p, s, beta1);
  const Matrix x = gen_design(n, g.theta, seed + 1);
  const Response r = gen_response(x, truth.beta, 1.0, seed + 2);
  Dataset d;
  d.x = x;
  d.y = r.y;
  return d;
}

}  // namespace

TEST_CASE("pipeline is deterministic in the seed") {
  const Dataset d = scenario_data(60, 40, 4, 0.9, 10);
  PipelineConfig cfg;
  cfg.sigma = 1.0;
  cfg.null_reps = 200;
  cfg.seed = 42;
  const PipelineResult a = fnc_reg(d, 0.1, cfg);
  const PipelineResult b = fnc_reg(d, 0.1, cfg);
  CHECK(a.selection.selected == b.selection.selected);
  CHECK(a.selection.t_star == b.selection.t_star);
  CHECK(a.calibration.c_tilde == b.calibration.c_tilde);
  CHECK(a.signal.pi_raw == b.signal.pi_raw);
  CHECK(a.fit.beta_hat == b.fit.beta_hat);
}

TEST_CASE("pipeline recovers strong signals") {
  const Dataset d = scenario_data(120, 40, 4, 1.5, 77);
  PipelineConfig cfg;
  cfg.sigma = 1.0;
  cfg.null_reps = 300;
  cfg.seed = 5;
  const PipelineResult res = fnc_reg(d, 0.1, cfg);
  REQUIRE_FALSE(res.selection.estimated_no_signal);
  // all four planted coordinates have mu around sqrt(120)*1.5 ~ 16: they must
  // be selected
  for (std::size_t j = 0; j < 4; ++j) {
    bool found = false;
    for (std::size_t sel : res.selection.selected) found = found || sel == j;
    CHECK(found);
  }
  validate(res.selection, res.debiased.z);
  validate(res.debiased, d.n());
  validate(res.signal, d.p());
}

TEST_CASE("estimated-no-signal path returns the flagged empty selection") {
  // pure noise at a small scale with a modest calibration budget
  const Dataset d = scenario_data(50, 30, 0, 0.0, 3);
  PipelineConfig cfg;
  cfg.sigma = 1.0;
  cfg.null_reps = 200;
  cfg.seed = 2;
  const PipelineResult res = fnc_reg(d, 0.1, cfg);
  if (res.signal.s_hat == 0) {
    CHECK(res.selection.estimated_no_signal);
    CHECK(res.selection.selected.empty());
    CHECK(std::isinf(res.selection.t_star));
    CHECK(res.selection.curve.thresholds.empty());
  }
}

TEST_CASE("stage labels decorate pipeline failures") {
  Dataset d = scenario_data(20, 8, 2, 1.0, 8);
  d.y.assign(d.n(), 0.0);
  PipelineConfig cfg;
  cfg.lambda_rule = LambdaRule::fixed;
  cfg.fixed_lambda = 0.5;
  cfg.sigma = 0.0;  // estimation on an exact zero fit must fail in-stage
  cfg.null_reps = 100;
  try {
    fnc_reg(d, 0.1, cfg);
    FAIL("expected a stage error");
  } catch (const std::runtime_error& e) {
    CHECK(std::string(e.what()).find("[debias]") != std::string::npos);
  }
}

TEST_CASE("epsilon outside (0,1] is rejected") {
  const Dataset d = scenario_data(30, 10, 2, 0.8, 9);
  PipelineConfig cfg;
  CHECK_THROWS_AS(fnc_reg(d, 0.0, cfg), std::invalid_argument);
  CHECK_THROWS_AS(fnc_reg(d, 1.5, cfg), std::invalid_argument);
}

TEST_CASE("selection is invariant to column rescaling when standardization is on") {
  const Dataset d = scenario_data(60, 20, 3, 1.2, 12);
  Dataset scaled = d;
  SplitMix64 rng(14);
  for (std::size_t j = 0; j < d.p(); ++j) {
    const double c = std::exp(rng.uniform(-2.0, 2.0));
    for (std::size_t i = 0; i < d.n(); ++i) scaled.x(i, j) = d.x(i, j) * c;
  }
  PipelineConfig cfg;
  cfg.sigma = 1.0;
  cfg.null_reps = 150;
  cfg.seed = 4;
  cfg.standardize_columns = true;
  const PipelineResult a = fnc_reg(d, 0.2, cfg);
  const PipelineResult b = fnc_reg(scaled, 0.2, cfg);
  CHECK(a.selection.selected == b.selection.selected);
}

TEST_CASE("a2 lambda rule and discretized estimator run end to end") {
  const Dataset d = scenario_data(80, 30, 3, 1.5, 21);
  PipelineConfig cfg;
  cfg.lambda_rule = LambdaRule::a2_formula;
  cfg.sigma = 1.0;
  cfg.null_reps = 150;
  cfg.pi_estimator = PiEstimatorKind::mr_discretized;
  cfg.tau0 = 0.1;
  cfg.tau1 = 4.0;
  cfg.seed = 31;
  const PipelineResult res = fnc_reg(d, 0.2, cfg);
  CHECK(res.fit.lambda == doctest::Approx(default_lambda(80, 30, 1.0)));
  CHECK(res.calibration.has_grid);
  CHECK(res.signal.estimator_kind == PiEstimatorKind::mr_discretized);
}
