#include <doctest.h>

#include <cstdio>
#include <fstream>
#include <string>

#include "fnc/csv.hpp"
#include "fnc/fnp.hpp"
#include "fnc/result_io.hpp"
#include "fnc/rng.hpp"

using namespace fnc;

namespace {

std::string temp_path(const std::string& name) {
  return std::string("/tmp/fnc_test_") + name;
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  out << content;
}

}  // namespace

TEST_CASE("load_dataset parses plain CSV") {
  const std::string xp = temp_path("x1.csv"), yp = temp_path("y1.csv");
  write_file(xp, "1,0\n0,1\n1,1\n");
  write_file(yp, "1\n2\n3\n");
  const Dataset d = load_dataset(xp, yp);
  CHECK(d.n() == 3);
  CHECK(d.p() == 2);
  CHECK(d.x(2, 0) == 1.0);
  CHECK(d.y[1] == 2.0);
}

TEST_CASE("load_dataset detects a header row") {
  const std::string xp = temp_path("x2.csv"), yp = temp_path("y2.csv");
  write_file(xp, "a,b\n1,0\n0,1\n1,1\n");
  write_file(yp, "response\n1\n2\n3\n");
  const Dataset d = load_dataset(xp, yp);
  CHECK(d.n() == 3);
  CHECK(d.p() == 2);
}

TEST_CASE("load_dataset rejects a row-count mismatch") {
  const std::string xp = temp_path("x3.csv"), yp = temp_path("y3.csv");
  write_file(xp, "1,0\n0,1\n1,1\n");
  write_file(yp, "1\n2\n");
  CHECK_THROWS_WITH_AS(load_dataset(xp, yp),
                       doctest::Contains("dimension mismatch"), std::invalid_argument);
}

TEST_CASE("load_dataset names the bad cell") {
  const std::string xp = temp_path("x4.csv"), yp = temp_path("y4.csv");
  write_file(xp, "1,0\n0,abc\n1,1\n");
  write_file(yp, "1\n2\n3\n");
  try {
    load_dataset(xp, yp);
    FAIL("expected a parse error");
  } catch (const std::invalid_argument& e) {
    const std::string msg = e.what();
    CHECK(msg.find("row 2") != std::string::npos);
    CHECK(msg.find("column 2") != std::string::npos);
    CHECK(msg.find("abc") != std::string::npos);
  }
}

TEST_CASE("empty and ragged files are rejected") {
  const std::string xp = temp_path("x5.csv");
  write_file(xp, "");
  CHECK_THROWS_AS(read_matrix_csv(xp), std::invalid_argument);
  write_file(xp, "1,2\n3\n");
  CHECK_THROWS_AS(read_matrix_csv(xp), std::invalid_argument);
}

TEST_CASE("matrix round trip is lossless") {
  Matrix m(7, 5);
  SplitMix64 rng(91);
  for (double& v : m.data) v = rng.normal() * std::pow(10.0, rng.uniform(-8, 8));
  const std::string path = temp_path("roundtrip.csv");
  write_matrix_csv(path, m);
  const Matrix back = read_matrix_csv(path);
  REQUIRE(back.rows == m.rows);
  REQUIRE(back.cols == m.cols);
  CHECK(back.data == m.data);
}

TEST_CASE("comment lines are skipped") {
  const std::string path = temp_path("comments.csv");
  write_file(path, "# a note\ncol_a,col_b\n1,2\n3,4\n");
  const Matrix m = read_matrix_csv(path);
  CHECK(m.rows == 2);
  CHECK(m(1, 1) == 4.0);
}

TEST_CASE("selection document round trip") {
  SelectionDocument doc;
  doc.selection.epsilon = 0.1;
  doc.selection.t_star = 2.25;
  doc.selection.selected = {0, 4, 8};
  doc.selection.s_hat = 3;
  doc.selection.curve.thresholds = {3.0, 2.25, 1.0, 0.5};
  doc.selection.curve.order = {1, 0, 3, 2};
  doc.selection.curve.r_counts = {0, 1, 2, 3};
  doc.selection.curve.fnp_raw = {1.2, 0.6, 0.1, -0.2};
  doc.selection.curve.fnp_hat = {1.0, 0.6, 0.1, 0.0};
  doc.selection.curve.s_hat = 3;
  doc.c_tilde = 0.93;
  doc.alpha_p = 0.43;
  doc.pi_raw = 0.021;
  doc.pi_hat = 0.021;
  doc.sigma = 1.07;
  doc.sigma_source = SigmaSource::provided;
  doc.lambda = 0.12;
  doc.lambda_rule = "cv";
  doc.calib_mode = "fast_gaussian";
  doc.reps_null = 1000;
  doc.seed = 99;
  doc.diag = diagnostics(150, 200, 10, 4);

  const std::string path = temp_path("sel.json");
  save_selection(path, doc);
  const SelectionDocument back = load_selection(path);

  CHECK(back.selection.epsilon == doc.selection.epsilon);
  CHECK(back.selection.t_star == doc.selection.t_star);
  CHECK(back.selection.selected == doc.selection.selected);
  CHECK(back.selection.curve.thresholds == doc.selection.curve.thresholds);
  CHECK(back.selection.curve.order == doc.selection.curve.order);
  CHECK(back.selection.curve.fnp_raw == doc.selection.curve.fnp_raw);
  CHECK(back.c_tilde == doc.c_tilde);
  CHECK(back.sigma == doc.sigma);
  CHECK(back.sigma_source == SigmaSource::provided);
  CHECK(back.seed == doc.seed);
  CHECK(back.diag.gamma_star == doc.diag.gamma_star);
}

TEST_CASE("empty selection serializes with the sentinel") {
  SelectionDocument doc;
  doc.selection.epsilon = 0.05;
  doc.selection.no_qualifying_threshold = true;
  doc.diag = diagnostics(150, 200, 10, 4);
  const std::string path = temp_path("sel_empty.json");
  save_selection(path, doc);
  const SelectionDocument back = load_selection(path);
  CHECK(back.selection.selected.empty());
  CHECK(std::isinf(back.selection.t_star));
  CHECK(back.selection.no_qualifying_threshold);
}

TEST_CASE("aggregate document round trip with independent summary check") {
  AggregateDocument doc;
  doc.scenario.replicates = 100;
  SplitMix64 rng(17);
  std::vector<double> fnp_values;
  for (int r = 0; r < 100; ++r) {
    EvaluationMetrics m;
    m.tp = static_cast<std::size_t>(rng.bounded(10));
    m.fn = 10 - m.tp;
    m.fp = static_cast<std::size_t>(rng.bounded(5));
    m.fnp = static_cast<double>(m.fn) / 10.0;
    m.fdp = (m.tp + m.fp) ? static_cast<double>(m.fp) / static_cast<double>(m.tp + m.fp) : 0.0;
    const double a = 1.0 - m.fnp, b = 1.0 - m.fdp;
    m.f_measure = (a + b) > 0 ? 2 * a * b / (a + b) : 0.0;
    doc.replicates.push_back(m);
    doc.s_hat_ratio.push_back(rng.uniform01() * 2.0);
    fnp_values.push_back(m.fnp);
  }
  doc.summary = aggregate(doc.replicates, 0.1);

  const std::string path = temp_path("agg.json");
  save_aggregate(path, doc);
  const AggregateDocument back = load_aggregate(path);

  REQUIRE(back.replicates.size() == 100);
  CHECK(back.summary.mean_fnp == doc.summary.mean_fnp);
  CHECK(back.summary.sd_fnp == doc.summary.sd_fnp);
  CHECK(back.s_hat_ratio == doc.s_hat_ratio);

  // recompute the summary independently from the per-replicate rows
  double mean = 0.0;
  for (const auto& m : back.replicates) mean += m.fnp;
  mean /= 100.0;
  double ss = 0.0;
  for (const auto& m : back.replicates) ss += (m.fnp - mean) * (m.fnp - mean);
  const double sd = std::sqrt(ss / 99.0);
  CHECK(back.summary.mean_fnp == doctest::Approx(mean).epsilon(1e-12));
  CHECK(back.summary.sd_fnp == doctest::Approx(sd).epsilon(1e-12));
}
