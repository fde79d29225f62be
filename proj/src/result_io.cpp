#include "fnc/result_io.hpp"

#include <cerrno>
#include <cstring>
#include <fstream>
#include <limits>
#include <stdexcept>

#include <json.hpp>

namespace fnc {

using nlohmann::json;

namespace {

constexpr const char* kSelectionSchema = "fnc-selection/1";
constexpr const char* kAggregateSchema = "fnc-aggregate/1";
constexpr const char* kTruthSchema = "fnc-truth/1";

void write_json(const std::string& path, const json& j) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error(path + ": cannot write: " + std::strerror(errno));
  out << j.dump(2) << '\n';
  if (!out) throw std::runtime_error(path + ": write failed: " + std::strerror(errno));
}

json read_json(const std::string& path, const char* schema) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error(path + ": cannot open: " + std::strerror(errno));
  json j;
  try {
    in >> j;
  } catch (const std::exception& e) {
    throw std::runtime_error(path + ": malformed document: " + e.what());
  }
  if (j.value("schema", "") != schema)
    throw std::runtime_error(path + ": expected schema '" + schema + "', found '" +
                             j.value("schema", "<missing>") + "'");
  return j;
}

std::vector<std::size_t> to_one_based(const std::vector<std::size_t>& idx) {
  std::vector<std::size_t> out(idx.size());
  for (std::size_t i = 0; i < idx.size(); ++i) out[i] = idx[i] + 1;
  return out;
}

std::vector<std::size_t> to_zero_based(const std::vector<std::size_t>& idx) {
  std::vector<std::size_t> out(idx.size());
  for (std::size_t i = 0; i < idx.size(); ++i) {
    if (idx[i] == 0) throw std::runtime_error("index lists in documents are 1-based");
    out[i] = idx[i] - 1;
  }
  return out;
}

json curve_to_json(const FnpCurve& c) {
  return json{{"thresholds", c.thresholds}, {"order", to_one_based(c.order)},
              {"r_counts", c.r_counts},     {"fnp_raw", c.fnp_raw},
              {"fnp_hat", c.fnp_hat},       {"s_hat", c.s_hat}};
}

FnpCurve curve_from_json(const json& j) {
  FnpCurve c;
  c.thresholds = j.at("thresholds").get<std::vector<double>>();
  c.order = to_zero_based(j.at("order").get<std::vector<std::size_t>>());
  c.r_counts = j.at("r_counts").get<std::vector<std::size_t>>();
  c.fnp_raw = j.at("fnp_raw").get<std::vector<double>>();
  c.fnp_hat = j.at("fnp_hat").get<std::vector<double>>();
  c.s_hat = j.at("s_hat").get<std::size_t>();
  return c;
}

json diag_to_json(const Diagnostics& d) {
  return json{{"eta", d.eta},         {"gamma1", d.gamma1},
              {"gamma2", d.gamma2},   {"gamma_star", d.gamma_star},
              {"mu_min", d.mu_min},   {"mu_threshold", d.mu_threshold},
              {"s_max", d.s_max}};
}

Diagnostics diag_from_json(const json& j) {
  Diagnostics d;
  d.eta = j.at("eta").get<double>();
  d.gamma1 = j.at("gamma1").get<double>();
  d.gamma2 = j.at("gamma2").get<double>();
  d.gamma_star = j.at("gamma_star").get<double>();
  d.mu_min = j.at("mu_min").get<double>();
  d.mu_threshold = j.at("mu_threshold").get<double>();
  d.s_max = j.at("s_max").get<std::size_t>();
  return d;
}

json metrics_to_json(const EvaluationMetrics& m) {
  return json{{"tp", m.tp},   {"fp", m.fp},   {"fn", m.fn},
              {"fnp", m.fnp}, {"fdp", m.fdp}, {"f_measure", m.f_measure}};
}

EvaluationMetrics metrics_from_json(const json& j) {
  EvaluationMetrics m;
  m.tp = j.at("tp").get<std::size_t>();
  m.fp = j.at("fp").get<std::size_t>();
  m.fn = j.at("fn").get<std::size_t>();
  m.fnp = j.at("fnp").get<double>();
  m.fdp = j.at("fdp").get<double>();
  m.f_measure = j.at("f_measure").get<double>();
  return m;
}

}  // namespace

void save_selection(const std::string& path, const SelectionDocument& doc) {
  const SelectionResult& sel = doc.selection;
  json j;
  j["schema"] = kSelectionSchema;
  j["epsilon"] = sel.epsilon;
  if (std::isinf(sel.t_star))
    j["t_star"] = nullptr;  // sentinel: no qualifying threshold
  else
    j["t_star"] = sel.t_star;
  j["selected"] = to_one_based(sel.selected);
  j["s_hat"] = sel.s_hat;
  j["flags"] = {{"no_qualifying_threshold", sel.no_qualifying_threshold},
                {"estimated_no_signal", sel.estimated_no_signal}};
  if (!sel.curve.thresholds.empty()) j["curve"] = curve_to_json(sel.curve);
  j["c_tilde"] = doc.c_tilde;
  j["alpha_p"] = doc.alpha_p;
  j["pi_raw"] = doc.pi_raw;
  j["pi_hat"] = doc.pi_hat;
  j["sigma"] = {{"value", doc.sigma},
                {"source", doc.sigma_source == SigmaSource::provided ? "provided" : "estimated"}};
  j["lambda"] = doc.lambda;
  j["lambda_rule"] = doc.lambda_rule;
  j["calib_mode"] = doc.calib_mode;
  j["reps_null"] = doc.reps_null;
  j["seed"] = doc.seed;
  j["diagnostics"] = diag_to_json(doc.diag);
  write_json(path, j);
}

SelectionDocument load_selection(const std::string& path) {
  const json j = read_json(path, kSelectionSchema);
  SelectionDocument doc;
  SelectionResult& sel = doc.selection;
  sel.epsilon = j.at("epsilon").get<double>();
  if (j.at("t_star").is_null())
    sel.t_star = std::numeric_limits<double>::infinity();
  else
    sel.t_star = j.at("t_star").get<double>();
  sel.selected = to_zero_based(j.at("selected").get<std::vector<std::size_t>>());
  sel.s_hat = j.at("s_hat").get<std::size_t>();
  sel.no_qualifying_threshold = j.at("flags").at("no_qualifying_threshold").get<bool>();
  sel.estimated_no_signal = j.at("flags").at("estimated_no_signal").get<bool>();
  if (j.contains("curve")) sel.curve = curve_from_json(j.at("curve"));
  doc.c_tilde = j.at("c_tilde").get<double>();
  doc.alpha_p = j.at("alpha_p").get<double>();
  doc.pi_raw = j.at("pi_raw").get<double>();
  doc.pi_hat = j.at("pi_hat").get<double>();
  doc.sigma = j.at("sigma").at("value").get<double>();
  doc.sigma_source = j.at("sigma").at("source").get<std::string>() == "provided"
                         ? SigmaSource::provided
                         : SigmaSource::estimated;
  doc.lambda = j.at("lambda").get<double>();
  doc.lambda_rule = j.at("lambda_rule").get<std::string>();
  doc.calib_mode = j.at("calib_mode").get<std::string>();
  doc.reps_null = j.at("reps_null").get<int>();
  doc.seed = j.at("seed").get<std::uint64_t>();
  doc.diag = diag_from_json(j.at("diagnostics"));
  return doc;
}

void save_aggregate(const std::string& path, const AggregateDocument& doc) {
  json j;
  j["schema"] = kAggregateSchema;
  j["scenario"] = {{"n", doc.scenario.n},
                   {"p", doc.scenario.p},
                   {"s", doc.scenario.s},
                   {"theta", doc.scenario.theta},
                   {"beta1", doc.scenario.beta1},
                   {"sigma", doc.scenario.sigma},
                   {"epsilon", doc.scenario.epsilon},
                   {"replicates", doc.scenario.replicates},
                   {"master_seed", doc.scenario.master_seed}};
  json rows = json::array();
  for (const auto& m : doc.replicates) rows.push_back(metrics_to_json(m));
  j["replicates"] = rows;
  j["s_hat_ratio"] = doc.s_hat_ratio;
  const AggregateSummary& s = doc.summary;
  j["summary"] = {{"replicates", s.replicates},
                  {"epsilon", s.epsilon},
                  {"mean_fnp", s.mean_fnp},
                  {"sd_fnp", s.sd_fnp},
                  {"mean_fdp", s.mean_fdp},
                  {"sd_fdp", s.sd_fdp},
                  {"mean_f", s.mean_f},
                  {"sd_f", s.sd_f},
                  {"mean_tp", s.mean_tp},
                  {"sd_tp", s.sd_tp},
                  {"mean_fp", s.mean_fp},
                  {"sd_fp", s.sd_fp},
                  {"mean_fn", s.mean_fn},
                  {"sd_fn", s.sd_fn},
                  {"freq_fnp_le_epsilon", s.freq_fnp_le_epsilon}};
  write_json(path, j);
}

AggregateDocument load_aggregate(const std::string& path) {
  const json j = read_json(path, kAggregateSchema);
  AggregateDocument doc;
  const json& sc = j.at("scenario");
  doc.scenario.n = sc.at("n").get<std::size_t>();
  doc.scenario.p = sc.at("p").get<std::size_t>();
  doc.scenario.s = sc.at("s").get<std::size_t>();
  doc.scenario.theta = sc.at("theta").get<double>();
  doc.scenario.beta1 = sc.at("beta1").get<double>();
  doc.scenario.sigma = sc.at("sigma").get<double>();
  doc.scenario.epsilon = sc.at("epsilon").get<double>();
  doc.scenario.replicates = sc.at("replicates").get<int>();
  doc.scenario.master_seed = sc.at("master_seed").get<std::uint64_t>();
  for (const auto& row : j.at("replicates")) doc.replicates.push_back(metrics_from_json(row));
  doc.s_hat_ratio = j.at("s_hat_ratio").get<std::vector<double>>();
  const json& s = j.at("summary");
  doc.summary.replicates = s.at("replicates").get<std::size_t>();
  doc.summary.epsilon = s.at("epsilon").get<double>();
  doc.summary.mean_fnp = s.at("mean_fnp").get<double>();
  doc.summary.sd_fnp = s.at("sd_fnp").get<double>();
  doc.summary.mean_fdp = s.at("mean_fdp").get<double>();
  doc.summary.sd_fdp = s.at("sd_fdp").get<double>();
  doc.summary.mean_f = s.at("mean_f").get<double>();
  doc.summary.sd_f = s.at("sd_f").get<double>();
  doc.summary.mean_tp = s.at("mean_tp").get<double>();
  doc.summary.sd_tp = s.at("sd_tp").get<double>();
  doc.summary.mean_fp = s.at("mean_fp").get<double>();
  doc.summary.sd_fp = s.at("sd_fp").get<double>();
  doc.summary.mean_fn = s.at("mean_fn").get<double>();
  doc.summary.sd_fn = s.at("sd_fn").get<double>();
  doc.summary.freq_fnp_le_epsilon = s.at("freq_fnp_le_epsilon").get<double>();
  return doc;
}

void save_truth(const std::string& path, const TruthDocument& doc) {
  json j;
  j["schema"] = kTruthSchema;
  j["n"] = doc.n;
  j["p"] = doc.p;
  j["s"] = doc.truth.s;
  j["sigma"] = doc.truth.sigma;
  j["support"] = to_one_based(doc.truth.support);
  j["beta"] = doc.truth.beta;
  j["theta_edge"] = doc.theta_edge;
  j["s_max"] = doc.s_max;
  j["seed"] = doc.seed;
  write_json(path, j);
}

TruthDocument load_truth(const std::string& path) {
  const json j = read_json(path, kTruthSchema);
  TruthDocument doc;
  doc.n = j.at("n").get<std::size_t>();
  doc.p = j.at("p").get<std::size_t>();
  doc.truth.s = j.at("s").get<std::size_t>();
  doc.truth.sigma = j.at("sigma").get<double>();
  doc.truth.support = to_zero_based(j.at("support").get<std::vector<std::size_t>>());
  doc.truth.beta = j.at("beta").get<std::vector<double>>();
  doc.theta_edge = j.at("theta_edge").get<double>();
  doc.s_max = j.at("s_max").get<std::size_t>();
  doc.seed = j.at("seed").get<std::uint64_t>();
  return doc;
}

}  // namespace fnc
