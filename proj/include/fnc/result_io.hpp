#pragma once

#include <string>
#include <vector>

#include "fnc/evalmetrics.hpp"
#include "fnc/fnp.hpp"
#include "fnc/types.hpp"

namespace fnc {

// Self-describing key-value documents (JSON, UTF-8) with an explicit schema
// tag. Index sets are written 1-based; reals round-trip exactly through the
// shortest-representation encoder.

struct SelectionDocument {
  SelectionResult selection;
  double c_tilde = 0.0;
  double alpha_p = 0.0;
  double pi_raw = 0.0;
  double pi_hat = 0.0;
  double sigma = 0.0;
  SigmaSource sigma_source = SigmaSource::estimated;
  double lambda = 0.0;
  std::string lambda_rule;
  std::string calib_mode;
  int reps_null = 0;
  std::uint64_t seed = 0;
  Diagnostics diag;
};

void save_selection(const std::string& path, const SelectionDocument& doc);
SelectionDocument load_selection(const std::string& path);

struct AggregateDocument {
  ScenarioConfig scenario;
  std::vector<EvaluationMetrics> replicates;
  std::vector<double> s_hat_ratio;  // s_hat / s per replicate
  AggregateSummary summary;
};

void save_aggregate(const std::string& path, const AggregateDocument& doc);
AggregateDocument load_aggregate(const std::string& path);

struct TruthDocument {
  GroundTruth truth;
  std::size_t n = 0;
  std::size_t p = 0;
  double theta_edge = 0.0;
  std::size_t s_max = 0;
  std::uint64_t seed = 0;
};

void save_truth(const std::string& path, const TruthDocument& doc);
TruthDocument load_truth(const std::string& path);

}  // namespace fnc
