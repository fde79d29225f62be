#pragma once

#include <vector>

#include "fnc/types.hpp"

namespace fnc {

/// Realized counts and rates of a selection against known ground truth.
/// FDP and the F-measure use the 0/0 := 0 convention.
EvaluationMetrics evaluate(const std::vector<std::size_t>& selected, const GroundTruth& truth);

struct AggregateSummary {
  std::size_t replicates = 0;
  double epsilon = 0.0;
  double mean_fnp = 0.0, sd_fnp = 0.0;
  double mean_fdp = 0.0, sd_fdp = 0.0;
  double mean_f = 0.0, sd_f = 0.0;
  double mean_tp = 0.0, sd_tp = 0.0;
  double mean_fp = 0.0, sd_fp = 0.0;
  double mean_fn = 0.0, sd_fn = 0.0;
  double freq_fnp_le_epsilon = 0.0;
};

/// Mean and sample standard deviation per field plus the relative frequency
/// of {FNP <= epsilon}. Order of the input sequence does not matter.
AggregateSummary aggregate(const std::vector<EvaluationMetrics>& metrics, double epsilon);

}  // namespace fnc
