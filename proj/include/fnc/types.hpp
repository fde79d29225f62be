#pragma once

#include <cstdint>
#include <limits>
#include <string>
#include <vector>

#include "fnc/linalg.hpp"

namespace fnc {

// All types in this header are plain value types, immutable by convention
// after construction, and safe to share read-only across workers.

/// Design matrix (n x p) plus response (length n).
struct Dataset {
  Matrix x;
  std::vector<double> y;

  std::size_t n() const { return x.rows; }
  std::size_t p() const { return x.cols; }
};

/// Known coefficient vector and noise scale for simulated data.
struct GroundTruth {
  std::vector<double> beta;
  std::vector<std::size_t> support;  // 0-based indices of nonzero coefficients
  std::size_t s = 0;
  double sigma = 1.0;
};

struct LassoFit {
  std::vector<double> beta_hat;
  double lambda = 0.0;
  double objective = 0.0;
  int iterations = 0;      // full coordinate sweeps
  bool converged = true;
  double kkt_residual = 0.0;
  double tol = 0.0;
};

struct NodewiseResult {
  Matrix theta_hat;                 // p x p, row j scaled by 1/tau_j^2
  std::vector<double> tau_sq;       // length p
  Matrix gamma;                     // p x (p-1), row j = gamma_j
  std::vector<double> lambda_node;  // per-column tuning level
};

enum class SigmaSource { provided, estimated };

struct DebiasedFit {
  std::vector<double> b_hat;
  Matrix omega_hat;  // symmetrized Theta Sigma Theta^T
  double sigma_hat = 0.0;
  std::vector<double> z;
  SigmaSource sigma_source = SigmaSource::estimated;
};

/// Exact algebraic split of sqrt(n)*(b_hat - beta) into Gaussian and bias
/// parts; only constructible when the ground truth and realized noise are
/// known.
struct DecompositionCheck {
  std::vector<double> w;
  std::vector<double> delta;
  std::vector<double> w_prime;
  std::vector<double> delta_prime;
  std::vector<double> mu;
};

enum class CalibrationMode { fast_gaussian, full_pipeline };

struct NullCalibration {
  double c_tilde = 0.0;
  double alpha = 0.0;
  int reps = 0;
  std::vector<double> samples;  // simulated V~ values, one per replicate
  CalibrationMode mode = CalibrationMode::fast_gaussian;
  int degenerate = 0;

  // discretized variant (present when a grid was requested)
  bool has_grid = false;
  std::vector<int> grid;
  double c_star = 0.0;
  std::vector<double> star_samples;
};

enum class PiEstimatorKind { mr_orderstat, mr_discretized };

struct SignalEstimate {
  double pi_raw = 0.0;  // unclamped supremum value
  double pi_hat = 0.0;  // clamped to [0,1]
  std::size_t s_hat = 0;
  PiEstimatorKind estimator_kind = PiEstimatorKind::mr_orderstat;
  bool degenerate = false;  // every evaluation point was skipped
};

struct FnpCurve {
  std::vector<double> thresholds;   // |z| order statistics, descending
  std::vector<std::size_t> order;   // original 0-based index per threshold
  std::vector<std::size_t> r_counts;
  std::vector<double> fnp_raw;
  std::vector<double> fnp_hat;      // clamped to [0,1]
  std::size_t s_hat = 0;
};

struct SelectionResult {
  double epsilon = 0.0;
  double t_star = std::numeric_limits<double>::infinity();
  bool no_qualifying_threshold = false;
  bool estimated_no_signal = false;
  std::vector<std::size_t> selected;  // 0-based; CLI documents report 1-based
  FnpCurve curve;
  std::size_t s_hat = 0;
};

struct EvaluationMetrics {
  std::size_t tp = 0;
  std::size_t fp = 0;
  std::size_t fn = 0;
  double fnp = 0.0;
  double fdp = 0.0;
  double f_measure = 0.0;
};

struct Diagnostics {
  double eta = 0.0;
  double gamma1 = 0.0;
  double gamma2 = 0.0;
  double gamma_star = 0.0;
  double mu_min = 0.0;  // 0 when the ground truth needed to compute it is unknown
  double mu_threshold = 0.0;
  std::size_t s_max = 0;
};

struct ScenarioConfig {
  std::size_t n = 150;
  std::size_t p = 200;
  std::size_t s = 10;
  double theta = 0.02;
  double beta1 = 0.5;
  double sigma = 1.0;
  double epsilon = 0.1;
  int replicates = 100;
  std::uint64_t master_seed = 1;
};

// Validation routines: each throws std::runtime_error naming the violated
// invariant. Used by tests and by the CLI before persisting documents.
void validate(const Dataset& d);
void validate(const GroundTruth& t);
void validate(const LassoFit& fit, const Dataset& d);
void validate(const NodewiseResult& nw);
void validate(const DebiasedFit& fit, std::size_t n);
void validate(const DecompositionCheck& dc, const std::vector<double>& b_hat,
              const std::vector<double>& beta_true, std::size_t n);
void validate(const NullCalibration& cal);
void validate(const SignalEstimate& est, std::size_t p);
void validate(const FnpCurve& curve, std::size_t p);
void validate(const SelectionResult& sel, const std::vector<double>& z);
void validate(const EvaluationMetrics& m, std::size_t s, std::size_t n_selected);
void validate(const Diagnostics& d);
void validate(const ScenarioConfig& c);

}  // namespace fnc
