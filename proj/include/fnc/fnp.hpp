#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "fnc/types.hpp"

namespace fnc {

// False-negative-proportion estimation and the adaptive selection rule built
// on it: exceedance counts over the standardized statistics, a Monte-Carlo
// bounding sequence for the signal-proportion estimator, and the threshold
// that keeps the estimated FNP under a user-chosen level.

/// |{j : |z_j| > t}| (strict).
std::size_t count_r(const std::vector<double>& z, double t);

/// 1 - (r - 2 (p - s_hat) Phi(-t)) / s_hat. Returns the raw value; callers
/// clamp for reporting.
double fnp_hat_raw(std::size_t r, std::size_t p, std::size_t s_hat, double t);
double fnp_hat(std::size_t r, std::size_t p, std::size_t s_hat, double t);  // clamped

/// Order |z| descending (ties by index) and return the indices.
std::vector<std::size_t> order_by_abs_desc(const std::vector<double>& z);

/// Null supremum statistic: max over 1 < j < p/2 of
/// (j/p - 2 Phi_bar(|z_(j)|)) / sigma_bar(|z_(j)|), skipping degenerate
/// evaluation points. Throws when every point is degenerate.
double v_statistic(const std::vector<double>& z_null);

struct NullCalibrationOptions {
  int reps = 1000;
  double alpha_p = 0.0;  // <= 0 means the default 1 / sqrt(log p)
  CalibrationMode mode = CalibrationMode::fast_gaussian;
  std::uint64_t seed = 1;
  // integer threshold grid for the discretized bounding value; disabled when
  // tau bounds are not set
  bool with_grid = false;
  double tau0 = 0.1;
  double tau1 = 4.0;
  // full-pipeline mode refits the Lasso on each simulated null response at
  // this fixed lambda (the design and theta_hat stay fixed)
  double lambda_full = 0.0;
  double tol = 1e-7;
  int max_iter = 10000;
};

/// Simulate the null statistic vectors conditional on the observed design,
/// compute V~ per replicate, and take c~ as the empirical (1-alpha) quantile.
/// fast_gaussian draws w = Theta X^T g / sqrt(n) with g standard normal, which
/// has exactly the null covariance sigma^2 Omega after scaling; full_pipeline
/// redoes the Lasso fit and debiasing per simulated response.
NullCalibration calibrate_null(const Dataset& data, const NodewiseResult& nodewise,
                               const std::vector<double>& omega_diag, double sigma,
                               const NullCalibrationOptions& opts);

/// Empirical quantile used throughout: ascending order statistic at index
/// ceil(level * m), clamped to [1, m].
double empirical_quantile(std::vector<double> samples, double level);

/// Integer thresholds in [sqrt(tau0 log p), sqrt(tau1 log p)].
std::vector<int> threshold_grid(std::size_t p, double tau0, double tau1);

/// Signal-proportion estimate over the order statistics (the form the
/// selection algorithm uses).
SignalEstimate estimate_pi_orderstat(const std::vector<double>& z, double c_tilde);

/// Discretized variant over the integer threshold grid.
SignalEstimate estimate_pi_discretized(const std::vector<double>& z, double c_star, double tau0,
                                       double tau1);

/// Estimated-FNP curve evaluated at the p order statistics. Each point uses
/// the exceedance count of the selection rule it represents, |z_j| >= t.
FnpCurve make_fnp_curve(const std::vector<double>& z, std::size_t s_hat);

/// t* = largest evaluated threshold whose clamped FNP estimate is <= epsilon;
/// selection keeps |z_j| >= t*. No qualifying threshold yields the empty
/// selection with the sentinel t* = +infinity.
SelectionResult threshold_select(const FnpCurve& curve, double epsilon);

Diagnostics diagnostics(std::size_t n, std::size_t p, std::size_t s, std::size_t s_max);

/// mu_min = min over the support of sqrt(n) |beta_j| / (sigma sqrt(theta_jj)).
double compute_mu_min(const GroundTruth& truth, const std::vector<double>& theta_diag,
                      std::size_t n);

// Full pipeline (Algorithm: fit, debias, standardize, calibrate, estimate s,
// build the FNP curve, select).

enum class LambdaRule { cross_validation, a2_formula, fixed };

struct PipelineConfig {
  double epsilon = 0.1;
  LambdaRule lambda_rule = LambdaRule::cross_validation;
  double fixed_lambda = 0.0;
  int cv_folds = 10;
  std::size_t cv_grid_size = 20;
  double cv_grid_min_ratio = 0.02;
  double sigma = 0.0;  // > 0: known noise scale; otherwise estimated
  double kappa_node = 2.0;
  CalibrationMode calib_mode = CalibrationMode::fast_gaussian;
  int null_reps = 1000;
  double alpha_p = 0.0;  // <= 0: default 1 / sqrt(log p)
  PiEstimatorKind pi_estimator = PiEstimatorKind::mr_orderstat;
  double tau0 = 0.1;
  double tau1 = 4.0;
  bool standardize_columns = false;  // rescale columns to unit mean square first
  double tol = 1e-7;
  int max_iter = 10000;
  std::uint64_t seed = 1;
};

struct PipelineResult {
  LassoFit fit;
  NodewiseResult nodewise;
  DebiasedFit debiased;
  NullCalibration calibration;
  SignalEstimate signal;
  SelectionResult selection;
  Diagnostics diag;           // from estimated quantities (s_hat, nodewise supports)
  std::size_t s_max_hat = 0;  // largest nodewise support size
};

PipelineResult fnc_reg(const Dataset& data, double epsilon, const PipelineConfig& config);

}  // namespace fnc
