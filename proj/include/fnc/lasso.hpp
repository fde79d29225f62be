#pragma once

#include <cstdint>
#include <vector>

#include "fnc/types.hpp"

namespace fnc {

// Cyclic coordinate descent for the objective
//   ||y - X beta||^2 / n + 2 lambda ||beta||_1.
// Deterministic: fixed coordinate order, started from zero. Converged means
// the honest KKT residual (computed from a fresh residual, not the cached
// gradient) is below tol.

struct LassoOptions {
  double tol = 1e-7;
  int max_iter = 10000;  // full sweeps
  // Gram caching is used when p <= gram_limit, residual updates otherwise.
  std::size_t gram_limit = 2000;
};

LassoFit fit_lasso(const Dataset& data, double lambda, const LassoOptions& opts = {},
                   std::vector<double>* sweep_objectives = nullptr);

/// lambda = 8 sigma sqrt(log(p) / n)
double default_lambda(std::size_t n, std::size_t p, double sigma);

/// Largest lambda with a nonzero solution: max_j |x_j^T y| / n.
double lambda_max(const Dataset& data);

/// Geometric grid from lambda_hi down to lambda_hi * min_ratio, descending.
std::vector<double> lambda_grid_geometric(double lambda_hi, std::size_t size, double min_ratio);

/// K-fold cross validation over a descending grid; ties broken toward the
/// larger lambda. Fold assignment is a seeded permutation, so the result is
/// independent of evaluation order.
double select_lambda_cv(const Dataset& data, int folds, std::vector<double> lambda_grid,
                        std::uint64_t seed);

// Solver core on precomputed normalized Gram (X^T X / n) and correlations
// (X^T y / n); exclude_index skips one coordinate entirely (used by nodewise
// regression to fit on X with column j removed without copying the Gram).
struct GramProblem {
  const Matrix* gram = nullptr;            // p x p, X^T X / n
  const std::vector<double>* corr = nullptr;  // X^T y / n
  double yty_n = 0.0;                      // y^T y / n
  std::ptrdiff_t exclude_index = -1;
};

struct GramFitResult {
  std::vector<double> beta;
  int sweeps = 0;
  bool converged = false;
  double kkt_residual = 0.0;
};

GramFitResult fit_lasso_gram(const GramProblem& prob, double lambda, double tol, int max_iter,
                             std::vector<double>* sweep_objectives = nullptr);

}  // namespace fnc
