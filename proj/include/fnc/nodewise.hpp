#pragma once

#include <vector>

#include "fnc/types.hpp"

namespace fnc {

// Precision-matrix estimate from p column-on-rest Lasso regressions. Row j
// of theta_hat is (unit at j, -gamma_j elsewhere) scaled by 1/tau_j^2 with
//   tau_j^2 = ||x_j - X_{-j} gamma_j||^2 / n + 2 lambda_j ||gamma_j||_1.
// The p fits are independent and run in parallel; assembly order is fixed by
// column index, so the result does not depend on scheduling. theta_hat is
// deliberately not symmetrized.

struct NodewiseOptions {
  double tol = 1e-7;
  int max_iter = 10000;
  bool parallel = true;  // serial path kept for testing and benchmarking
};

NodewiseResult nodewise_regression(const Dataset& data, const std::vector<double>& lambda_node,
                                   const NodewiseOptions& opts = {});

/// lambda_j = kappa * sqrt(log(p) / n), identical across columns.
double default_lambda_node(std::size_t n, std::size_t p, double kappa);

/// Largest off-diagonal support size over rows of theta_hat.
std::size_t max_row_support(const NodewiseResult& nw);

}  // namespace fnc
