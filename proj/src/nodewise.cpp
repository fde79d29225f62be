#include "fnc/nodewise.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "fnc/lasso.hpp"

namespace fnc {

namespace {

struct ColumnFit {
  std::vector<double> gamma_full;  // length p, position j zero
  double tau_sq = 0.0;
};

ColumnFit fit_column(const Dataset& data, const Matrix& g_norm, const std::vector<double>& col_sq_n,
                     std::size_t j, double lambda_j, const NodewiseOptions& opts) {
  const std::size_t n = data.n(), p = data.p();

  // correlations of x_j with every column; the Gram row doubles as X^T x_j / n
  std::vector<double> corr(g_norm.row_ptr(j), g_norm.row_ptr(j) + p);

  GramProblem prob;
  prob.gram = &g_norm;
  prob.corr = &corr;
  prob.yty_n = col_sq_n[j];
  prob.exclude_index = static_cast<std::ptrdiff_t>(j);

  const GramFitResult fit = fit_lasso_gram(prob, lambda_j, opts.tol, opts.max_iter);

  // honest residual for tau_j^2
  std::vector<double> r(n);
  for (std::size_t i = 0; i < n; ++i) r[i] = data.x(i, j);
  for (std::size_t k = 0; k < p; ++k) {
    const double b = fit.beta[k];
    if (b == 0.0) continue;
    for (std::size_t i = 0; i < n; ++i) r[i] -= b * data.x(i, k);
  }
  double l1 = 0.0;
  for (double b : fit.beta) l1 += std::abs(b);

  ColumnFit out;
  out.gamma_full = fit.beta;
  out.tau_sq = sum_sq(r) / static_cast<double>(n) + 2.0 * lambda_j * l1;
  return out;
}

}  // namespace

NodewiseResult nodewise_regression(const Dataset& data, const std::vector<double>& lambda_node,
                                   const NodewiseOptions& opts) {
  validate(data);
  const std::size_t n = data.n(), p = data.p();
  if (lambda_node.size() != p)
    throw std::invalid_argument("nodewise_regression: need one lambda per column");
  for (double l : lambda_node)
    if (l <= 0.0) throw std::invalid_argument("nodewise_regression: lambda_j must be positive");

  Matrix g_norm = gram(data.x);
  for (double& v : g_norm.data) v /= static_cast<double>(n);
  std::vector<double> col_sq_n(p);
  for (std::size_t j = 0; j < p; ++j) col_sq_n[j] = g_norm(j, j);

  std::vector<ColumnFit> fits(p);
  if (opts.parallel) {
    const std::ptrdiff_t pp = static_cast<std::ptrdiff_t>(p);
#pragma omp parallel for schedule(dynamic)
    for (std::ptrdiff_t j = 0; j < pp; ++j)
      fits[j] = fit_column(data, g_norm, col_sq_n, static_cast<std::size_t>(j),
                           lambda_node[static_cast<std::size_t>(j)], opts);
  } else {
    for (std::size_t j = 0; j < p; ++j)
      fits[j] = fit_column(data, g_norm, col_sq_n, j, lambda_node[j], opts);
  }

  NodewiseResult nw;
  nw.theta_hat = Matrix(p, p);
  nw.tau_sq.resize(p);
  nw.gamma = Matrix(p, p - 1);
  nw.lambda_node = lambda_node;

  for (std::size_t j = 0; j < p; ++j) {
    const double tau = fits[j].tau_sq;
    if (!(tau > 0.0))
      throw std::runtime_error("nodewise_regression: degenerate column " + std::to_string(j + 1) +
                               " (tau_j^2 = " + std::to_string(tau) + ")");
    nw.tau_sq[j] = tau;
    const double inv = 1.0 / tau;
    nw.theta_hat(j, j) = inv;
    for (std::size_t k = 0; k < p; ++k) {
      if (k == j) continue;
      const double gk = fits[j].gamma_full[k];
      nw.gamma(j, k < j ? k : k - 1) = gk;
      nw.theta_hat(j, k) = -gk * inv;
    }
  }
  return nw;
}

double default_lambda_node(std::size_t n, std::size_t p, double kappa) {
  if (n < 2 || p < 2) throw std::invalid_argument("default_lambda_node: n, p >= 2 required");
  if (kappa <= 0.0) throw std::invalid_argument("default_lambda_node: kappa must be positive");
  return kappa * std::sqrt(std::log(static_cast<double>(p)) / static_cast<double>(n));
}

std::size_t max_row_support(const NodewiseResult& nw) {
  std::size_t worst = 0;
  for (std::size_t j = 0; j < nw.gamma.rows; ++j) {
    std::size_t cnt = 0;
    for (std::size_t k = 0; k < nw.gamma.cols; ++k)
      if (nw.gamma(j, k) != 0.0) ++cnt;
    worst = std::max(worst, cnt);
  }
  return worst;
}

}  // namespace fnc
