#include "fnc/lasso.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "fnc/rng.hpp"

namespace fnc {

namespace {

double soft_threshold(double z, double lambda) {
  if (z > lambda) return z - lambda;
  if (z < -lambda) return z + lambda;
  return 0.0;
}

// KKT residual on the scale of the gradient x_j^T (y - X beta) / n:
// active coordinates must sit on lambda * sign(beta_j), inactive ones inside
// the [-lambda, lambda] tube.
double kkt_residual_from_grad(const std::vector<double>& grad, const std::vector<double>& beta,
                              double lambda, std::ptrdiff_t exclude) {
  double worst = 0.0;
  for (std::size_t j = 0; j < beta.size(); ++j) {
    if (static_cast<std::ptrdiff_t>(j) == exclude) continue;
    if (beta[j] != 0.0)
      worst = std::max(worst, std::abs(grad[j] - lambda * (beta[j] > 0.0 ? 1.0 : -1.0)));
    else
      worst = std::max(worst, std::max(0.0, std::abs(grad[j]) - lambda));
  }
  return worst;
}

}  // namespace

GramFitResult fit_lasso_gram(const GramProblem& prob, double lambda, double tol, int max_iter,
                             std::vector<double>* sweep_objectives) {
  const Matrix& g = *prob.gram;
  const std::vector<double>& c = *prob.corr;
  const std::size_t p = g.rows;
  const std::ptrdiff_t excl = prob.exclude_index;

  GramFitResult res;
  res.beta.assign(p, 0.0);
  std::vector<double> q(p, 0.0);  // q = G beta, updated incrementally
  if (sweep_objectives) sweep_objectives->clear();

  for (int sweep = 1; sweep <= max_iter; ++sweep) {
    double max_change = 0.0;
    for (std::size_t j = 0; j < p; ++j) {
      if (static_cast<std::ptrdiff_t>(j) == excl) continue;
      const double gjj = g(j, j);
      if (gjj <= 0.0) continue;
      const double zj = c[j] - q[j] + gjj * res.beta[j];
      const double nb = soft_threshold(zj, lambda) / gjj;
      const double d = nb - res.beta[j];
      if (d != 0.0) {
        res.beta[j] = nb;
        axpy(d, g.row_ptr(j), q.data(), p);
        max_change = std::max(max_change, std::abs(d));
      }
    }
    res.sweeps = sweep;

    if (sweep_objectives) {
      double l1 = 0.0, quad = 0.0, lin = 0.0;
      for (std::size_t j = 0; j < p; ++j) {
        l1 += std::abs(res.beta[j]);
        quad += res.beta[j] * q[j];
        lin += res.beta[j] * c[j];
      }
      sweep_objectives->push_back(prob.yty_n - 2.0 * lin + quad + 2.0 * lambda * l1);
    }

    if (max_change < tol) {
      // resync q against drift, then verify KKT honestly
      std::fill(q.begin(), q.end(), 0.0);
      for (std::size_t j = 0; j < p; ++j)
        if (res.beta[j] != 0.0) axpy(res.beta[j], g.row_ptr(j), q.data(), p);
      std::vector<double> grad(p);
      for (std::size_t j = 0; j < p; ++j) grad[j] = c[j] - q[j];
      res.kkt_residual = kkt_residual_from_grad(grad, res.beta, lambda, excl);
      if (res.kkt_residual <= tol) {
        res.converged = true;
        return res;
      }
    }
  }

  // best effort: report the honest KKT residual of the last iterate
  std::vector<double> q2(p, 0.0);
  for (std::size_t j = 0; j < p; ++j)
    if (res.beta[j] != 0.0) axpy(res.beta[j], g.row_ptr(j), q2.data(), p);
  std::vector<double> grad(p);
  for (std::size_t j = 0; j < p; ++j) grad[j] = c[j] - q2[j];
  res.kkt_residual = kkt_residual_from_grad(grad, res.beta, lambda, excl);
  res.converged = res.kkt_residual <= tol;
  return res;
}

namespace {

// residual-update coordinate descent for p beyond the Gram cache limit
GramFitResult fit_lasso_residual(const Dataset& data, double lambda, double tol, int max_iter,
                                 std::vector<double>* sweep_objectives) {
  const std::size_t n = data.n(), p = data.p();
  const double dn = static_cast<double>(n);
  std::vector<double> col_sq(p);
  for (std::size_t j = 0; j < p; ++j) {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) s += data.x(i, j) * data.x(i, j);
    col_sq[j] = s / dn;
  }

  GramFitResult res;
  res.beta.assign(p, 0.0);
  std::vector<double> r = data.y;
  if (sweep_objectives) sweep_objectives->clear();

  std::vector<double> col(n);
  for (int sweep = 1; sweep <= max_iter; ++sweep) {
    double max_change = 0.0;
    for (std::size_t j = 0; j < p; ++j) {
      if (col_sq[j] <= 0.0) continue;
      double xr = 0.0;
      for (std::size_t i = 0; i < n; ++i) xr += data.x(i, j) * r[i];
      const double zj = xr / dn + col_sq[j] * res.beta[j];
      const double nb = soft_threshold(zj, lambda) / col_sq[j];
      const double d = nb - res.beta[j];
      if (d != 0.0) {
        res.beta[j] = nb;
        for (std::size_t i = 0; i < n; ++i) r[i] -= d * data.x(i, j);
        max_change = std::max(max_change, std::abs(d));
      }
    }
    res.sweeps = sweep;

    if (sweep_objectives) {
      double l1 = 0.0;
      for (double b : res.beta) l1 += std::abs(b);
      sweep_objectives->push_back(sum_sq(r) / dn + 2.0 * lambda * l1);
    }

    if (max_change < tol) {
      std::vector<double> grad = matvec_transpose(data.x, r);
      for (double& gj : grad) gj /= dn;
      res.kkt_residual = kkt_residual_from_grad(grad, res.beta, lambda, -1);
      if (res.kkt_residual <= tol) {
        res.converged = true;
        return res;
      }
    }
  }

  std::vector<double> grad = matvec_transpose(data.x, r);
  for (double& gj : grad) gj /= dn;
  res.kkt_residual = kkt_residual_from_grad(grad, res.beta, lambda, -1);
  res.converged = res.kkt_residual <= tol;
  return res;
}

}  // namespace

LassoFit fit_lasso(const Dataset& data, double lambda, const LassoOptions& opts,
                   std::vector<double>* sweep_objectives) {
  if (lambda < 0.0) throw std::invalid_argument("fit_lasso: lambda must be nonnegative");
  validate(data);

  const std::size_t n = data.n(), p = data.p();
  const double dn = static_cast<double>(n);

  GramFitResult core;
  if (p <= opts.gram_limit) {
    Matrix g = gram(data.x);
    for (double& v : g.data) v /= dn;
    std::vector<double> c = matvec_transpose(data.x, data.y);
    for (double& v : c) v /= dn;
    GramProblem prob;
    prob.gram = &g;
    prob.corr = &c;
    prob.yty_n = sum_sq(data.y) / dn;
    core = fit_lasso_gram(prob, lambda, opts.tol, opts.max_iter, sweep_objectives);
  } else {
    core = fit_lasso_residual(data, lambda, opts.tol, opts.max_iter, sweep_objectives);
  }

  LassoFit fit;
  fit.beta_hat = std::move(core.beta);
  fit.lambda = lambda;
  fit.iterations = core.sweeps;
  fit.converged = core.converged;
  fit.kkt_residual = core.kkt_residual;
  fit.tol = opts.tol;

  std::vector<double> r = data.y;
  const std::vector<double> xb = matvec(data.x, fit.beta_hat);
  for (std::size_t i = 0; i < n; ++i) r[i] -= xb[i];
  double l1 = 0.0;
  for (double b : fit.beta_hat) l1 += std::abs(b);
  fit.objective = sum_sq(r) / dn + 2.0 * lambda * l1;
  return fit;
}

double default_lambda(std::size_t n, std::size_t p, double sigma) {
  if (n < 2 || p < 2) throw std::invalid_argument("default_lambda: n, p >= 2 required");
  if (sigma < 0.0) throw std::invalid_argument("default_lambda: sigma must be nonnegative");
  return 8.0 * sigma * std::sqrt(std::log(static_cast<double>(p)) / static_cast<double>(n));
}

double lambda_max(const Dataset& data) {
  std::vector<double> c = matvec_transpose(data.x, data.y);
  return max_abs(c) / static_cast<double>(data.n());
}

std::vector<double> lambda_grid_geometric(double lambda_hi, std::size_t size, double min_ratio) {
  if (lambda_hi <= 0.0 || size == 0 || min_ratio <= 0.0 || min_ratio > 1.0)
    throw std::invalid_argument("lambda_grid_geometric: bad parameters");
  std::vector<double> grid(size);
  if (size == 1) {
    grid[0] = lambda_hi;
    return grid;
  }
  const double step = std::pow(min_ratio, 1.0 / static_cast<double>(size - 1));
  double v = lambda_hi;
  for (std::size_t k = 0; k < size; ++k) {
    grid[k] = v;
    v *= step;
  }
  return grid;
}

double select_lambda_cv(const Dataset& data, int folds, std::vector<double> lambda_grid,
                        std::uint64_t seed) {
  validate(data);
  const std::size_t n = data.n(), p = data.p();
  if (folds < 2 || static_cast<std::size_t>(folds) > n)
    throw std::invalid_argument("select_lambda_cv: need 2 <= folds <= n");
  if (lambda_grid.empty()) throw std::invalid_argument("select_lambda_cv: empty lambda grid");
  for (double l : lambda_grid)
    if (l <= 0.0) throw std::invalid_argument("select_lambda_cv: grid entries must be positive");

  std::sort(lambda_grid.begin(), lambda_grid.end(), std::greater<>());
  lambda_grid.erase(std::unique(lambda_grid.begin(), lambda_grid.end()), lambda_grid.end());

  // seeded fold assignment: permute indices, deal them round robin
  std::vector<std::size_t> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  SplitMix64 rng(derive_seed(seed, kStreamCvFolds));
  for (std::size_t i = n; i-- > 1;) {
    const std::size_t j = static_cast<std::size_t>(rng.bounded(i + 1));
    std::swap(perm[i], perm[j]);
  }
  std::vector<int> fold_of(n);
  for (std::size_t i = 0; i < n; ++i) fold_of[perm[i]] = static_cast<int>(i % folds);

  const double dn = static_cast<double>(n);
  Matrix g_raw = gram(data.x);  // X^T X, unnormalized for exact fold subtraction
  std::vector<double> c_raw = matvec_transpose(data.x, data.y);

  // per-fold error table summed in fixed order afterwards, so the result is
  // independent of how the fold loop is scheduled
  Matrix fold_err(static_cast<std::size_t>(folds), lambda_grid.size());
  const LassoOptions cv_opts{1e-6, 4000, 2000};

#pragma omp parallel for schedule(dynamic)
  for (int k = 0; k < folds; ++k) {
    std::vector<std::size_t> held;
    for (std::size_t i = 0; i < n; ++i)
      if (fold_of[i] == k) held.push_back(i);
    const double n_tr = dn - static_cast<double>(held.size());
    if (n_tr < 1.0) continue;

    Matrix g_tr = g_raw;
    std::vector<double> c_tr = c_raw;
    double yty_tr = sum_sq(data.y);
    for (std::size_t i : held) {
      const double* xi = data.x.row_ptr(i);
      for (std::size_t a = 0; a < p; ++a) {
        if (xi[a] == 0.0) continue;
        axpy(-xi[a], xi, g_tr.row_ptr(a), p);
      }
      axpy(-data.y[i], xi, c_tr.data(), p);
      yty_tr -= data.y[i] * data.y[i];
    }
    for (double& v : g_tr.data) v /= n_tr;
    for (double& v : c_tr) v /= n_tr;
    yty_tr /= n_tr;

    GramProblem prob;
    prob.gram = &g_tr;
    prob.corr = &c_tr;
    prob.yty_n = yty_tr;

    for (std::size_t li = 0; li < lambda_grid.size(); ++li) {
      const GramFitResult fit = fit_lasso_gram(prob, lambda_grid[li], cv_opts.tol, cv_opts.max_iter);
      double err = 0.0;
      for (std::size_t i : held) {
        const double pred = dot(data.x.row_ptr(i), fit.beta.data(), p);
        const double e = data.y[i] - pred;
        err += e * e;
      }
      fold_err(static_cast<std::size_t>(k), li) = err;
    }
  }

  std::vector<double> total_sq_err(lambda_grid.size(), 0.0);
  for (int k = 0; k < folds; ++k)
    for (std::size_t li = 0; li < lambda_grid.size(); ++li)
      total_sq_err[li] += fold_err(static_cast<std::size_t>(k), li);

  std::size_t best = 0;
  for (std::size_t li = 1; li < lambda_grid.size(); ++li)
    if (total_sq_err[li] < total_sq_err[best]) best = li;  // strict: ties keep larger lambda
  return lambda_grid[best];
}

}  // namespace fnc
