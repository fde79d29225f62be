#include "fnc/debias.hpp"

#include <cmath>
#include <stdexcept>

namespace fnc {

namespace {

std::vector<double> lasso_residual(const LassoFit& fit, const Dataset& data) {
  std::vector<double> r = data.y;
  const std::vector<double> xb = matvec(data.x, fit.beta_hat);
  for (std::size_t i = 0; i < r.size(); ++i) r[i] -= xb[i];
  return r;
}

}  // namespace

std::vector<double> debias(const LassoFit& fit, const NodewiseResult& nodewise,
                           const Dataset& data) {
  const std::size_t p = data.p();
  if (fit.beta_hat.size() != p || nodewise.theta_hat.rows != p)
    throw std::invalid_argument("debias: dimension mismatch");
  const std::vector<double> r = lasso_residual(fit, data);
  std::vector<double> u = matvec_transpose(data.x, r);
  for (double& v : u) v /= static_cast<double>(data.n());
  std::vector<double> correction = matvec(nodewise.theta_hat, u);
  std::vector<double> b = fit.beta_hat;
  for (std::size_t j = 0; j < p; ++j) b[j] += correction[j];
  return b;
}

Matrix omega_hat(const NodewiseResult& nodewise, const Dataset& data) {
  const std::size_t p = data.p();
  if (nodewise.theta_hat.rows != p) throw std::invalid_argument("omega_hat: dimension mismatch");
  Matrix sigma_hat = gram(data.x);
  for (double& v : sigma_hat.data) v /= static_cast<double>(data.n());
  const Matrix ts = matmul(nodewise.theta_hat, sigma_hat);
  Matrix omega = matmul_transb(ts, nodewise.theta_hat);
  for (std::size_t i = 0; i < p; ++i)
    for (std::size_t j = i + 1; j < p; ++j) {
      const double avg = 0.5 * (omega(i, j) + omega(j, i));
      omega(i, j) = avg;
      omega(j, i) = avg;
    }
  return omega;
}

double estimate_sigma(const Dataset& data, const LassoFit& fit) {
  const std::size_t n = data.n();
  std::size_t s0 = 0;
  for (double b : fit.beta_hat)
    if (b != 0.0) ++s0;
  if (s0 >= n)
    throw std::runtime_error("estimate_sigma: degrees of freedom exhausted (" +
                             std::to_string(s0) + " nonzeros, n = " + std::to_string(n) + ")");
  const std::vector<double> r = lasso_residual(fit, data);
  return std::sqrt(sum_sq(r) / static_cast<double>(n - s0));
}

std::vector<double> standardize(const std::vector<double>& b_hat,
                                const std::vector<double>& omega_diag, double sigma,
                                std::size_t n) {
  if (!(sigma > 0.0)) throw std::invalid_argument("standardize: sigma must be positive");
  if (b_hat.size() != omega_diag.size())
    throw std::invalid_argument("standardize: dimension mismatch");
  const double rootn = std::sqrt(static_cast<double>(n));
  std::vector<double> z(b_hat.size());
  for (std::size_t j = 0; j < b_hat.size(); ++j) {
    if (!(omega_diag[j] > 0.0))
      throw std::invalid_argument("standardize: omega diagonal entry " + std::to_string(j + 1) +
                                  " not positive");
    z[j] = rootn * b_hat[j] / (sigma * std::sqrt(omega_diag[j]));
  }
  return z;
}

std::vector<double> standardize(const std::vector<double>& b_hat, const Matrix& omega,
                                double sigma, std::size_t n) {
  std::vector<double> diag(omega.rows);
  for (std::size_t j = 0; j < omega.rows; ++j) diag[j] = omega(j, j);
  return standardize(b_hat, diag, sigma, n);
}

DebiasedFit make_debiased_fit(const LassoFit& fit, const NodewiseResult& nodewise,
                              const Dataset& data, double sigma_provided) {
  DebiasedFit out;
  out.b_hat = debias(fit, nodewise, data);
  out.omega_hat = omega_hat(nodewise, data);
  if (sigma_provided > 0.0) {
    out.sigma_hat = sigma_provided;
    out.sigma_source = SigmaSource::provided;
  } else {
    out.sigma_hat = estimate_sigma(data, fit);
    out.sigma_source = SigmaSource::estimated;
  }
  out.z = standardize(out.b_hat, out.omega_hat, out.sigma_hat, data.n());
  return out;
}

DecompositionCheck make_decomposition_check(const LassoFit& fit, const NodewiseResult& nodewise,
                                            const Dataset& data, const std::vector<double>& beta_true,
                                            const std::vector<double>& eps, double sigma) {
  const std::size_t n = data.n(), p = data.p();
  if (beta_true.size() != p || eps.size() != n)
    throw std::invalid_argument("decomposition_check: dimension mismatch");
  if (!(sigma > 0.0)) throw std::invalid_argument("decomposition_check: sigma must be positive");

  const double rootn = std::sqrt(static_cast<double>(n));

  // w = Theta X^T eps / sqrt(n)
  std::vector<double> u = matvec_transpose(data.x, eps);
  DecompositionCheck out;
  out.w = matvec(nodewise.theta_hat, u);
  for (double& v : out.w) v /= rootn;

  // delta = sqrt(n) (Theta Sigma - I)(beta_hat - beta)
  Matrix sig = gram(data.x);
  for (double& v : sig.data) v /= static_cast<double>(n);
  std::vector<double> diff(p);
  for (std::size_t j = 0; j < p; ++j) diff[j] = fit.beta_hat[j] - beta_true[j];
  const std::vector<double> sd = matvec(sig, diff);
  std::vector<double> tsd = matvec(nodewise.theta_hat, sd);
  out.delta.resize(p);
  for (std::size_t j = 0; j < p; ++j) out.delta[j] = rootn * (tsd[j] - diff[j]);

  const Matrix omega = omega_hat(nodewise, data);
  out.w_prime.resize(p);
  out.delta_prime.resize(p);
  out.mu.resize(p);
  for (std::size_t j = 0; j < p; ++j) {
    const double denom = sigma * std::sqrt(omega(j, j));
    out.w_prime[j] = out.w[j] / denom;
    out.delta_prime[j] = out.delta[j] / denom;
    out.mu[j] = rootn * beta_true[j] / denom;
  }
  return out;
}

}  // namespace fnc
