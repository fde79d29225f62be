#pragma once

#include <vector>

#include "fnc/types.hpp"

namespace fnc {

// One-step debiasing of a Lasso fit plus the pieces needed to standardize
// it. Pure functions; safe to call concurrently.

/// b_hat = beta_hat + Theta X^T (y - X beta_hat) / n
std::vector<double> debias(const LassoFit& fit, const NodewiseResult& nodewise,
                           const Dataset& data);

/// Theta (X^T X / n) Theta^T, symmetrized by averaging with its transpose.
Matrix omega_hat(const NodewiseResult& nodewise, const Dataset& data);

/// Residual noise-scale estimate sigma^2 = ||y - X beta_hat||^2 / (n - s0)
/// with s0 the number of nonzero coefficients. Returns 0 for an exact fit;
/// callers treat that as degenerate (standardize refuses sigma = 0).
double estimate_sigma(const Dataset& data, const LassoFit& fit);

/// z_j = sqrt(n) b_hat_j / (sigma sqrt(omega_jj))
std::vector<double> standardize(const std::vector<double>& b_hat,
                                const std::vector<double>& omega_diag, double sigma,
                                std::size_t n);
std::vector<double> standardize(const std::vector<double>& b_hat, const Matrix& omega,
                                double sigma, std::size_t n);

/// Assemble the full DebiasedFit; sigma <= 0 requests estimation.
DebiasedFit make_debiased_fit(const LassoFit& fit, const NodewiseResult& nodewise,
                              const Dataset& data, double sigma_provided = 0.0);

/// Split sqrt(n)(b_hat - beta) = w - delta using the known beta and realized
/// noise; includes the standardized versions and the signal means mu_j.
DecompositionCheck make_decomposition_check(const LassoFit& fit, const NodewiseResult& nodewise,
                                            const Dataset& data, const std::vector<double>& beta_true,
                                            const std::vector<double>& eps, double sigma);

}  // namespace fnc
