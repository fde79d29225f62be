#pragma once

#include <cstdint>
#include <vector>

#include "fnc/types.hpp"

namespace fnc {

// Synthetic-scenario generation: random sparse precision graphs, Gaussian
// designs drawn from the implied covariance, flat coefficient vectors, and
// Gaussian responses. Everything is a pure function of (parameters, seed).

struct PrecisionGraph {
  Matrix theta;       // symmetric, unit diagonal, min eigenvalue >= 0.05
  std::size_t s_max;  // realized max off-diagonal row support
};

/// Random-graph precision matrix: each pair (i, j), i < j, carries an entry
/// with probability theta_edge, magnitude Uniform[mag_lo, mag_hi]. The matrix
/// is shifted and rescaled to unit diagonal so its minimum eigenvalue is at
/// least 0.05.
PrecisionGraph gen_precision_er(std::size_t p, double theta_edge, double mag_lo, double mag_hi,
                                std::uint64_t seed, bool random_sign = false);

/// n i.i.d. rows from N_p(0, precision^{-1}) via the Cholesky factor of the
/// precision matrix. Throws on a non-positive-definite input.
Matrix gen_design(std::size_t n, const Matrix& precision, std::uint64_t seed);

/// beta = (beta1, ..., beta1, 0, ..., 0) with s leading nonzeros.
GroundTruth make_beta(std::size_t p, std::size_t s, double beta1);

struct Response {
  std::vector<double> y;
  std::vector<double> eps;  // realized noise, kept for decomposition checks
};

/// y = X beta + sigma * g with g standard normal.
Response gen_response(const Matrix& x, const std::vector<double>& beta, double sigma,
                      std::uint64_t seed);

}  // namespace fnc
