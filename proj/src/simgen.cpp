#include "fnc/simgen.hpp"

#include <cmath>
#include <stdexcept>

#include "fnc/rng.hpp"

namespace fnc {

PrecisionGraph gen_precision_er(std::size_t p, double theta_edge, double mag_lo, double mag_hi,
                                std::uint64_t seed, bool random_sign) {
  if (p < 1) throw std::invalid_argument("gen_precision_er: p >= 1 required");
  if (theta_edge < 0.0 || theta_edge > 1.0)
    throw std::invalid_argument("gen_precision_er: edge probability must lie in [0,1]");
  if (!(mag_lo > 0.0) || mag_hi < mag_lo)
    throw std::invalid_argument("gen_precision_er: need 0 < mag_lo <= mag_hi");

  Matrix a(p, p);
  SplitMix64 rng(derive_seed(seed, kStreamErGraph));
  for (std::size_t i = 0; i < p; ++i) a(i, i) = 1.0;
  for (std::size_t i = 0; i < p; ++i) {
    for (std::size_t j = i + 1; j < p; ++j) {
      if (rng.uniform01() >= theta_edge) continue;
      double mag = rng.uniform(mag_lo, mag_hi);
      if (random_sign && rng.uniform01() < 0.5) mag = -mag;
      a(i, j) = mag;
      a(j, i) = mag;
    }
  }

  std::size_t s_max = 0;
  for (std::size_t i = 0; i < p; ++i) {
    std::size_t cnt = 0;
    for (std::size_t j = 0; j < p; ++j)
      if (j != i && a(i, j) != 0.0) ++cnt;
    s_max = std::max(s_max, cnt);
  }

  // Positive-definiteness repair: shift by zeta*I, then rescale back to unit
  // diagonal. The shift is sized so the minimum eigenvalue is still >= 0.05
  // after the rescale divides every eigenvalue by 1 + zeta.
  const double floor = 0.05;
  const double lambda_min = min_symmetric_eigenvalue(a);
  if (lambda_min < floor) {
    const double zeta = (floor - lambda_min) / (1.0 - floor) + 1e-12;
    const double scale = 1.0 + zeta;
    for (std::size_t i = 0; i < p; ++i) {
      for (std::size_t j = 0; j < p; ++j) {
        if (i == j)
          a(i, j) = 1.0;
        else
          a(i, j) /= scale;
      }
    }
  }
  return PrecisionGraph{std::move(a), s_max};
}

Matrix gen_design(std::size_t n, const Matrix& precision, std::uint64_t seed) {
  if (precision.rows != precision.cols)
    throw std::invalid_argument("gen_design: precision matrix must be square");
  const std::size_t p = precision.rows;
  Matrix l;
  try {
    l = cholesky_lower(precision);
  } catch (const std::exception& e) {
    throw std::runtime_error(std::string("gen_design: factorization failed: ") + e.what());
  }

  // x_i = L^{-T} g_i has covariance (L L^T)^{-1} = precision^{-1}
  Matrix x(n, p);
  SplitMix64 rng(derive_seed(seed, kStreamDesign));
  for (double& v : x.data) v = rng.normal();

  const std::ptrdiff_t nn = static_cast<std::ptrdiff_t>(n);
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t i = 0; i < nn; ++i) {
    std::vector<double> g(x.row_ptr(static_cast<std::size_t>(i)),
                          x.row_ptr(static_cast<std::size_t>(i)) + p);
    const std::vector<double> row = solve_upper_from_lower(l, g);
    for (std::size_t j = 0; j < p; ++j) x(static_cast<std::size_t>(i), j) = row[j];
  }
  return x;
}

GroundTruth make_beta(std::size_t p, std::size_t s, double beta1) {
  if (s > p) throw std::invalid_argument("make_beta: s <= p required");
  if (s > 0 && beta1 == 0.0)
    throw std::invalid_argument("make_beta: beta1 must be nonzero when s > 0");
  GroundTruth t;
  t.beta.assign(p, 0.0);
  t.s = s;
  for (std::size_t j = 0; j < s; ++j) {
    t.beta[j] = beta1;
    t.support.push_back(j);
  }
  return t;
}

Response gen_response(const Matrix& x, const std::vector<double>& beta, double sigma,
                      std::uint64_t seed) {
  if (x.cols != beta.size()) throw std::invalid_argument("gen_response: dimension mismatch");
  if (sigma < 0.0) throw std::invalid_argument("gen_response: sigma must be nonnegative");
  Response r;
  r.eps.resize(x.rows);
  SplitMix64 rng(derive_seed(seed, kStreamResponse));
  for (double& v : r.eps) v = sigma * rng.normal();
  r.y = matvec(x, beta);
  for (std::size_t i = 0; i < x.rows; ++i) r.y[i] += r.eps[i];
  return r;
}

}  // namespace fnc
