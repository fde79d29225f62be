#pragma once

#include <cmath>

namespace fnc {

// Standard normal tail helpers. The survival function goes through erfc so
// that tail products like 2*(p - s_hat)*Phi(-t) keep relative accuracy for
// large t instead of cancelling through 1 - Phi(t).

// Phi(x): standard normal CDF
inline double normal_cdf(double x) { return 0.5 * std::erfc(-x / std::sqrt(2.0)); }

// Phi_bar(t) = 1 - Phi(t) = Phi(-t)
inline double normal_sf(double t) { return 0.5 * std::erfc(t / std::sqrt(2.0)); }

// sigma_bar(t) = sqrt(2*Phi_bar(t) * (1 - 2*Phi_bar(t)))
inline double sigma_bar(double t) {
  const double sf = normal_sf(t);
  const double v = 2.0 * sf * (1.0 - 2.0 * sf);
  return v > 0.0 ? std::sqrt(v) : 0.0;
}

}  // namespace fnc
