#include "fnc/types.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "fnc/gauss.hpp"

namespace fnc {

namespace {

[[noreturn]] void fail(const std::string& what) { throw std::runtime_error("invariant violated: " + what); }

void require(bool ok, const std::string& what) {
  if (!ok) fail(what);
}

bool all_finite(const std::vector<double>& v) {
  return std::all_of(v.begin(), v.end(), [](double x) { return std::isfinite(x); });
}

}  // namespace

void validate(const Dataset& d) {
  require(d.x.rows == d.y.size(), "Dataset: row count of x equals length of y");
  require(d.p() >= 2, "Dataset: p >= 2");
  require(d.n() >= 2, "Dataset: n >= 2");
  require(all_finite(d.x.data), "Dataset: all x entries finite");
  require(all_finite(d.y), "Dataset: all y entries finite");
}

void validate(const GroundTruth& t) {
  std::vector<std::size_t> nz;
  for (std::size_t j = 0; j < t.beta.size(); ++j)
    if (t.beta[j] != 0.0) nz.push_back(j);
  require(nz == t.support, "GroundTruth: support equals nonzero positions of beta");
  require(t.s == t.support.size(), "GroundTruth: s = |support|");
  require(t.s <= t.beta.size(), "GroundTruth: s <= p");
  require(t.sigma > 0.0, "GroundTruth: sigma > 0");
}

void validate(const LassoFit& fit, const Dataset& d) {
  require(fit.beta_hat.size() == d.p(), "LassoFit: beta_hat length p");
  require(fit.lambda >= 0.0, "LassoFit: lambda nonnegative");
  std::vector<double> r = d.y;
  const std::vector<double> xb = matvec(d.x, fit.beta_hat);
  for (std::size_t i = 0; i < r.size(); ++i) r[i] -= xb[i];
  double l1 = 0.0;
  for (double b : fit.beta_hat) l1 += std::abs(b);
  const double obj = sum_sq(r) / static_cast<double>(d.n()) + 2.0 * fit.lambda * l1;
  require(std::abs(obj - fit.objective) <= 1e-10 * std::max(1.0, std::abs(obj)),
          "LassoFit: stored objective matches recomputation");
  if (fit.converged)
    require(fit.kkt_residual <= fit.tol, "LassoFit: KKT residual below solver tolerance");
}

void validate(const NodewiseResult& nw) {
  const std::size_t p = nw.theta_hat.rows;
  require(nw.theta_hat.cols == p, "NodewiseResult: theta_hat square");
  require(nw.tau_sq.size() == p, "NodewiseResult: tau_sq length p");
  require(nw.gamma.rows == p && nw.gamma.cols == p - 1, "NodewiseResult: gamma shape p x (p-1)");
  for (std::size_t j = 0; j < p; ++j) {
    require(nw.tau_sq[j] > 0.0, "NodewiseResult: tau_sq positive");
    const double inv = 1.0 / nw.tau_sq[j];
    require(std::abs(nw.theta_hat(j, j) - inv) <= 1e-12 * inv,
            "NodewiseResult: diagonal equals 1/tau_sq");
    for (std::size_t k = 0; k < p; ++k) {
      if (k == j) continue;
      const std::size_t g = k < j ? k : k - 1;
      const double expect = -nw.gamma(j, g) * inv;
      require(std::abs(nw.theta_hat(j, k) - expect) <= 1e-12 * std::max(1.0, std::abs(expect)),
              "NodewiseResult: row assembly matches -gamma/tau_sq");
    }
  }
}

void validate(const DebiasedFit& fit, std::size_t n) {
  const std::size_t p = fit.b_hat.size();
  require(fit.omega_hat.rows == p && fit.omega_hat.cols == p, "DebiasedFit: omega_hat p x p");
  require(fit.z.size() == p, "DebiasedFit: z length p");
  require(fit.sigma_hat > 0.0, "DebiasedFit: sigma positive");
  double max_asym = 0.0;
  for (std::size_t i = 0; i < p; ++i)
    for (std::size_t j = i + 1; j < p; ++j)
      max_asym = std::max(max_asym, std::abs(fit.omega_hat(i, j) - fit.omega_hat(j, i)));
  require(max_asym <= 1e-10, "DebiasedFit: omega_hat symmetric within 1e-10");
  const double rootn = std::sqrt(static_cast<double>(n));
  for (std::size_t j = 0; j < p; ++j) {
    const double d = fit.omega_hat(j, j);
    require(d > 0.0, "DebiasedFit: omega_hat diagonal positive");
    const double zj = rootn * fit.b_hat[j] / (fit.sigma_hat * std::sqrt(d));
    require(std::abs(zj - fit.z[j]) <= 1e-12 * std::max(1.0, std::abs(zj)),
            "DebiasedFit: z consistent with b_hat, sigma, omega diagonal");
  }
}

void validate(const DecompositionCheck& dc, const std::vector<double>& b_hat,
              const std::vector<double>& beta_true, std::size_t n) {
  const std::size_t p = b_hat.size();
  require(dc.w.size() == p && dc.delta.size() == p && dc.w_prime.size() == p &&
              dc.delta_prime.size() == p && dc.mu.size() == p,
          "DecompositionCheck: aligned fields of length p");
  const double rootn = std::sqrt(static_cast<double>(n));
  for (std::size_t j = 0; j < p; ++j) {
    const double lhs = rootn * (b_hat[j] - beta_true[j]);
    require(std::abs(lhs - (dc.w[j] - dc.delta[j])) <= 1e-8,
            "DecompositionCheck: sqrt(n)(b - beta) = w - delta entrywise");
  }
}

void validate(const NullCalibration& cal) {
  require(static_cast<int>(cal.samples.size()) + cal.degenerate == cal.reps,
          "NullCalibration: samples plus degenerate replicates account for reps");
  require(!cal.samples.empty(), "NullCalibration: at least one valid sample");
  std::vector<double> sorted = cal.samples;
  std::sort(sorted.begin(), sorted.end());
  const auto b = static_cast<std::size_t>(sorted.size());
  auto idx = static_cast<std::size_t>(
      std::ceil((1.0 - cal.alpha) * static_cast<double>(b)));
  idx = std::clamp<std::size_t>(idx, 1, b);
  require(cal.c_tilde == sorted[idx - 1],
          "NullCalibration: c_tilde is the empirical (1-alpha)-quantile of samples");
  if (cal.has_grid) {
    require(!cal.grid.empty(), "NullCalibration: grid nonempty when present");
    require(cal.star_samples.size() == cal.samples.size(),
            "NullCalibration: star samples align with samples");
  }
}

void validate(const SignalEstimate& est, std::size_t p) {
  const double clamped = std::clamp(est.pi_raw, 0.0, 1.0);
  require(est.pi_hat == clamped, "SignalEstimate: pi_hat = clamp(pi_raw, 0, 1)");
  require(est.s_hat == static_cast<std::size_t>(std::llround(est.pi_hat * static_cast<double>(p))),
          "SignalEstimate: s_hat = round(pi_hat * p)");
}

void validate(const FnpCurve& curve, std::size_t p) {
  require(curve.thresholds.size() == p, "FnpCurve: one threshold per coordinate");
  require(curve.order.size() == p && curve.r_counts.size() == p &&
              curve.fnp_hat.size() == p && curve.fnp_raw.size() == p,
          "FnpCurve: aligned fields");
  require(curve.s_hat >= 1, "FnpCurve: s_hat >= 1");
  for (std::size_t k = 1; k < p; ++k) {
    require(curve.thresholds[k - 1] >= curve.thresholds[k], "FnpCurve: thresholds descending");
    require(curve.r_counts[k - 1] <= curve.r_counts[k],
            "FnpCurve: r_counts nondecreasing along descending thresholds");
  }
  const double s = static_cast<double>(curve.s_hat);
  const double pd = static_cast<double>(p);
  for (std::size_t k = 0; k < p; ++k) {
    const double expect =
        1.0 - (static_cast<double>(curve.r_counts[k]) - 2.0 * (pd - s) * normal_sf(curve.thresholds[k])) / s;
    require(std::abs(expect - curve.fnp_raw[k]) <= 1e-12 * std::max(1.0, std::abs(expect)),
            "FnpCurve: fnp_raw consistent with r, p, s_hat");
    require(curve.fnp_hat[k] == std::clamp(curve.fnp_raw[k], 0.0, 1.0),
            "FnpCurve: fnp_hat is the clamped value");
  }
}

void validate(const SelectionResult& sel, const std::vector<double>& z) {
  std::vector<std::size_t> expect;
  if (!sel.no_qualifying_threshold && !sel.estimated_no_signal) {
    for (std::size_t j = 0; j < z.size(); ++j)
      if (std::abs(z[j]) >= sel.t_star) expect.push_back(j);
  }
  require(expect == sel.selected, "SelectionResult: selected = {j : |z_j| >= t_star}");
  if (!sel.estimated_no_signal && !sel.no_qualifying_threshold) {
    // t_star must be the largest evaluated threshold whose clamped FNP estimate
    // qualifies
    double best = -1.0;
    for (std::size_t k = 0; k < sel.curve.thresholds.size(); ++k)
      if (sel.curve.fnp_hat[k] <= sel.epsilon) {
        best = sel.curve.thresholds[k];
        break;
      }
    require(best == sel.t_star, "SelectionResult: t_star is the largest qualifying threshold");
  }
}

void validate(const EvaluationMetrics& m, std::size_t s, std::size_t n_selected) {
  require(m.tp + m.fn == s, "EvaluationMetrics: tp + fn = s");
  require(m.tp + m.fp == n_selected, "EvaluationMetrics: tp + fp = |selected|");
  require(m.fnp >= 0.0 && m.fnp <= 1.0, "EvaluationMetrics: fnp in [0,1]");
  require(m.fdp >= 0.0 && m.fdp <= 1.0, "EvaluationMetrics: fdp in [0,1]");
  require(m.f_measure >= 0.0 && m.f_measure <= 1.0, "EvaluationMetrics: f in [0,1]");
}

void validate(const Diagnostics& d) {
  require(d.gamma_star == std::max(d.gamma1, d.gamma2), "Diagnostics: gamma_star = max(gamma1, gamma2)");
  require(d.mu_min >= 0.0, "Diagnostics: mu_min >= 0");
}

void validate(const ScenarioConfig& c) {
  require(c.n >= 2 && c.p >= 2, "ScenarioConfig: n, p >= 2");
  require(c.s <= c.p, "ScenarioConfig: s <= p");
  require(c.theta >= 0.0 && c.theta <= 1.0, "ScenarioConfig: theta in [0,1]");
  require(c.sigma > 0.0, "ScenarioConfig: sigma > 0");
  require(c.epsilon > 0.0 && c.epsilon <= 1.0, "ScenarioConfig: epsilon in (0,1]");
  require(c.replicates >= 1, "ScenarioConfig: replicates >= 1");
}

}  // namespace fnc
