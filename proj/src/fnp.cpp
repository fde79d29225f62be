#include "fnc/fnp.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

#include "fnc/debias.hpp"
#include "fnc/gauss.hpp"
#include "fnc/lasso.hpp"
#include "fnc/nodewise.hpp"
#include "fnc/rng.hpp"

namespace fnc {

namespace {

constexpr double kSigmaBarSqFloor = 1e-24;   // skip grid points where sigma_bar^2 is below this
constexpr double kDenomFloor = 1e-12;        // skip ratio terms with 1 - 2*Phi_bar below this

[[noreturn]] void stage_error(const std::string& stage, const std::exception& e) {
  throw std::runtime_error("[" + stage + "] " + e.what());
}

}  // namespace

std::size_t count_r(const std::vector<double>& z, double t) {
  std::size_t r = 0;
  for (double v : z)
    if (std::abs(v) > t) ++r;
  return r;
}

double fnp_hat_raw(std::size_t r, std::size_t p, std::size_t s_hat, double t) {
  if (s_hat == 0) throw std::invalid_argument("fnp_hat: s_hat must be positive");
  if (r > p) throw std::invalid_argument("fnp_hat: r must not exceed p");
  const double pd = static_cast<double>(p);
  const double sd = static_cast<double>(s_hat);
  return 1.0 - (static_cast<double>(r) - 2.0 * (pd - sd) * normal_sf(t)) / sd;
}

double fnp_hat(std::size_t r, std::size_t p, std::size_t s_hat, double t) {
  return std::clamp(fnp_hat_raw(r, p, s_hat, t), 0.0, 1.0);
}

std::vector<std::size_t> order_by_abs_desc(const std::vector<double>& z) {
  std::vector<std::size_t> idx(z.size());
  std::iota(idx.begin(), idx.end(), 0);
  std::stable_sort(idx.begin(), idx.end(),
                   [&](std::size_t a, std::size_t b) { return std::abs(z[a]) > std::abs(z[b]); });
  return idx;
}

double v_statistic(const std::vector<double>& z_null) {
  const std::size_t p = z_null.size();
  if (p < 4) throw std::invalid_argument("v_statistic: p >= 4 required");
  const std::vector<std::size_t> ord = order_by_abs_desc(z_null);
  const double pd = static_cast<double>(p);

  double best = 0.0;
  bool any = false;
  // evaluation points: 1 < j < p/2 over the 1-based order statistics
  for (std::size_t j = 2; 2 * j < p; ++j) {
    const double t = std::abs(z_null[ord[j - 1]]);
    const double sf = normal_sf(t);
    const double sb_sq = 2.0 * sf * (1.0 - 2.0 * sf);
    if (sb_sq < kSigmaBarSqFloor) continue;
    const double term = (static_cast<double>(j) / pd - 2.0 * sf) / std::sqrt(sb_sq);
    if (!any || term > best) best = term;
    any = true;
  }
  if (!any) throw std::runtime_error("v_statistic: all evaluation points degenerate");
  return best;
}

double empirical_quantile(std::vector<double> samples, double level) {
  if (samples.empty()) throw std::invalid_argument("empirical_quantile: no samples");
  std::sort(samples.begin(), samples.end());
  const std::size_t m = samples.size();
  auto idx = static_cast<std::size_t>(std::ceil(level * static_cast<double>(m)));
  idx = std::clamp<std::size_t>(idx, 1, m);
  return samples[idx - 1];
}

std::vector<int> threshold_grid(std::size_t p, double tau0, double tau1) {
  if (!(tau0 > 0.0) || !(tau1 > tau0))
    throw std::invalid_argument("threshold_grid: need 0 < tau0 < tau1");
  const double lp = std::log(static_cast<double>(p));
  const double lo = std::sqrt(tau0 * lp);
  const double hi = std::sqrt(tau1 * lp);
  std::vector<int> grid;
  for (int t = static_cast<int>(std::ceil(lo)); static_cast<double>(t) <= hi; ++t)
    if (t >= 1) grid.push_back(t);
  return grid;
}

namespace {

// one simulated null statistic vector, fast mode: z~ = M g / (sqrt(n) sqrt(omega_jj))
// with M = Theta X^T precomputed; exact N(0, Omega) scaling conditional on X
std::vector<double> draw_null_fast(const Matrix& m_theta_xt, const std::vector<double>& omega_diag,
                                   std::size_t n, SplitMix64& rng) {
  const std::size_t p = m_theta_xt.rows;
  std::vector<double> g(n);
  for (double& v : g) v = rng.normal();
  std::vector<double> w = matvec(m_theta_xt, g);
  const double rootn = std::sqrt(static_cast<double>(n));
  std::vector<double> z(p);
  for (std::size_t j = 0; j < p; ++j) z[j] = w[j] / (rootn * std::sqrt(omega_diag[j]));
  return z;
}

// full-pipeline replicate: simulate y = sigma * g, refit the Lasso at the
// fixed lambda on the precomputed Gram, debias, standardize
std::vector<double> draw_null_full(const Dataset& data, const NodewiseResult& nodewise,
                                   const std::vector<double>& omega_diag, double sigma,
                                   const Matrix& g_norm, const NullCalibrationOptions& opts,
                                   SplitMix64& rng) {
  const std::size_t n = data.n(), p = data.p();
  const double dn = static_cast<double>(n);
  std::vector<double> y(n);
  for (double& v : y) v = sigma * rng.normal();

  std::vector<double> corr = matvec_transpose(data.x, y);
  for (double& v : corr) v /= dn;
  GramProblem prob;
  prob.gram = &g_norm;
  prob.corr = &corr;
  prob.yty_n = sum_sq(y) / dn;
  const GramFitResult fit = fit_lasso_gram(prob, opts.lambda_full, opts.tol, opts.max_iter);

  std::vector<double> r = y;
  const std::vector<double> xb = matvec(data.x, fit.beta);
  for (std::size_t i = 0; i < n; ++i) r[i] -= xb[i];
  std::vector<double> u = matvec_transpose(data.x, r);
  for (double& v : u) v /= dn;
  const std::vector<double> corr_term = matvec(nodewise.theta_hat, u);
  std::vector<double> b(p);
  for (std::size_t j = 0; j < p; ++j) b[j] = fit.beta[j] + corr_term[j];
  return standardize(b, omega_diag, sigma, n);
}

}  // namespace

NullCalibration calibrate_null(const Dataset& data, const NodewiseResult& nodewise,
                               const std::vector<double>& omega_diag, double sigma,
                               const NullCalibrationOptions& opts) {
  const std::size_t n = data.n(), p = data.p();
  if (opts.reps < 100) throw std::invalid_argument("calibrate_null: reps >= 100 required");
  if (omega_diag.size() != p) throw std::invalid_argument("calibrate_null: omega_diag length p");
  double alpha = opts.alpha_p;
  if (alpha <= 0.0) alpha = 1.0 / std::sqrt(std::log(static_cast<double>(p)));
  if (alpha > 1.0) throw std::invalid_argument("calibrate_null: alpha_p must lie in (0, 1]");

  NullCalibration cal;
  cal.alpha = alpha;
  cal.reps = opts.reps;
  cal.mode = opts.mode;
  if (opts.with_grid) {
    cal.has_grid = true;
    cal.grid = threshold_grid(p, opts.tau0, opts.tau1);
    if (cal.grid.empty())
      throw std::invalid_argument("calibrate_null: empty threshold grid for p = " +
                                  std::to_string(p));
  }

  const bool fast = opts.mode == CalibrationMode::fast_gaussian;
  Matrix m_theta_xt;
  Matrix g_norm;
  if (fast) {
    // M = Theta X^T once; every replicate is then a p x n mat-vec
    Matrix xt(p, n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < p; ++j) xt(j, i) = data.x(i, j);
    m_theta_xt = matmul(nodewise.theta_hat, xt);
  } else {
    if (!(sigma > 0.0))
      throw std::invalid_argument("calibrate_null: full_pipeline mode needs sigma > 0");
    g_norm = gram(data.x);
    for (double& v : g_norm.data) v /= static_cast<double>(n);
  }

  const double pd = static_cast<double>(p);
  std::vector<double> samples(static_cast<std::size_t>(opts.reps),
                              std::numeric_limits<double>::quiet_NaN());
  std::vector<double> star(static_cast<std::size_t>(opts.reps),
                           std::numeric_limits<double>::quiet_NaN());

  const std::ptrdiff_t reps = opts.reps;
#pragma omp parallel for schedule(dynamic) if (fast)
  for (std::ptrdiff_t r = 0; r < reps; ++r) {
    SplitMix64 rng(derive_seed(opts.seed, kStreamNullCalib, static_cast<std::uint64_t>(r)));
    std::vector<double> z = fast
                                ? draw_null_fast(m_theta_xt, omega_diag, n, rng)
                                : draw_null_full(data, nodewise, omega_diag, sigma, g_norm, opts, rng);
    try {
      samples[r] = v_statistic(z);
    } catch (const std::exception&) {
      continue;  // degenerate replicate, counted below
    }
    if (cal.has_grid) {
      double best = 0.0;
      bool any = false;
      for (int t : cal.grid) {
        const double sf = normal_sf(static_cast<double>(t));
        const double sb_sq = 2.0 * sf * (1.0 - 2.0 * sf);
        if (sb_sq < kSigmaBarSqFloor) continue;
        const double gp = static_cast<double>(count_r(z, static_cast<double>(t))) / pd;
        const double term = (gp - 2.0 * sf) / std::sqrt(sb_sq);
        if (!any || term > best) best = term;
        any = true;
      }
      star[r] = any ? best : std::numeric_limits<double>::quiet_NaN();
    }
  }

  for (std::ptrdiff_t r = 0; r < reps; ++r) {
    if (std::isnan(samples[r])) {
      ++cal.degenerate;
      continue;
    }
    cal.samples.push_back(samples[r]);
    if (cal.has_grid) cal.star_samples.push_back(star[r]);
  }
  if (cal.samples.empty()) throw std::runtime_error("calibrate_null: every replicate degenerate");
  if (cal.degenerate * 100 > opts.reps)
    throw std::runtime_error("calibrate_null: more than 1% degenerate replicates (" +
                             std::to_string(cal.degenerate) + " of " + std::to_string(opts.reps) +
                             ")");

  cal.c_tilde = empirical_quantile(cal.samples, 1.0 - alpha);
  if (cal.has_grid) {
    std::vector<double> valid;
    for (double v : cal.star_samples)
      if (!std::isnan(v)) valid.push_back(v);
    if (valid.empty()) throw std::runtime_error("calibrate_null: no valid grid replicates");
    cal.c_star = empirical_quantile(valid, 1.0 - alpha);
  }
  return cal;
}

SignalEstimate estimate_pi_orderstat(const std::vector<double>& z, double c_tilde) {
  const std::size_t p = z.size();
  if (p < 4) throw std::invalid_argument("estimate_pi_orderstat: p >= 4 required");
  const std::vector<std::size_t> ord = order_by_abs_desc(z);
  const double pd = static_cast<double>(p);

  SignalEstimate est;
  est.estimator_kind = PiEstimatorKind::mr_orderstat;
  double best = 0.0;
  bool any = false;
  for (std::size_t j = 2; 2 * j < p; ++j) {
    const double t = std::abs(z[ord[j - 1]]);
    const double sf = normal_sf(t);
    const double denom = 1.0 - 2.0 * sf;
    if (denom < kDenomFloor) continue;
    const double term =
        (static_cast<double>(j) / pd - 2.0 * sf - c_tilde * sigma_bar(t)) / denom;
    if (!any || term > best) best = term;
    any = true;
  }
  if (!any) {
    est.degenerate = true;
    est.pi_raw = 0.0;
  } else {
    est.pi_raw = best;
  }
  est.pi_hat = std::clamp(est.pi_raw, 0.0, 1.0);
  est.s_hat = static_cast<std::size_t>(std::llround(est.pi_hat * pd));
  return est;
}

SignalEstimate estimate_pi_discretized(const std::vector<double>& z, double c_star, double tau0,
                                       double tau1) {
  const std::size_t p = z.size();
  const std::vector<int> grid = threshold_grid(p, tau0, tau1);
  if (grid.empty())
    throw std::invalid_argument("estimate_pi_discretized: empty threshold grid for p = " +
                                std::to_string(p));
  const double pd = static_cast<double>(p);

  SignalEstimate est;
  est.estimator_kind = PiEstimatorKind::mr_discretized;
  double best = 0.0;
  bool any = false;
  for (int ti : grid) {
    const double t = static_cast<double>(ti);
    const double sf = normal_sf(t);
    const double denom = 1.0 - 2.0 * sf;
    if (denom < kDenomFloor) continue;
    const double fp = static_cast<double>(count_r(z, t)) / pd;
    const double term = (fp - 2.0 * sf - c_star * sigma_bar(t)) / denom;
    if (!any || term > best) best = term;
    any = true;
  }
  if (!any) {
    est.degenerate = true;
    est.pi_raw = 0.0;
  } else {
    est.pi_raw = best;
  }
  est.pi_hat = std::clamp(est.pi_raw, 0.0, 1.0);
  est.s_hat = static_cast<std::size_t>(std::llround(est.pi_hat * pd));
  return est;
}

FnpCurve make_fnp_curve(const std::vector<double>& z, std::size_t s_hat) {
  if (s_hat == 0) throw std::invalid_argument("make_fnp_curve: s_hat must be positive");
  const std::size_t p = z.size();
  FnpCurve curve;
  curve.s_hat = s_hat;
  curve.order = order_by_abs_desc(z);
  curve.thresholds.resize(p);
  curve.r_counts.resize(p);
  curve.fnp_raw.resize(p);
  curve.fnp_hat.resize(p);

  // The curve is evaluated with the count of the rule the threshold would
  // apply, |z_j| >= t, so r at a tied block is the block end. Evaluating with
  // the strict count instead would make the last qualifying threshold
  // overshoot by one position whenever s_hat * (1 - epsilon) is an integer,
  // because the positive tail term then tips the estimate just past epsilon.
  std::size_t k = 0;
  while (k < p) {
    const double t = std::abs(z[curve.order[k]]);
    std::size_t end = k;
    while (end < p && std::abs(z[curve.order[end]]) == t) ++end;
    for (std::size_t i = k; i < end; ++i) {
      curve.thresholds[i] = t;
      curve.r_counts[i] = end;
      curve.fnp_raw[i] = fnp_hat_raw(end, p, s_hat, t);
      curve.fnp_hat[i] = std::clamp(curve.fnp_raw[i], 0.0, 1.0);
    }
    k = end;
  }
  return curve;
}

SelectionResult threshold_select(const FnpCurve& curve, double epsilon) {
  if (!(epsilon > 0.0 && epsilon <= 1.0))
    throw std::invalid_argument("threshold_select: epsilon must lie in (0, 1]");
  SelectionResult sel;
  sel.epsilon = epsilon;
  sel.curve = curve;
  sel.s_hat = curve.s_hat;

  const std::size_t p = curve.thresholds.size();
  std::size_t qualify = p;  // first (largest) qualifying threshold position
  for (std::size_t k = 0; k < p; ++k) {
    if (curve.fnp_hat[k] <= epsilon) {
      qualify = k;
      break;
    }
  }
  if (qualify == p) {
    sel.no_qualifying_threshold = true;
    sel.t_star = std::numeric_limits<double>::infinity();
    return sel;
  }
  sel.t_star = curve.thresholds[qualify];
  // everything at or above t*; ties at t* extend past the qualifying position
  std::size_t end = qualify;
  while (end + 1 < p && curve.thresholds[end + 1] >= sel.t_star) ++end;
  sel.selected.assign(curve.order.begin(), curve.order.begin() + static_cast<std::ptrdiff_t>(end) + 1);
  std::sort(sel.selected.begin(), sel.selected.end());
  return sel;
}

Diagnostics diagnostics(std::size_t n, std::size_t p, std::size_t s, std::size_t s_max) {
  if (s < 1 || s >= p) throw std::invalid_argument("diagnostics: need 1 <= s < p");
  if (s_max < 1 || s_max >= p) throw std::invalid_argument("diagnostics: need 1 <= s_max < p");
  const double lp = std::log(static_cast<double>(p));
  const double ln = std::log(static_cast<double>(n));
  Diagnostics d;
  d.s_max = s_max;
  d.eta = 1.0 - std::log(static_cast<double>(s)) / lp;
  d.gamma1 =
      2.0 * d.eta -
      std::min(1.0, std::log(static_cast<double>(n) / static_cast<double>(s_max)) / (2.0 * lp));
  d.gamma2 = 2.0 - 2.0 * d.eta - ln / (2.0 * lp);
  d.gamma_star = std::max(d.gamma1, d.gamma2);
  d.mu_threshold = d.gamma_star > 0.0 ? std::sqrt(2.0 * d.gamma_star * lp) : 0.0;
  return d;
}

double compute_mu_min(const GroundTruth& truth, const std::vector<double>& theta_diag,
                      std::size_t n) {
  if (truth.support.empty()) throw std::invalid_argument("compute_mu_min: empty support");
  const double rootn = std::sqrt(static_cast<double>(n));
  double mn = std::numeric_limits<double>::infinity();
  for (std::size_t j : truth.support) {
    const double v = rootn * std::abs(truth.beta[j]) / (truth.sigma * std::sqrt(theta_diag[j]));
    mn = std::min(mn, v);
  }
  return mn;
}

PipelineResult fnc_reg(const Dataset& data_in, double epsilon, const PipelineConfig& config) {
  if (!(epsilon > 0.0 && epsilon <= 1.0))
    throw std::invalid_argument("fnc_reg: epsilon must lie in (0, 1]");
  validate(data_in);

  // optional column standardization: rescale to unit mean square; the fitted
  // coefficients are mapped back to the original scale afterwards
  Dataset scaled;
  const Dataset* data = &data_in;
  std::vector<double> col_scale;
  if (config.standardize_columns) {
    scaled.x = data_in.x;
    scaled.y = data_in.y;
    col_scale.resize(data_in.p(), 1.0);
    const double dn = static_cast<double>(data_in.n());
    for (std::size_t j = 0; j < data_in.p(); ++j) {
      double s = 0.0;
      for (std::size_t i = 0; i < data_in.n(); ++i) s += scaled.x(i, j) * scaled.x(i, j);
      s = std::sqrt(s / dn);
      if (s > 0.0) {
        col_scale[j] = s;
        for (std::size_t i = 0; i < data_in.n(); ++i) scaled.x(i, j) /= s;
      }
    }
    data = &scaled;
  }

  const std::size_t n = data->n(), p = data->p();
  PipelineResult out;

  // stage 1: Lasso fit at the configured lambda
  try {
    double lambda = 0.0;
    switch (config.lambda_rule) {
      case LambdaRule::cross_validation: {
        const double hi = lambda_max(*data);
        if (hi <= 0.0) {
          lambda = 0.0;
          break;
        }
        const std::vector<double> grid =
            lambda_grid_geometric(hi, config.cv_grid_size, config.cv_grid_min_ratio);
        lambda = select_lambda_cv(*data, config.cv_folds, grid, derive_seed(config.seed, kStreamCvFolds));
        break;
      }
      case LambdaRule::a2_formula: {
        const double sig = config.sigma > 0.0 ? config.sigma : 1.0;
        lambda = default_lambda(n, p, sig);
        break;
      }
      case LambdaRule::fixed:
        lambda = config.fixed_lambda;
        break;
    }
    out.fit = fit_lasso(*data, lambda, LassoOptions{config.tol, config.max_iter, 2000});
  } catch (const std::exception& e) {
    stage_error("lasso", e);
  }

  // stage 2: nodewise precision estimate
  try {
    const double lj = default_lambda_node(n, p, config.kappa_node);
    out.nodewise = nodewise_regression(*data, std::vector<double>(p, lj),
                                       NodewiseOptions{config.tol, config.max_iter, true});
    out.s_max_hat = max_row_support(out.nodewise);
  } catch (const std::exception& e) {
    stage_error("nodewise", e);
  }

  // stage 3: debias and standardize
  try {
    out.debiased = make_debiased_fit(out.fit, out.nodewise, *data, config.sigma);
  } catch (const std::exception& e) {
    stage_error("debias", e);
  }

  // stage 4: bounding sequence from the simulated global null
  try {
    NullCalibrationOptions nc;
    nc.reps = config.null_reps;
    nc.alpha_p = config.alpha_p;
    nc.mode = config.calib_mode;
    nc.seed = derive_seed(config.seed, kStreamNullCalib);
    nc.with_grid = config.pi_estimator == PiEstimatorKind::mr_discretized;
    nc.tau0 = config.tau0;
    nc.tau1 = config.tau1;
    nc.lambda_full = out.fit.lambda;
    nc.tol = config.tol;
    nc.max_iter = config.max_iter;
    std::vector<double> omega_diag(p);
    for (std::size_t j = 0; j < p; ++j) omega_diag[j] = out.debiased.omega_hat(j, j);
    out.calibration = calibrate_null(*data, out.nodewise, omega_diag, out.debiased.sigma_hat, nc);
  } catch (const std::exception& e) {
    stage_error("calibration", e);
  }

  // stage 5: signal proportion and s_hat
  try {
    out.signal = config.pi_estimator == PiEstimatorKind::mr_orderstat
                     ? estimate_pi_orderstat(out.debiased.z, out.calibration.c_tilde)
                     : estimate_pi_discretized(out.debiased.z, out.calibration.c_star, config.tau0,
                                               config.tau1);
  } catch (const std::exception& e) {
    stage_error("signal-estimate", e);
  }

  // stage 6 and 7: FNP curve, threshold, selection
  try {
    if (out.signal.s_hat == 0) {
      out.selection.epsilon = epsilon;
      out.selection.estimated_no_signal = true;
      out.selection.t_star = std::numeric_limits<double>::infinity();
      out.selection.s_hat = 0;
    } else {
      const FnpCurve curve = make_fnp_curve(out.debiased.z, out.signal.s_hat);
      out.selection = threshold_select(curve, epsilon);
    }
  } catch (const std::exception& e) {
    stage_error("selection", e);
  }

  out.diag = diagnostics(n, p, std::clamp<std::size_t>(out.signal.s_hat, 1, p - 1),
                         std::clamp<std::size_t>(out.s_max_hat, 1, p - 1));
  if (config.standardize_columns) {
    // report coefficients on the original column scale
    for (std::size_t j = 0; j < p; ++j) {
      out.fit.beta_hat[j] /= col_scale[j];
      out.debiased.b_hat[j] /= col_scale[j];
    }
  }
  return out;
}

}  // namespace fnc
