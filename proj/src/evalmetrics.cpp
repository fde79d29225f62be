#include "fnc/evalmetrics.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <stdexcept>

namespace fnc {

EvaluationMetrics evaluate(const std::vector<std::size_t>& selected, const GroundTruth& truth) {
  if (truth.s == 0)
    throw std::invalid_argument("evaluate: FNP undefined with no relevant predictors (s = 0)");
  const std::size_t p = truth.beta.size();
  const std::set<std::size_t> sel(selected.begin(), selected.end());
  if (sel.size() != selected.size())
    throw std::invalid_argument("evaluate: selected indices must be distinct");
  if (!sel.empty() && *sel.rbegin() >= p)
    throw std::invalid_argument("evaluate: selected index out of range");

  EvaluationMetrics m;
  for (std::size_t j : truth.support)
    if (sel.count(j)) ++m.tp;
  m.fp = sel.size() - m.tp;
  m.fn = truth.s - m.tp;
  m.fnp = static_cast<double>(m.fn) / static_cast<double>(truth.s);
  m.fdp = sel.empty() ? 0.0 : static_cast<double>(m.fp) / static_cast<double>(sel.size());
  const double a = 1.0 - m.fnp, b = 1.0 - m.fdp;
  m.f_measure = (a + b) > 0.0 ? 2.0 * a * b / (a + b) : 0.0;
  return m;
}

namespace {

// sums run over sorted copies so the result is exactly invariant under
// permutation of the replicate sequence
void mean_sd(std::vector<double> v, double& mean, double& sd) {
  std::sort(v.begin(), v.end());
  const double n = static_cast<double>(v.size());
  double s = 0.0;
  for (double x : v) s += x;
  mean = s / n;
  if (v.size() < 2) {
    sd = 0.0;
    return;
  }
  double ss = 0.0;
  for (double x : v) ss += (x - mean) * (x - mean);
  sd = std::sqrt(ss / (n - 1.0));
}

}  // namespace

AggregateSummary aggregate(const std::vector<EvaluationMetrics>& metrics, double epsilon) {
  if (metrics.empty()) throw std::invalid_argument("aggregate: empty metric sequence");
  AggregateSummary s;
  s.replicates = metrics.size();
  s.epsilon = epsilon;

  std::vector<double> fnp, fdp, f, tp, fp, fn;
  for (const auto& m : metrics) {
    fnp.push_back(m.fnp);
    fdp.push_back(m.fdp);
    f.push_back(m.f_measure);
    tp.push_back(static_cast<double>(m.tp));
    fp.push_back(static_cast<double>(m.fp));
    fn.push_back(static_cast<double>(m.fn));
  }
  mean_sd(fnp, s.mean_fnp, s.sd_fnp);
  mean_sd(fdp, s.mean_fdp, s.sd_fdp);
  mean_sd(f, s.mean_f, s.sd_f);
  mean_sd(tp, s.mean_tp, s.sd_tp);
  mean_sd(fp, s.mean_fp, s.sd_fp);
  mean_sd(fn, s.mean_fn, s.sd_fn);

  std::size_t hits = 0;
  for (double v : fnp)
    if (v <= epsilon) ++hits;
  s.freq_fnp_le_epsilon = static_cast<double>(hits) / static_cast<double>(metrics.size());
  return s;
}

}  // namespace fnc
