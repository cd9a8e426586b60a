#include "distroc/roc.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "distroc/error.hpp"
#include "distroc/numerics.hpp"

namespace distroc {

void ScoreSet::validate() const {
  auto finite = [](const std::vector<double>& v) {
    return std::all_of(v.begin(), v.end(), [](double x) { return std::isfinite(x); });
  };
  if (!finite(pos) || !finite(neg)) throw DomainError("ScoreSet: scores must be finite");
}

void ScoreSet::require_both_classes() const {
  if (pos.empty() || neg.empty()) {
    throw DomainError("ScoreSet: both classes need at least one score (n_pos = " +
                      std::to_string(pos.size()) +
                      ", n_neg = " + std::to_string(neg.size()) + ")");
  }
}

StepSurvivor::StepSurvivor(std::vector<double> support, std::vector<std::int64_t> counts_ge,
                           std::int64_t n)
    : support_(std::move(support)), counts_ge_(std::move(counts_ge)), n_(n) {
  if (support_.size() != counts_ge_.size()) {
    throw DomainError("StepSurvivor: support and counts differ in length");
  }
  if (n_ < 1 || support_.empty()) throw DomainError("StepSurvivor: empty survivor");
  if (counts_ge_.front() != n_) throw DomainError("StepSurvivor: first count must equal n");
  for (std::size_t i = 0; i < support_.size(); ++i) {
    if (!std::isfinite(support_[i])) throw DomainError("StepSurvivor: non-finite support");
    if (i > 0 && (!(support_[i - 1] < support_[i]) || !(counts_ge_[i - 1] > counts_ge_[i]))) {
      throw DomainError("StepSurvivor: support must ascend with strictly falling counts");
    }
    if (counts_ge_[i] < 1) throw DomainError("StepSurvivor: counts must be positive");
  }
}

StepSurvivor StepSurvivor::from_scores(std::span<const double> scores) {
  if (scores.empty()) throw DomainError("build_survivor: no scores");
  std::vector<double> sorted(scores.begin(), scores.end());
  for (double s : sorted) {
    if (!std::isfinite(s)) throw DomainError("build_survivor: non-finite score");
  }
  std::sort(sorted.begin(), sorted.end());
  const auto n = static_cast<std::int64_t>(sorted.size());

  StepSurvivor out;
  out.n_ = n;
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    if (i == 0 || sorted[i] != sorted[i - 1]) {
      out.support_.push_back(sorted[i]);
      out.counts_ge_.push_back(n - static_cast<std::int64_t>(i));
    }
  }
  return out;
}

std::int64_t StepSurvivor::count_ge(double c) const {
  const auto it = std::lower_bound(support_.begin(), support_.end(), c);
  if (it == support_.end()) return 0;
  return counts_ge_[static_cast<std::size_t>(it - support_.begin())];
}

double StepSurvivor::operator()(double c) const {
  return static_cast<double>(count_ge(c)) / static_cast<double>(n_);
}

StepSurvivor build_survivor(std::span<const double> scores) {
  return StepSurvivor::from_scores(scores);
}

PlacementValues placement_values(const ScoreSet& scores) {
  scores.require_both_classes();
  const StepSurvivor s_pos = build_survivor(scores.pos);
  const StepSurvivor s_neg = build_survivor(scores.neg);
  PlacementValues pv;
  pv.pos_placements.reserve(scores.neg.size());
  for (double s : scores.neg) pv.pos_placements.push_back(s_pos(s));
  pv.neg_placements.reserve(scores.pos.size());
  for (double s : scores.pos) pv.neg_placements.push_back(s_neg(s));
  return pv;
}

double empirical_auc(const ScoreSet& scores) {
  scores.require_both_classes();
  const StepSurvivor s_pos = build_survivor(scores.pos);
  std::int64_t pairs = 0;
  for (double s : scores.neg) pairs += s_pos.count_ge(s);
  return static_cast<double>(pairs) /
         (static_cast<double>(scores.pos.size()) * static_cast<double>(scores.neg.size()));
}

double sample_variance(std::span<const double> values) {
  if (values.size() < 2) throw DomainError("sample_variance: need at least two values");
  double mean = 0.0;
  for (double v : values) mean += v;
  mean /= static_cast<double>(values.size());
  double ss = 0.0;
  for (double v : values) ss += (v - mean) * (v - mean);
  return ss / static_cast<double>(values.size() - 1);
}

double delong_variance(const PlacementValues& pv) {
  if (pv.pos_placements.size() < 2 || pv.neg_placements.size() < 2) {
    throw DomainError("delong_variance: each class needs at least two records");
  }
  return sample_variance(pv.pos_placements) / static_cast<double>(pv.pos_placements.size()) +
         sample_variance(pv.neg_placements) / static_cast<double>(pv.neg_placements.size());
}

ConfidenceInterval logit_ci(double auc, double variance, double alpha) {
  if (auc <= 0.0 || auc >= 1.0) {
    throw DegenerateAucError("logit_ci: AUC of " + std::to_string(auc) +
                             " has no logit-scale interval");
  }
  if (!(variance >= 0.0)) throw DomainError("logit_ci: variance must be >= 0");
  if (!(alpha > 0.0 && alpha < 1.0)) throw DomainError("logit_ci: alpha must lie in (0, 1)");
  const double center = logit(auc);
  const double half =
      std_normal_quantile(1.0 - alpha / 2.0) * std::sqrt(variance) / (auc * (1.0 - auc));
  if (half == 0.0) return {auc, auc};
  return {inv_logit(center - half), inv_logit(center + half)};
}

AucEstimate estimate_auc(const ScoreSet& scores, double alpha) {
  AucEstimate est;
  est.alpha = alpha;
  est.auc = empirical_auc(scores);
  est.variance = delong_variance(placement_values(scores));
  const ConfidenceInterval ci = logit_ci(est.auc, est.variance, alpha);
  est.ci_low = ci.low;
  est.ci_high = ci.high;
  return est;
}

bool test_auc_greater(const AucEstimate& estimate, double a0) { return estimate.ci_low > a0; }

}  // namespace distroc
