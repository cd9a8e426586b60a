#include "distroc/rocglm.hpp"

#include <array>
#include <cmath>
#include <string>

#include "distroc/error.hpp"
#include "distroc/numerics.hpp"

namespace distroc {

ThresholdGrid::ThresholdGrid(std::vector<double> values) : values_(std::move(values)) {
  if (values_.size() < 2) throw DomainError("ThresholdGrid: need at least two thresholds");
  for (std::size_t j = 0; j < values_.size(); ++j) {
    if (!(values_[j] > 0.0 && values_[j] < 1.0)) {
      throw DomainError("ThresholdGrid: thresholds must lie in (0, 1)");
    }
    if (j > 0 && !(values_[j - 1] < values_[j])) {
      throw DomainError("ThresholdGrid: thresholds must be strictly increasing");
    }
  }
}

ThresholdGrid make_threshold_grid(int n_thresholds) {
  if (n_thresholds < 2) {
    throw DomainError("make_threshold_grid: n_T must be >= 2, got " +
                      std::to_string(n_thresholds));
  }
  std::vector<double> t;
  t.reserve(static_cast<std::size_t>(n_thresholds));
  for (int j = 1; j <= n_thresholds; ++j) t.push_back(static_cast<double>(j) / (n_thresholds + 1));
  return ThresholdGrid(std::move(t));
}

double BinormalRoc::operator()(double t) const {
  if (t <= 0.0) return gamma2 > 0.0 ? 0.0 : std_normal_cdf(gamma1);
  if (t >= 1.0) return gamma2 > 0.0 ? 1.0 : std_normal_cdf(gamma1);
  return std_normal_cdf(gamma1 + gamma2 * std_normal_quantile(t));
}

DesignBlock build_rocglm_block(const StepSurvivor& neg_survivor,
                               std::span<const double> pos_scores, const ThresholdGrid& grid) {
  if (pos_scores.empty()) throw DomainError("build_rocglm_block: no positive scores");
  const auto& t = grid.values();
  std::vector<double> probit_t(t.size());
  for (std::size_t j = 0; j < t.size(); ++j) probit_t[j] = std_normal_quantile(t[j]);

  DesignBlock block(2);
  std::array<double, 2> h{1.0, 0.0};
  for (double s : pos_scores) {
    const double placement = neg_survivor(s);
    for (std::size_t j = 0; j < t.size(); ++j) {
      h[1] = probit_t[j];
      block.add_row(placement < t[j] ? 1 : 0, h);
    }
  }
  return block;
}

double auc_from_binormal(const BinormalRoc& roc) {
  if (!std::isfinite(roc.gamma1) || !std::isfinite(roc.gamma2)) {
    throw DomainError("auc_from_binormal: non-finite coefficients");
  }
  return integrate_unit_interval([&roc](double t) { return roc(t); }).value;
}

std::vector<std::pair<double, double>> roc_curve_points(const BinormalRoc& roc, int n_points) {
  if (n_points < 2) throw DomainError("roc_curve_points: need at least two points");
  std::vector<std::pair<double, double>> out;
  out.reserve(static_cast<std::size_t>(n_points));
  for (int i = 0; i < n_points; ++i) {
    const double t = static_cast<double>(i) / (n_points - 1);
    out.emplace_back(t, roc(t));
  }
  return out;
}

RocGlmFit fit_rocglm(const ScoreSet& pooled, const ThresholdGrid& grid, double alpha,
                     const FisherScoringOptions& options) {
  pooled.require_both_classes();
  const StepSurvivor neg = build_survivor(pooled.neg);
  const DesignBlock block = build_rocglm_block(neg, pooled.pos, grid);

  RocGlmFit out;
  out.alpha = alpha;
  out.fit = fisher_scoring(
      [&block](std::span<const double> theta) { return local_contribution(block, theta); }, 2,
      options);
  out.roc = BinormalRoc{out.fit.theta[0], out.fit.theta[1]};
  out.auc = auc_from_binormal(out.roc);
  out.ci = logit_ci(out.auc, delong_variance(placement_values(pooled)), alpha);
  return out;
}

}  // namespace distroc
