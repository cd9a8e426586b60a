#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace distroc {

// Scores of one data holder (or the pooled data), split by outcome.
struct ScoreSet {
  std::vector<double> pos;  // outcome 1
  std::vector<double> neg;  // outcome 0

  // Throws DomainError on non-finite scores.
  void validate() const;
  // Throws DomainError when either class is empty.
  void require_both_classes() const;
};

// Empirical survivor function S(c) = #{scores >= c} / n.
//
// Stored as the ascending distinct support plus, per support point, the
// number of scores greater than or equal to it. This is the only form in
// which a survivor function is shared between parties.
class StepSurvivor {
 public:
  StepSurvivor() = default;
  // Validating constructor (used by the wire decoder).
  StepSurvivor(std::vector<double> support, std::vector<std::int64_t> counts_ge,
               std::int64_t n);

  static StepSurvivor from_scores(std::span<const double> scores);

  double operator()(double c) const;
  std::int64_t count_ge(double c) const;

  const std::vector<double>& support() const { return support_; }
  const std::vector<std::int64_t>& counts_ge() const { return counts_ge_; }
  std::int64_t n() const { return n_; }

  friend bool operator==(const StepSurvivor&, const StepSurvivor&) = default;

 private:
  std::vector<double> support_;
  std::vector<std::int64_t> counts_ge_;
  std::int64_t n_ = 0;
};

// Throws DomainError for empty or non-finite input.
StepSurvivor build_survivor(std::span<const double> scores);

struct PlacementValues {
  std::vector<double> pos_placements;  // S_pos at each negative score
  std::vector<double> neg_placements;  // S_neg at each positive score
};

PlacementValues placement_values(const ScoreSet& scores);

// Fraction of (positive, negative) pairs with s_pos >= s_neg. Computed
// from integer counts so the result is the exact rational rounded once.
double empirical_auc(const ScoreSet& scores);

// Unbiased (n - 1) sample variance; requires at least two values.
double sample_variance(std::span<const double> values);

// var(pos_placements) / n_neg + var(neg_placements) / n_pos.
double delong_variance(const PlacementValues& pv);

struct ConfidenceInterval {
  double low = 0.0;
  double high = 0.0;
};

// Interval built on the logit scale and mapped back. Throws
// DegenerateAucError for auc in {0, 1}.
ConfidenceInterval logit_ci(double auc, double variance, double alpha);

struct AucEstimate {
  double auc = 0.0;
  double variance = 0.0;
  double ci_low = 0.0;
  double ci_high = 0.0;
  double alpha = 0.05;
};

// Pooled empirical AUC with its DeLong variance and logit interval.
AucEstimate estimate_auc(const ScoreSet& scores, double alpha = 0.05);

// One-sided test of H0: AUC <= a0. True when H0 is rejected.
bool test_auc_greater(const AucEstimate& estimate, double a0);

}  // namespace distroc
