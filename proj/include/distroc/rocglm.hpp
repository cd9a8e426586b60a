#pragma once

#include <span>
#include <utility>
#include <vector>

#include "distroc/privacy.hpp"
#include "distroc/probit.hpp"
#include "distroc/roc.hpp"

namespace distroc {

// Strictly increasing false-positive-rate thresholds inside (0, 1).
class ThresholdGrid {
 public:
  // Validating constructor.
  explicit ThresholdGrid(std::vector<double> values);

  const std::vector<double>& values() const { return values_; }
  std::size_t size() const { return values_.size(); }

 private:
  std::vector<double> values_;
};

// t_j = j / (n_T + 1), j = 1..n_T. Throws DomainError for n_T < 2.
ThresholdGrid make_threshold_grid(int n_thresholds);

inline constexpr int kDefaultThresholds = 50;

// ROC(t) = Phi(gamma1 + gamma2 * Phi^-1(t)).
struct BinormalRoc {
  double gamma1 = 0.0;
  double gamma2 = 1.0;

  double operator()(double t) const;
};

// Probit design for the ROC-GLM: one row per (positive score i, threshold
// j) with response 1{S_neg(s_i) < t_j} and covariates (1, Phi^-1(t_j)).
DesignBlock build_rocglm_block(const StepSurvivor& neg_survivor,
                               std::span<const double> pos_scores, const ThresholdGrid& grid);

// Area under the binormal curve by adaptive quadrature (abs_tol 1e-8).
double auc_from_binormal(const BinormalRoc& roc);

// n_points equally spaced (t, ROC(t)) pairs on [0, 1], endpoints included.
std::vector<std::pair<double, double>> roc_curve_points(const BinormalRoc& roc,
                                                        int n_points = 201);

struct RocGlmFit {
  BinormalRoc roc;
  double auc = 0.0;
  ConfidenceInterval ci;
  double alpha = 0.05;
  GlmFit fit;
  // Privacy settings of the noisy releases; absent for pooled fits.
  bool dp_applied = false;
  PrivacyParams dp;
  NoiseSpec noise;
};

// Single-node ROC-GLM on pooled scores. The interval is centred on the
// ROC-GLM AUC with the DeLong variance of the pooled placement values.
RocGlmFit fit_rocglm(const ScoreSet& pooled, const ThresholdGrid& grid, double alpha = 0.05,
                     const FisherScoringOptions& options = {});

}  // namespace distroc
