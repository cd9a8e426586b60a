#pragma once

#include <optional>

#include "distroc/calibration.hpp"
#include "distroc/federation/coordinator.hpp"
#include "distroc/rocglm.hpp"

namespace distroc {

struct DistributedRocOptions {
  PrivacyParams privacy;
  // Replaces the derived noise scale; 0 gives a noise-free run.
  std::optional<double> tau;
  double alpha = 0.05;
  FisherScoringOptions fisher;
};

// Distributed ROC-GLM: noisy negative release and broadcast, Fisher rounds
// over the site designs, AUC by quadrature, noisy positive release and
// broadcast, then the interval from distributed placement variances.
// Errors carry the failing step in Error::stage().
RocGlmFit fit_distributed_rocglm(Coordinator& coord, const ThresholdGrid& grid,
                                 const DistributedRocOptions& options);

// Broadcasts both survivor functions (sites ignore repeats) and builds the
// logit interval around `auc` from distributed placement-value variances.
ConfidenceInterval distributed_ci(Coordinator& coord, const StepSurvivor& pos_survivor,
                                  const StepSurvivor& neg_survivor, double auc, double alpha);

double distributed_brier(Coordinator& coord);

// Site cells below q never leave the site; they show up in `suppressed`.
CalibrationCurve distributed_calibration(Coordinator& coord, const BinLayout& layout);

}  // namespace distroc
