#include "distroc/pipeline.hpp"

#include "distroc/error.hpp"

namespace distroc {

namespace {

template <typename F>
auto staged(const char* stage, F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (Error& e) {
    if (e.stage().empty()) e.set_stage(stage);
    throw;
  }
}

}  // namespace

RocGlmFit fit_distributed_rocglm(Coordinator& coord, const ThresholdGrid& grid,
                                 const DistributedRocOptions& options) {
  options.privacy.validate();
  RocGlmFit out;
  out.alpha = options.alpha;
  out.dp_applied = true;
  out.dp = options.privacy;
  out.noise = options.tau ? noise_override(options.privacy, *options.tau)
                          : noise_scale(options.privacy);

  const StepSurvivor neg = staged("release_neg", [&] {
    return coord.release_noisy_scores(ScoreClass::Neg, options.privacy, options.tau);
  });
  staged("broadcast_neg", [&] { coord.broadcast_survivor(ScoreClass::Neg, neg); });

  out.fit = staged("fisher_scoring", [&] {
    return coord.run_fisher_rounds("rocglm", 2, grid.values(), options.fisher);
  });
  out.roc = BinormalRoc{out.fit.theta[0], out.fit.theta[1]};
  out.auc = staged("auc", [&] { return auc_from_binormal(out.roc); });

  const StepSurvivor pos = staged("release_pos", [&] {
    return coord.release_noisy_scores(ScoreClass::Pos, options.privacy, options.tau);
  });
  out.ci = staged("ci", [&] { return distributed_ci(coord, pos, neg, out.auc, options.alpha); });
  return out;
}

ConfidenceInterval distributed_ci(Coordinator& coord, const StepSurvivor& pos_survivor,
                                  const StepSurvivor& neg_survivor, double auc, double alpha) {
  if (!(auc > 0.0 && auc < 1.0)) throw DegenerateAucError("distributed_ci: auc must be in (0, 1)");
  coord.broadcast_survivor(ScoreClass::Pos, pos_survivor);
  coord.broadcast_survivor(ScoreClass::Neg, neg_survivor);
  // placement_pos has one value per negative record and vice versa.
  const auto pos_pl = coord.distr_var_with_count("placement_pos");
  const auto neg_pl = coord.distr_var_with_count("placement_neg");
  const double variance = pos_pl.variance / static_cast<double>(pos_pl.n) +
                          neg_pl.variance / static_cast<double>(neg_pl.n);
  return logit_ci(auc, variance, alpha);
}

double distributed_brier(Coordinator& coord) {
  return staged("brier", [&] {
    const auto parts = coord.gather_brier();
    return brier_combine(parts, coord.privacy_level());
  });
}

CalibrationCurve distributed_calibration(Coordinator& coord, const BinLayout& layout) {
  return staged("calibration", [&] {
    auto gathered = coord.gather_calibration(layout.n_bin());
    CalibrationCurve curve = calibration_combine(gathered.shared, coord.privacy_level(), layout);
    curve.suppressed.insert(curve.suppressed.end(), gathered.withheld.begin(),
                            gathered.withheld.end());
    return curve;
  });
}

}  // namespace distroc
