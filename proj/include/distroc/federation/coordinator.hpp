#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "distroc/calibration.hpp"
#include "distroc/federation/message.hpp"
#include "distroc/federation/transport.hpp"
#include "distroc/privacy.hpp"
#include "distroc/probit.hpp"
#include "distroc/roc.hpp"

namespace distroc {

struct SiteEndpoint {
  std::string site_id;
  std::unique_ptr<SiteChannel> channel;
};

struct SumCount {
  double sum = 0.0;
  long long n = 0;
};

// Called once per Fisher round with theta and the per-site contributions,
// in site order.
using RoundObserver =
    std::function<void(std::span<const double> theta, const std::vector<FisherContribution>&)>;

// Drives one validation session. Every round is a broadcast followed by a
// gather barrier over all sites; any refusal, protocol error or dropped
// site aborts the session, and the transcript keeps everything exchanged
// up to that point.
class Coordinator {
 public:
  Coordinator(std::vector<SiteEndpoint> sites, int privacy_level, std::string session_id);

  std::size_t n_sites() const { return sites_.size(); }
  const std::string& site_id(std::size_t k) const { return sites_[k].site_id; }
  const std::string& session_id() const { return session_id_; }
  int privacy_level() const { return q_; }
  const Transcript& transcript() const { return transcript_; }
  bool aborted() const { return aborted_; }

  // Gaussian-mechanism release of one class from every site, pooled in site
  // order. `tau` overrides the derived noise scale.
  StepSurvivor release_noisy_scores(ScoreClass cls, const PrivacyParams& params,
                                    std::optional<double> tau = std::nullopt);
  void broadcast_survivor(ScoreClass cls, const StepSurvivor& survivor);

  // Distributed Fisher scoring. `design` is "rocglm" (needs `thresholds` and
  // a prior negative-survivor broadcast) or "probit".
  GlmFit run_fisher_rounds(const std::string& design, std::size_t l,
                           const std::vector<double>& thresholds,
                           const FisherScoringOptions& options = {},
                           const RoundObserver& observer = {});

  std::vector<SumCount> gather_sum_count(const std::string& quantity);
  std::vector<SumCount> gather_var_step(const std::string& quantity, double mean);
  double distr_avg(const std::string& quantity);
  // Two rounds: distr_avg, then the summed squared deviations over n - 1.
  double distr_var(const std::string& quantity);
  // Per-site (sum, n) pair with the pooled record count.
  struct VarResult {
    double variance = 0.0;
    long long n = 0;
  };
  VarResult distr_var_with_count(const std::string& quantity);

  std::vector<BrierPart> gather_brier();
  struct CalibrationGather {
    std::vector<std::vector<BinAggregate>> shared;  // per site
    std::vector<SuppressedCell> withheld;
  };
  CalibrationGather gather_calibration(int n_bin);

 private:
  std::vector<AggMessage> exchange(const std::vector<AggMessage>& requests,
                                   MessageKind expected);
  std::vector<AggMessage> broadcast(const AggMessage& request, MessageKind expected);
  void send(std::size_t k, const AggMessage& m);

  std::vector<SiteEndpoint> sites_;
  int q_;
  std::string session_id_;
  Transcript transcript_;
  bool aborted_ = false;
};

}  // namespace distroc
