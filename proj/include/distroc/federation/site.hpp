#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "distroc/federation/message.hpp"
#include "distroc/privacy.hpp"
#include "distroc/probit.hpp"
#include "distroc/roc.hpp"

namespace distroc {

// Everything a data holder keeps to itself.
struct SiteData {
  std::string site_id;
  ScoreSet scores;
  // Extra numeric columns addressable by ReqSumCount / ReqVarStep as "vec:<name>".
  std::map<std::string, std::vector<double>> vectors;
  // Prepared probit design for generic Fisher rounds ("design": "probit").
  std::optional<DesignBlock> probit_block;
};

// Passive responder: answers one request at a time from local data and
// the survivor functions broadcast to it. Nothing but AggMessage replies
// leaves the handler.
class SiteHandler {
 public:
  // `privacy_level` is the site's own q; `noise_seed` never leaves the site.
  SiteHandler(SiteData data, int privacy_level, std::uint64_t noise_seed);

  // Returns the reply, or nothing for one-way broadcasts. Refusals and
  // failures come back as Refusal / Error messages, never as exceptions.
  std::optional<AggMessage> handle(const AggMessage& request);

  const std::string& site_id() const { return data_.site_id; }
  // One line per refusal or failure answered by this site.
  const std::vector<std::string>& audit_log() const { return audit_; }

 private:
  AggMessage handle_noisy_scores(const AggMessage& req);
  AggMessage handle_fisher_round(const AggMessage& req);
  AggMessage handle_sum_count(const AggMessage& req);
  AggMessage handle_var_step(const AggMessage& req);
  AggMessage handle_calib_bins(const AggMessage& req);
  const std::vector<double>& quantity(const std::string& name);

  SiteData data_;
  int q_;
  std::uint64_t noise_seed_;
  std::optional<StepSurvivor> pos_survivor_;
  std::optional<StepSurvivor> neg_survivor_;
  // ROC-GLM design cached per (survivor, grid).
  std::optional<DesignBlock> rocglm_block_;
  std::vector<double> rocglm_grid_;
  std::map<std::string, std::vector<double>> derived_;
  std::vector<std::string> audit_;
};

}  // namespace distroc
