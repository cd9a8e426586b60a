#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "distroc/privacy.hpp"
#include "distroc/simgen.hpp"

namespace distroc {

struct SimulationConfig {
  int reps = 100;
  std::uint64_t seed = 1;
  SimConfig data;  // data.seed is replaced per replication
  int n_thresholds = 50;
  double alpha = 0.05;
  // Run the federated DP fit as well as the pooled ROC-GLM.
  bool distributed = true;
  PrivacyParams privacy;
  std::optional<double> tau;
  // Spread replications over OpenMP threads; results do not depend on it.
  bool parallel = true;
};

struct ReplicationResult {
  int rep = 0;
  int n = 0;
  double gamma = 0.0;
  double auc_emp = 0.0;
  double auc_rocglm = 0.0;  // pooled, no noise
  double auc_distr = 0.0;   // federated with DP
  double ci_low = 0.0;      // pooled empirical interval
  double ci_high = 0.0;
  double ci_low_distr = 0.0;
  double ci_high_distr = 0.0;
  double delta_auc = 0.0;   // auc_emp - auc_distr (auc_emp - auc_rocglm without DP)
  double delta_ci = 0.0;    // |low diff| + |high diff|
  bool ok = true;
  std::string error;
};

std::uint64_t replication_seed(std::uint64_t seed, int rep);

ReplicationResult run_replication(const SimulationConfig& cfg, int rep);
std::vector<ReplicationResult> run_simulation(const SimulationConfig& cfg);

struct BinSummary {
  double low = 0.0;  // bins are (low, high]
  double high = 0.0;
  double min = 0.0;
  double q1 = 0.0;
  double median = 0.0;
  double mean = 0.0;
  double q3 = 0.0;
  double max = 0.0;
  double sd = 0.0;
  long long count = 0;
};

// Linear-interpolation quantile on sorted data (R type 7).
double quantile_sorted(const std::vector<double>& sorted, double p);

// Summaries of `values` grouped by the (low, low + width] bin of `keys`,
// ascending; empty bins are skipped.
std::vector<BinSummary> summarize_by_bin(const std::vector<double>& keys,
                                         const std::vector<double>& values, double width = 0.025);

}  // namespace distroc
