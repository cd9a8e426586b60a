#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "distroc/roc.hpp"

namespace distroc {

// Label-flip simulation: uniform scores, y = 1{score >= 0.5}, then
// floor(gamma n) random labels replaced by Bernoulli(0.5) draws.
struct SimConfig {
  int n_min = 100;
  int n_max = 2500;
  double gamma_min = 0.0;
  double gamma_max = 1.0;
  std::optional<int> n_override;
  std::optional<double> gamma_override;
  int k_sites = 5;
  std::uint64_t seed = 1;

  void validate() const;
};

struct AucSimData {
  int n = 0;
  double gamma = 0.0;
  std::vector<ScoreSet> sites;
  ScoreSet pooled;
};

// Sites are dealt each class separately in a shuffled round robin, so every
// site gets floor(n_class / K) or one more records of each class.
AucSimData generate_auc_sim(const SimConfig& cfg);

// Synthetic interval-censored survival cohort.
struct SurvSimConfig {
  double lambda = 0.0005;
  double k_shape = 1.4;
  double max_time = 156.0;  // weeks
  std::vector<int> site_sizes{60, 140, 60, 60};
  double window_low = 26.14;
  double window_high = 104.29;
  // Candidate visit intervals drawn before an event is declared unobserved.
  int max_draws = 7;
  int n_treatments = 3;
  // Zero every treatment effect (baseline hazard only).
  bool zero_effects = false;

  void validate() const;
};

// T = (-ln u / (lambda exp(eta)))^(1/k). Throws DomainError unless 0 < u < 1.
double weibull_event_time(double u, double eta, const SurvSimConfig& cfg);

// P(window_low <= T <= window_high) for linear predictor eta.
double window_probability(double eta, const SurvSimConfig& cfg);

struct CensoredTime {
  double low = 0.0;
  double high = 0.0;  // +inf when the event was not observed
  bool event_observed = false;
};

// Draws visit pairs uniformly on [0, max_time]; the first pair enclosing
// t_event gives an observed interval. After max_draws misses the event is
// censored at the latest drawn visit before t_event.
CensoredTime interval_censor(double t_event, const SurvSimConfig& cfg,
                             const std::function<double()>& uniform01);

inline constexpr std::array<const char*, 7> kCohortFeatures = {
    "age", "gender", "height", "weight", "relapses", "cell_count", "glucose"};

struct CohortRecord {
  int id = 0;
  int site = 0;
  std::array<double, 7> features{};
  int treatment = 0;
  double eta = 0.0;
  double t_event = 0.0;
  CensoredTime observed;
  int label = 0;  // 1{t_event in window}
  double score = 0.0;  // window probability under the generating model
  bool validation = false;
};

struct Cohort {
  std::vector<std::vector<CohortRecord>> sites;
  std::vector<CohortRecord> pooled_train;
  // Per treatment, per feature.
  std::vector<std::array<double, 7>> effects;

  // Validation records of one site as a ScoreSet.
  ScoreSet validation_scores(std::size_t site) const;
  double event_ratio() const;
};

Cohort generate_survival_cohort(const SurvSimConfig& cfg, std::uint64_t seed);

// round(n / 3).
int validation_size(int n);

// Sites shaped like a small multi-centre validation: x ~ N(0, 1),
// score = inv_logit(0.8 + x), y ~ Bernoulli(score).
std::vector<ScoreSet> generate_usecase_sites(std::uint64_t seed,
                                             const std::vector<int>& sizes = {56, 49, 60, 49, 60});

}  // namespace distroc
