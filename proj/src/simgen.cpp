#include "distroc/simgen.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "distroc/error.hpp"
#include "distroc/numerics.hpp"
#include "distroc/rng.hpp"

namespace distroc {

void SimConfig::validate() const {
  if (n_min < 2 || n_max < n_min) throw DomainError("SimConfig: bad n range");
  if (!(gamma_min >= 0.0 && gamma_max <= 1.0 && gamma_min <= gamma_max)) {
    throw DomainError("SimConfig: gamma range must lie in [0, 1]");
  }
  if (k_sites < 1) throw DomainError("SimConfig: k_sites must be >= 1");
  if (n_override && *n_override < 2) throw DomainError("SimConfig: n must be >= 2");
  if (gamma_override && !(*gamma_override >= 0.0 && *gamma_override <= 1.0)) {
    throw DomainError("SimConfig: gamma must lie in [0, 1]");
  }
}

AucSimData generate_auc_sim(const SimConfig& cfg) {
  cfg.validate();
  CounterRng rng(cfg.seed, 0);
  AucSimData out;
  out.n = cfg.n_override ? *cfg.n_override
                         : static_cast<int>(rng.uniform_int(cfg.n_min, cfg.n_max));
  out.gamma = cfg.gamma_override ? *cfg.gamma_override : rng.uniform(cfg.gamma_min, cfg.gamma_max);
  if (!cfg.gamma_override && cfg.gamma_min == cfg.gamma_max) out.gamma = cfg.gamma_min;

  const auto n = static_cast<std::size_t>(out.n);
  std::vector<double> score(n);
  std::vector<int> y(n);
  for (std::size_t i = 0; i < n; ++i) {
    score[i] = rng.uniform();
    y[i] = score[i] >= 0.5 ? 1 : 0;
  }
  std::vector<std::size_t> idx(n);
  std::iota(idx.begin(), idx.end(), 0);
  rng.shuffle(std::span<std::size_t>(idx));
  const auto n_flip = static_cast<std::size_t>(std::floor(out.gamma * static_cast<double>(n)));
  for (std::size_t i = 0; i < n_flip; ++i) y[idx[i]] = rng.bernoulli(0.5) ? 1 : 0;

  std::vector<double> pos;
  std::vector<double> neg;
  for (std::size_t i = 0; i < n; ++i) (y[i] ? pos : neg).push_back(score[i]);
  out.pooled = ScoreSet{pos, neg};

  const auto k = static_cast<std::size_t>(cfg.k_sites);
  out.sites.assign(k, ScoreSet{});
  auto deal = [&](std::vector<double> v, bool positive) {
    rng.shuffle(std::span<double>(v));
    for (std::size_t i = 0; i < v.size(); ++i) {
      auto& site = out.sites[i % k];
      (positive ? site.pos : site.neg).push_back(v[i]);
    }
  };
  deal(pos, true);
  deal(neg, false);
  return out;
}

void SurvSimConfig::validate() const {
  if (!(lambda > 0.0) || !(k_shape > 0.0)) throw DomainError("SurvSimConfig: lambda, k must be > 0");
  if (!(window_low >= 0.0 && window_low < window_high && window_high <= max_time)) {
    throw DomainError("SurvSimConfig: window must lie within [0, max_time]");
  }
  if (max_draws < 1) throw DomainError("SurvSimConfig: max_draws must be >= 1");
  if (n_treatments < 1) throw DomainError("SurvSimConfig: need a treatment");
  for (int s : site_sizes) {
    if (s < 1) throw DomainError("SurvSimConfig: site sizes must be positive");
  }
}

double weibull_event_time(double u, double eta, const SurvSimConfig& cfg) {
  if (!(u > 0.0 && u < 1.0)) throw DomainError("weibull_event_time: u must be in (0, 1)");
  if (!std::isfinite(eta)) throw DomainError("weibull_event_time: non-finite eta");
  return std::pow(-std::log(u) / (cfg.lambda * std::exp(eta)), 1.0 / cfg.k_shape);
}

double window_probability(double eta, const SurvSimConfig& cfg) {
  const double rate = cfg.lambda * std::exp(eta);
  return std::exp(-rate * std::pow(cfg.window_low, cfg.k_shape)) -
         std::exp(-rate * std::pow(cfg.window_high, cfg.k_shape));
}

CensoredTime interval_censor(double t_event, const SurvSimConfig& cfg,
                             const std::function<double()>& uniform01) {
  if (!(t_event > 0.0)) throw DomainError("interval_censor: event time must be positive");
  double last_visit = 0.0;
  for (int d = 0; d < cfg.max_draws; ++d) {
    const double a = uniform01() * cfg.max_time;
    const double b = uniform01() * cfg.max_time;
    const double low = std::min(a, b);
    const double high = std::max(a, b);
    if (low <= t_event && t_event <= high) return {low, high, true};
    for (double v : {low, high}) {
      if (v < t_event) last_visit = std::max(last_visit, v);
    }
  }
  return {last_visit, std::numeric_limits<double>::infinity(), false};
}

int validation_size(int n) { return static_cast<int>(std::lround(n / 3.0)); }

namespace {

// Marginals stand in for the unavailable empirical feature distribution.
constexpr std::array<double, 7> kFeatureMeans = {38.0, 0.7, 170.0, 72.0, 1.5, 7.0, 95.0};

std::array<double, 7> draw_features(CounterRng& rng) {
  std::array<double, 7> x{};
  x[0] = std::clamp(std::round(rng.normal(38.0, 10.0)), 18.0, 70.0);
  x[1] = rng.bernoulli(0.7) ? 1.0 : 0.0;
  x[2] = rng.normal(170.0, 9.0);
  x[3] = std::clamp(rng.normal(72.0, 14.0), 40.0, 150.0);
  x[4] = rng.poisson(1.5);
  x[5] = std::clamp(rng.normal(7.0, 2.0), 1.0, 20.0);
  x[6] = rng.normal(95.0, 12.0);
  return x;
}

}  // namespace

Cohort generate_survival_cohort(const SurvSimConfig& cfg, std::uint64_t seed) {
  cfg.validate();
  Cohort cohort;
  CounterRng effect_rng(seed, 1);
  for (int l = 0; l < cfg.n_treatments; ++l) {
    std::array<double, 7> tau{};
    for (std::size_t j = 0; j < tau.size(); ++j) {
      // Beta(1, 1) is the standard uniform.
      const double b = effect_rng.uniform();
      const bool keep = !effect_rng.bernoulli(0.5);
      tau[j] = (keep && !cfg.zero_effects) ? b / kFeatureMeans[j] : 0.0;
    }
    cohort.effects.push_back(tau);
  }

  CounterRng rng(seed, 2);
  CounterRng visits(seed, 3);
  auto uniform01 = [&visits] { return visits.uniform(); };
  int id = 0;
  for (std::size_t s = 0; s < cfg.site_sizes.size(); ++s) {
    std::vector<CohortRecord> site;
    for (int i = 0; i < cfg.site_sizes[s]; ++i) {
      CohortRecord r;
      r.id = ++id;
      r.site = static_cast<int>(s);
      r.features = draw_features(rng);
      r.treatment = static_cast<int>(rng.uniform_int(0, cfg.n_treatments - 1));
      const auto& tau = cohort.effects[static_cast<std::size_t>(r.treatment)];
      for (std::size_t j = 0; j < tau.size(); ++j) r.eta += r.features[j] * tau[j];
      r.t_event = weibull_event_time(rng.uniform(), r.eta, cfg);
      r.observed = interval_censor(r.t_event, cfg, uniform01);
      r.label = (r.t_event >= cfg.window_low && r.t_event <= cfg.window_high) ? 1 : 0;
      r.score = window_probability(r.eta, cfg);
      site.push_back(r);
    }
    std::vector<std::size_t> order(site.size());
    std::iota(order.begin(), order.end(), 0);
    rng.shuffle(std::span<std::size_t>(order));
    const auto n_val = static_cast<std::size_t>(validation_size(cfg.site_sizes[s]));
    for (std::size_t i = 0; i < n_val; ++i) site[order[i]].validation = true;
    for (const auto& r : site) {
      if (!r.validation) cohort.pooled_train.push_back(r);
    }
    cohort.sites.push_back(std::move(site));
  }
  return cohort;
}

ScoreSet Cohort::validation_scores(std::size_t site) const {
  ScoreSet out;
  for (const auto& r : sites.at(site)) {
    if (r.validation) (r.label ? out.pos : out.neg).push_back(r.score);
  }
  return out;
}

double Cohort::event_ratio() const {
  long long n = 0;
  long long events = 0;
  for (const auto& site : sites) {
    for (const auto& r : site) {
      ++n;
      events += r.observed.event_observed ? 1 : 0;
    }
  }
  return n == 0 ? 0.0 : static_cast<double>(events) / static_cast<double>(n);
}

std::vector<ScoreSet> generate_usecase_sites(std::uint64_t seed, const std::vector<int>& sizes) {
  CounterRng rng(seed, 0);
  std::vector<ScoreSet> out;
  for (int n : sizes) {
    ScoreSet s;
    for (int i = 0; i < n; ++i) {
      const double score = inv_logit(0.8 + rng.normal());
      (rng.bernoulli(score) ? s.pos : s.neg).push_back(score);
    }
    out.push_back(std::move(s));
  }
  return out;
}

}  // namespace distroc
