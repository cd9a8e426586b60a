#include <gtest/gtest.h>

#include <cmath>
#include <deque>
#include <limits>

#include "distroc/error.hpp"
#include "distroc/rng.hpp"
#include "distroc/roc.hpp"
#include "distroc/simgen.hpp"

using namespace distroc;

TEST(AucSim, NoFlipsGivePerfectAuc) {
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    SimConfig cfg;
    cfg.seed = seed;
    cfg.gamma_override = 0.0;
    const AucSimData d = generate_auc_sim(cfg);
    EXPECT_EQ(empirical_auc(d.pooled), 1.0);
  }
}

TEST(AucSim, AllFlippedCentresOnHalf) {
  double sum = 0.0;
  for (std::uint64_t seed = 1; seed <= 200; ++seed) {
    SimConfig cfg;
    cfg.seed = seed;
    cfg.n_override = 2500;
    cfg.gamma_override = 1.0;
    sum += empirical_auc(generate_auc_sim(cfg).pooled);
  }
  const double mean = sum / 200.0;
  EXPECT_GE(mean, 0.48);
  EXPECT_LE(mean, 0.52);
}

TEST(AucSim, SitesPartitionPooled) {
  SimConfig cfg;
  cfg.seed = 4;
  cfg.k_sites = 5;
  const AucSimData d = generate_auc_sim(cfg);
  ASSERT_EQ(d.sites.size(), 5u);
  std::size_t n = 0;
  std::size_t n_pos = 0;
  for (const auto& s : d.sites) {
    n += s.pos.size() + s.neg.size();
    n_pos += s.pos.size();
  }
  EXPECT_EQ(n, static_cast<std::size_t>(d.n));
  EXPECT_EQ(n_pos, d.pooled.pos.size());
  EXPECT_GE(d.n, 100);
  EXPECT_LE(d.n, 2500);
  for (const auto& s : d.sites) {
    EXPECT_LE(std::abs(static_cast<long>(s.pos.size()) -
                       static_cast<long>(d.pooled.pos.size() / 5)), 1);
  }
}

TEST(AucSim, Deterministic) {
  SimConfig cfg;
  cfg.seed = 77;
  const AucSimData a = generate_auc_sim(cfg);
  const AucSimData b = generate_auc_sim(cfg);
  EXPECT_EQ(a.pooled.pos, b.pooled.pos);
  EXPECT_EQ(a.pooled.neg, b.pooled.neg);
  EXPECT_EQ(a.gamma, b.gamma);
}

TEST(AucSim, InvalidConfig) {
  SimConfig cfg;
  cfg.gamma_max = 1.5;
  EXPECT_THROW(generate_auc_sim(cfg), DomainError);
  SimConfig n;
  n.n_min = 0;
  EXPECT_THROW(generate_auc_sim(n), DomainError);
}

TEST(Weibull, Examples) {
  const SurvSimConfig cfg;
  EXPECT_NEAR(weibull_event_time(std::exp(-1.0), 0.0, cfg), std::pow(2000.0, 1.0 / 1.4), 1e-9);
  // 2000^(1/1.4)
  EXPECT_NEAR(weibull_event_time(std::exp(-1.0), 0.0, cfg), 227.97045620951937, 1e-9);
  EXPECT_LT(weibull_event_time(0.5, 50.0, cfg), 1e-9);
  EXPECT_LT(weibull_event_time(1.0 - 1e-15, 0.0, cfg), 1e-6);
  EXPECT_THROW(weibull_event_time(0.0, 0.0, cfg), DomainError);
  EXPECT_THROW(weibull_event_time(1.0, 0.0, cfg), DomainError);
}

TEST(Weibull, MonteCarloSurvival) {
  const SurvSimConfig cfg;
  CounterRng rng(2024);
  std::vector<double> t(100000);
  for (auto& v : t) v = weibull_event_time(rng.uniform(), 0.0, cfg);
  for (double at : {50.0, 100.0, 150.0}) {
    double above = 0.0;
    for (double v : t) above += v > at ? 1.0 : 0.0;
    EXPECT_NEAR(above / static_cast<double>(t.size()),
                std::exp(-cfg.lambda * std::pow(at, cfg.k_shape)), 0.01)
        << at;
  }
}

TEST(WindowProbability, MatchesCdf) {
  const SurvSimConfig cfg;
  const auto surv = [&](double t, double eta) {
    return std::exp(-cfg.lambda * std::exp(eta) * std::pow(t, cfg.k_shape));
  };
  for (double eta : {-1.0, 0.0, 0.7}) {
    EXPECT_NEAR(window_probability(eta, cfg), surv(26.14, eta) - surv(104.29, eta), 1e-15);
  }
}

namespace {

std::function<double()> scripted(std::deque<double> values) {
  auto q = std::make_shared<std::deque<double>>(std::move(values));
  return [q] {
    const double v = q->front();
    q->pop_front();
    return v;
  };
}

}  // namespace

TEST(IntervalCensor, ForcedInterval) {
  const SurvSimConfig cfg;
  const CensoredTime c = interval_censor(78.0, cfg, scripted({70.0 / 156.0, 90.0 / 156.0}));
  EXPECT_TRUE(c.event_observed);
  EXPECT_DOUBLE_EQ(c.high, 90.0);
  EXPECT_DOUBLE_EQ(c.low, 70.0);
}

TEST(IntervalCensor, BeyondHorizonAlwaysCensored) {
  const SurvSimConfig cfg;
  CounterRng rng(3);
  for (int i = 0; i < 1000; ++i) {
    const CensoredTime c = interval_censor(200.0, cfg, [&] { return rng.uniform(); });
    EXPECT_FALSE(c.event_observed);
    EXPECT_TRUE(std::isinf(c.high));
    EXPECT_LE(c.low, 156.0);
  }
}

TEST(IntervalCensor, CensoredAtLastVisitBeforeEvent) {
  SurvSimConfig cfg;
  cfg.max_draws = 2;
  // Visits (10, 20) and (30, 40) miss an event at 50.
  const CensoredTime c =
      interval_censor(50.0, cfg, scripted({10 / 156.0, 20 / 156.0, 40 / 156.0, 30 / 156.0}));
  EXPECT_FALSE(c.event_observed);
  EXPECT_NEAR(c.low, 40.0, 1e-12);
  EXPECT_THROW(interval_censor(0.0, cfg, scripted({})), DomainError);
}

TEST(Cohort, ValidationSizes) {
  EXPECT_EQ(validation_size(60), 20);
  EXPECT_EQ(validation_size(140), 47);
  const Cohort c = generate_survival_cohort({}, 5);
  ASSERT_EQ(c.sites.size(), 4u);
  const std::vector<int> expected = {20, 47, 20, 20};
  std::size_t train = 0;
  for (std::size_t k = 0; k < 4; ++k) {
    const ScoreSet v = c.validation_scores(k);
    EXPECT_EQ(static_cast<int>(v.pos.size() + v.neg.size()), expected[k]);
    train += c.sites[k].size() - static_cast<std::size_t>(expected[k]);
  }
  EXPECT_EQ(c.pooled_train.size(), train);
}

TEST(Cohort, Deterministic) {
  const Cohort a = generate_survival_cohort({}, 9);
  const Cohort b = generate_survival_cohort({}, 9);
  ASSERT_EQ(a.pooled_train.size(), b.pooled_train.size());
  for (std::size_t i = 0; i < a.pooled_train.size(); ++i) {
    EXPECT_EQ(a.pooled_train[i].t_event, b.pooled_train[i].t_event);
    EXPECT_EQ(a.pooled_train[i].features, b.pooled_train[i].features);
  }
  EXPECT_EQ(a.effects, b.effects);
}

TEST(Cohort, ZeroEffectsPrevalenceMatchesBaseline) {
  SurvSimConfig cfg;
  cfg.zero_effects = true;
  cfg.site_sizes = {20000};
  const Cohort c = generate_survival_cohort(cfg, 13);
  double labels = 0.0;
  for (const auto& r : c.sites[0]) {
    EXPECT_EQ(r.eta, 0.0);
    labels += r.label;
  }
  const double p = window_probability(0.0, cfg);
  const double n = static_cast<double>(c.sites[0].size());
  EXPECT_NEAR(labels / n, p, 4.0 * std::sqrt(p * (1 - p) / n));
}

TEST(UseCaseSites, Shape) {
  const auto sites = generate_usecase_sites(3);
  ASSERT_EQ(sites.size(), 5u);
  const std::vector<std::size_t> sizes = {56, 49, 60, 49, 60};
  for (std::size_t k = 0; k < 5; ++k) {
    EXPECT_EQ(sites[k].pos.size() + sites[k].neg.size(), sizes[k]);
    for (double s : sites[k].pos) {
      EXPECT_GT(s, 0.0);
      EXPECT_LT(s, 1.0);
    }
  }
}
