#include "distroc/simulation.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <memory>

#include "distroc/error.hpp"
#include "distroc/federation/coordinator.hpp"
#include "distroc/pipeline.hpp"
#include "distroc/rng.hpp"
#include "distroc/rocglm.hpp"

namespace distroc {

std::uint64_t replication_seed(std::uint64_t seed, int rep) {
  return CounterRng::derive(seed, static_cast<std::uint64_t>(rep));
}

ReplicationResult run_replication(const SimulationConfig& cfg, int rep) {
  ReplicationResult r;
  r.rep = rep;
  const std::uint64_t seed = replication_seed(cfg.seed, rep);
  try {
    SimConfig data_cfg = cfg.data;
    data_cfg.seed = seed;
    const AucSimData data = generate_auc_sim(data_cfg);
    r.n = data.n;
    r.gamma = data.gamma;

    const AucEstimate emp = estimate_auc(data.pooled, cfg.alpha);
    r.auc_emp = emp.auc;
    r.ci_low = emp.ci_low;
    r.ci_high = emp.ci_high;

    const ThresholdGrid grid = make_threshold_grid(cfg.n_thresholds);
    const RocGlmFit pooled = fit_rocglm(data.pooled, grid, cfg.alpha);
    r.auc_rocglm = pooled.auc;
    r.delta_auc = r.auc_emp - r.auc_rocglm;

    if (cfg.distributed) {
      std::vector<SiteEndpoint> endpoints;
      for (std::size_t k = 0; k < data.sites.size(); ++k) {
        SiteData site{"site" + std::to_string(k + 1), data.sites[k], {}, std::nullopt};
        auto handler = std::make_shared<SiteHandler>(std::move(site), cfg.privacy.privacy_level,
                                                     CounterRng::derive(seed, 100 + k));
        endpoints.push_back({handler->site_id(), std::make_unique<InProcessChannel>(handler)});
      }
      Coordinator coord(std::move(endpoints), cfg.privacy.privacy_level,
                        "sim-" + std::to_string(rep));
      DistributedRocOptions opts;
      opts.privacy = cfg.privacy;
      opts.tau = cfg.tau;
      opts.alpha = cfg.alpha;
      const RocGlmFit fit = fit_distributed_rocglm(coord, grid, opts);
      r.auc_distr = fit.auc;
      r.ci_low_distr = fit.ci.low;
      r.ci_high_distr = fit.ci.high;
      r.delta_auc = r.auc_emp - r.auc_distr;
      r.delta_ci = std::abs(r.ci_low_distr - r.ci_low) + std::abs(r.ci_high_distr - r.ci_high);
    }
  } catch (const std::exception& e) {
    r.ok = false;
    r.error = e.what();
  }
  return r;
}

std::vector<ReplicationResult> run_simulation(const SimulationConfig& cfg) {
  if (cfg.reps < 1) throw DomainError("run_simulation: reps must be >= 1");
  std::vector<ReplicationResult> out(static_cast<std::size_t>(cfg.reps));
  if (cfg.parallel) {
#pragma omp parallel for schedule(dynamic, 1)
    for (int rep = 0; rep < cfg.reps; ++rep) out[static_cast<std::size_t>(rep)] = run_replication(cfg, rep);
  } else {
    for (int rep = 0; rep < cfg.reps; ++rep) out[static_cast<std::size_t>(rep)] = run_replication(cfg, rep);
  }
  return out;
}

double quantile_sorted(const std::vector<double>& sorted, double p) {
  if (sorted.empty()) throw DomainError("quantile_sorted: empty input");
  const double h = (static_cast<double>(sorted.size()) - 1.0) * p;
  const auto lo = static_cast<std::size_t>(std::floor(h));
  const auto hi = std::min(lo + 1, sorted.size() - 1);
  return sorted[lo] + (h - static_cast<double>(lo)) * (sorted[hi] - sorted[lo]);
}

std::vector<BinSummary> summarize_by_bin(const std::vector<double>& keys,
                                         const std::vector<double>& values, double width) {
  if (keys.size() != values.size()) throw DomainError("summarize_by_bin: length mismatch");
  if (!(width > 0.0)) throw DomainError("summarize_by_bin: width must be positive");
  std::map<long long, std::vector<double>> groups;
  for (std::size_t i = 0; i < keys.size(); ++i) {
    // Right-closed bins; the small offset keeps exact edges like 0.625 in (0.6, 0.625].
    const auto b = static_cast<long long>(std::ceil(keys[i] / width - 1e-9)) - 1;
    groups[b].push_back(values[i]);
  }
  std::vector<BinSummary> out;
  for (auto& [b, v] : groups) {
    std::sort(v.begin(), v.end());
    BinSummary s;
    s.low = static_cast<double>(b) * width;
    s.high = static_cast<double>(b + 1) * width;
    s.count = static_cast<long long>(v.size());
    s.min = v.front();
    s.max = v.back();
    s.q1 = quantile_sorted(v, 0.25);
    s.median = quantile_sorted(v, 0.5);
    s.q3 = quantile_sorted(v, 0.75);
    double sum = 0.0;
    for (double x : v) sum += x;
    s.mean = sum / static_cast<double>(v.size());
    double ss = 0.0;
    for (double x : v) ss += (x - s.mean) * (x - s.mean);
    s.sd = v.size() > 1 ? std::sqrt(ss / static_cast<double>(v.size() - 1)) : 0.0;
    out.push_back(s);
  }
  return out;
}

}  // namespace distroc
