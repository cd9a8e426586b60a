#include "distroc/privacy.hpp"

#include <cmath>

#include "distroc/error.hpp"
#include "distroc/rng.hpp"

namespace distroc {

void PrivacyParams::validate() const {
  if (!(epsilon > 0.0 && epsilon < 1.0)) {
    throw DomainError("privacy: epsilon must lie in (0, 1), got " + std::to_string(epsilon));
  }
  if (!(delta > 0.0 && delta < 1.0)) {
    throw DomainError("privacy: delta must lie in (0, 1), got " + std::to_string(delta));
  }
  if (!(l2_sensitivity > 0.0) || !std::isfinite(l2_sensitivity)) {
    throw DomainError("privacy: l2 sensitivity must be positive");
  }
  if (privacy_level < 1) throw DomainError("privacy: privacy level q must be >= 1");
}

NoiseSpec noise_scale(const PrivacyParams& params) {
  params.validate();
  NoiseSpec spec;
  spec.c = std::sqrt(2.0 * std::log(1.25 / params.delta));
  spec.tau = spec.c * params.l2_sensitivity / params.epsilon;
  return spec;
}

NoiseSpec noise_override(const PrivacyParams& params, double tau) {
  if (!(tau >= 0.0) || !std::isfinite(tau)) throw DomainError("privacy: tau must be >= 0");
  NoiseSpec spec = noise_scale(params);
  spec.tau = tau;
  spec.overridden = true;
  return spec;
}

std::vector<double> gaussian_mechanism(std::span<const double> scores, const NoiseSpec& spec,
                                       std::uint64_t rng_seed) {
  CounterRng rng(rng_seed);
  std::vector<double> out;
  out.reserve(scores.size());
  for (double s : scores) out.push_back(s + spec.tau * rng.normal());
  return out;
}

std::pair<double, double> recommended_params(double l2_sensitivity) {
  if (!(l2_sensitivity > 0.0)) throw DomainError("privacy: l2 sensitivity must be positive");
  if (l2_sensitivity <= 0.01) return {0.2, 0.1};
  if (l2_sensitivity <= 0.03) return {0.3, 0.4};
  if (l2_sensitivity <= 0.05) return {0.5, 0.3};
  if (l2_sensitivity <= 0.07) return {0.5, 0.5};
  throw CautionError("privacy: l2 sensitivity " + std::to_string(l2_sensitivity) +
                     " > 0.07; no recommended (epsilon, delta), set them explicitly and "
                     "expect reduced accuracy");
}

GuardToken guard_count(long long n, long long q, const std::string& stage,
                       const std::string& site_id) {
  if (q < 1) throw DomainError("guard_count: q must be >= 1");
  if (n < q) throw PrivacyRefusal(stage, site_id, n, q);
  return GuardToken(n, q);
}

}  // namespace distroc
