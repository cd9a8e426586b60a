#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace distroc {

struct PrivacyParams {
  double epsilon = 0.3;
  double delta = 0.4;
  double l2_sensitivity = 0.016;
  int privacy_level = 5;  // q: smallest group an aggregate may summarize

  // Throws DomainError unless epsilon, delta in (0, 1), l2 > 0, q >= 1.
  void validate() const;
};

// Gaussian-mechanism noise: r ~ N(0, tau^2), tau = c * l2 / epsilon,
// c = sqrt(2 ln(1.25 / delta)).
struct NoiseSpec {
  double tau = 0.0;
  double c = 0.0;
  // Set when tau was supplied explicitly rather than derived.
  bool overridden = false;
};

// Minimal admissible noise for the given parameters.
NoiseSpec noise_scale(const PrivacyParams& params);

// Explicit tau. Values below the minimum for `params` lose the privacy
// guarantee; they exist for reduction tests and noise-free baselines.
NoiseSpec noise_override(const PrivacyParams& params, double tau);

// scores[i] + r_i with r_i drawn from a counter-based stream keyed by seed.
std::vector<double> gaussian_mechanism(std::span<const double> scores, const NoiseSpec& spec,
                                       std::uint64_t rng_seed);

// (epsilon, delta) recommended for a model's l2-sensitivity. Throws
// CautionError above 0.07, where the noise is too large for the accuracy
// targets.
std::pair<double, double> recommended_params(double l2_sensitivity);

// Proof that a disclosure check passed. Only guard_count can create one,
// and every aggregate-bearing message constructor requires one, so an
// aggregate cannot be built without going through the check.
class GuardToken {
 public:
  long long n() const { return n_; }
  long long q() const { return q_; }

 private:
  friend GuardToken guard_count(long long n, long long q, const std::string& stage,
                                const std::string& site_id);
  GuardToken(long long n, long long q) : n_(n), q_(q) {}
  long long n_;
  long long q_;
};

// Passes iff n >= q; otherwise throws PrivacyRefusal carrying (stage, site, n, q).
GuardToken guard_count(long long n, long long q, const std::string& stage = "aggregate",
                       const std::string& site_id = "");

}  // namespace distroc
