#include "distroc/rng.hpp"

#include <cmath>

#include "distroc/numerics.hpp"

namespace distroc {

namespace {

constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ULL;

std::uint64_t mix64(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

}  // namespace

CounterRng::CounterRng(std::uint64_t seed, std::uint64_t stream)
    : key_(mix64(seed ^ mix64(stream + kGolden))) {}

std::uint64_t CounterRng::next_u64() {
  ++counter_;
  return mix64(key_ + counter_ * kGolden);
}

double CounterRng::uniform() {
  return (static_cast<double>(next_u64() >> 11) + 0.5) * 0x1.0p-53;
}

double CounterRng::uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

std::int64_t CounterRng::uniform_int(std::int64_t lo, std::int64_t hi) {
  const std::uint64_t range = static_cast<std::uint64_t>(hi - lo) + 1;
  if (range == 0) return static_cast<std::int64_t>(next_u64());
  const std::uint64_t limit = UINT64_MAX - UINT64_MAX % range;
  std::uint64_t x = next_u64();
  while (x >= limit) x = next_u64();
  return lo + static_cast<std::int64_t>(x % range);
}

double CounterRng::normal() { return std_normal_quantile(uniform()); }

double CounterRng::normal(double mean, double sd) { return mean + sd * normal(); }

bool CounterRng::bernoulli(double p) { return uniform() < p; }

int CounterRng::poisson(double lambda) {
  // Inversion by sequential search; fine for the small rates used here.
  const double u = uniform();
  double p = std::exp(-lambda);
  double cdf = p;
  int k = 0;
  while (u > cdf && k < 10000) {
    ++k;
    p *= lambda / k;
    cdf += p;
  }
  return k;
}

std::uint64_t CounterRng::derive(std::uint64_t seed, std::uint64_t tag) {
  return mix64(mix64(seed) ^ (tag * kGolden + 0x632BE59BD9B4E019ULL));
}

}  // namespace distroc
