#pragma once

#include <cstdint>
#include <span>
#include <utility>

namespace distroc {

// Counter-based 64-bit generator: draw i is a fixed bijective mix of
// (key, i), so streams are reproducible bit-for-bit on every platform.
// Distributions are implemented here rather than through <random>, whose
// distribution objects are not portable across standard libraries.
class CounterRng {
 public:
  explicit CounterRng(std::uint64_t seed, std::uint64_t stream = 0);

  std::uint64_t next_u64();
  std::uint64_t counter() const { return counter_; }

  // Uniform on the open interval (0, 1), 53 bits.
  double uniform();
  double uniform(double lo, double hi);
  // Uniform integer on [lo, hi] (rejection sampling, unbiased).
  std::int64_t uniform_int(std::int64_t lo, std::int64_t hi);
  // Standard normal by inversion.
  double normal();
  double normal(double mean, double sd);
  bool bernoulli(double p);
  int poisson(double lambda);

  template <typename T>
  void shuffle(std::span<T> values) {
    for (std::size_t i = values.size(); i > 1; --i) {
      const auto j = static_cast<std::size_t>(uniform_int(0, static_cast<std::int64_t>(i - 1)));
      std::swap(values[i - 1], values[j]);
    }
  }

  // Deterministic child seed for an independent stream.
  static std::uint64_t derive(std::uint64_t seed, std::uint64_t tag);

 private:
  std::uint64_t key_;
  std::uint64_t counter_ = 0;
};

}  // namespace distroc
