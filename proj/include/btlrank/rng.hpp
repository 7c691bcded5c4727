#pragma once

#include <cstdint>
#include <random>

namespace btlrank {

// SplitMix64 finalizer. Used to decorrelate derived seeds.
std::uint64_t mix64(std::uint64_t x);

// Seed for sub-stream `index` of `base`: mix64(base ^ mix64(index)).
// Experiments use index = (sweep_index << 32) | trial_index, and further
// derive per-purpose streams (graph, outcomes) from the trial seed.
std::uint64_t derive_seed(std::uint64_t base, std::uint64_t index);

// Seeded random source built on std::mt19937_64, whose output sequence is
// fixed by the standard. All derived draws (uniform reals, bounded integers,
// binomials) are implemented here rather than through <random>
// distributions, whose algorithms vary between standard libraries. Results are
// therefore bit-identical across platforms for a given seed.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next_u64() { return engine_(); }

  // Uniform on [0, 1) with 53 random bits.
  double uniform();

  // Uniform on {0, ..., bound - 1}; bound must be positive. Unbiased
  // (rejection sampling).
  std::uint64_t uniform_index(std::uint64_t bound);

  bool bernoulli(double p) { return uniform() < p; }

  // Binomial(trials, p). Sums Bernoulli draws for trials <= 10^4 and uses an
  // inverse-CDF search over the numerically significant support otherwise.
  std::int64_t binomial(std::int64_t trials, double p);

 private:
  std::int64_t binomial_inverse_cdf(std::int64_t trials, double p);

  std::mt19937_64 engine_;
};

}  // namespace btlrank
