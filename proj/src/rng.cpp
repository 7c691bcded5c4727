#include "btlrank/rng.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

namespace btlrank {

std::uint64_t mix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::uint64_t derive_seed(std::uint64_t base, std::uint64_t index) {
  return mix64(base ^ mix64(index));
}

double Rng::uniform() {
  return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
}

std::uint64_t Rng::uniform_index(std::uint64_t bound) {
  // Largest multiple of bound that fits; reject draws above it.
  const std::uint64_t limit =
      std::numeric_limits<std::uint64_t>::max() -
      std::numeric_limits<std::uint64_t>::max() % bound;
  std::uint64_t x;
  do {
    x = engine_();
  } while (x >= limit);
  return x % bound;
}

std::int64_t Rng::binomial(std::int64_t trials, double p) {
  if (trials <= 0 || p <= 0.0) return 0;
  if (p >= 1.0) return trials;
  if (trials <= 10000) {
    std::int64_t count = 0;
    for (std::int64_t l = 0; l < trials; ++l) count += bernoulli(p) ? 1 : 0;
    return count;
  }
  return binomial_inverse_cdf(trials, p);
}

std::int64_t Rng::binomial_inverse_cdf(std::int64_t trials, double p) {
  const double n = static_cast<double>(trials);
  const auto mode = std::clamp<std::int64_t>(
      static_cast<std::int64_t>(std::floor((n + 1.0) * p)), 0, trials);
  const double m = static_cast<double>(mode);
  const double log_pmf_mode = std::lgamma(n + 1.0) - std::lgamma(m + 1.0) -
                              std::lgamma(n - m + 1.0) + m * std::log(p) +
                              (n - m) * std::log1p(-p);
  const double pmf_mode = std::exp(log_pmf_mode);
  const double cutoff = pmf_mode * 1e-18;
  const double odds = p / (1.0 - p);

  // pmf values on [lo, mode) collected in reverse, then [mode, hi].
  std::vector<double> below;
  double pmf = pmf_mode;
  std::int64_t lo = mode;
  while (lo > 0) {
    const double k = static_cast<double>(lo);
    pmf *= k / ((n - k + 1.0) * odds);
    if (pmf < cutoff) break;
    below.push_back(pmf);
    --lo;
  }
  std::vector<double> above{pmf_mode};
  pmf = pmf_mode;
  std::int64_t hi = mode;
  while (hi < trials) {
    const double k = static_cast<double>(hi);
    pmf *= (n - k) / (k + 1.0) * odds;
    if (pmf < cutoff) break;
    above.push_back(pmf);
    ++hi;
  }

  double total = 0.0;
  for (auto it = below.rbegin(); it != below.rend(); ++it) total += *it;
  for (double v : above) total += v;

  const double target = uniform() * total;
  double cumulative = 0.0;
  std::int64_t k = lo;
  for (auto it = below.rbegin(); it != below.rend(); ++it, ++k) {
    cumulative += *it;
    if (target < cumulative) return k;
  }
  for (double v : above) {
    cumulative += v;
    if (target < cumulative) return k;
    ++k;
  }
  return hi;
}

}  // namespace btlrank
