#pragma once

#include <cstdint>
#include <random>
#include <string>

namespace insight {

// What a derived stream is used for. Each purpose gets its own stream per
// step, so adding a consumer of one purpose never perturbs another.
enum class StreamPurpose : std::uint64_t {
  kEnvironmentInit = 1,
  kCandidates = 2,
  kScoring = 3,
  kRollouts = 4,
  kDynamicSampling = 5,
};

// Seed splitting: seed = mix(mix(mix(master) ^ purpose) + step), where mix is
// the SplitMix64 finalizer. Documented in the README; changing it changes
// every recorded experiment.
std::uint64_t mix64(std::uint64_t x);
std::uint64_t derive_seed(std::uint64_t master, StreamPurpose purpose, std::uint64_t step);

// A deterministic random stream. The engine is std::mt19937_64, whose output
// sequence is fixed by the standard; all variate transforms are implemented
// here rather than through <random> distributions, which are not portable.
class RandomStream {
 public:
  explicit RandomStream(std::uint64_t seed) : seed_(seed), engine_(seed) {}

  static RandomStream derived(std::uint64_t master, StreamPurpose purpose, std::uint64_t step) {
    return RandomStream(derive_seed(master, purpose, step));
  }

  std::uint64_t seed() const { return seed_; }
  std::uint64_t next_u64() { return engine_(); }

  // Uniform on [0, 1) with 53 random bits.
  double uniform();
  // Uniform integer in [0, n), unbiased. n must be > 0.
  std::uint64_t uniform_index(std::uint64_t n);
  double standard_normal();
  // Gamma(shape, 1) via Marsaglia-Tsang; shape > 0.
  double gamma(double shape);
  // Beta(a, b) as X / (X + Y) with independent gammas.
  double beta(double a, double b);
  // Number of successes in k Bernoulli(p) trials.
  int binomial(int k, double p);

 private:
  std::uint64_t seed_;
  std::mt19937_64 engine_;
};

// Hex rendering of a 64-bit value, used for digests in logs.
std::string hex64(std::uint64_t value);

}  // namespace insight
