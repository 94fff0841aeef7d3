#pragma once

#include <cstdint>
#include <string>
#include <variant>
#include <vector>

#include "insight/belief.hpp"
#include "insight/rng.hpp"
#include "insight/selection.hpp"

namespace insight {

// Initial true success rates: iid uniform on [lo, hi].
struct UniformInit {
  double lo = 0.0;
  double hi = 1.0;
};

// Initial rates drawn from a finite mixture of point masses.
struct MixtureInit {
  std::vector<double> weights;
  std::vector<double> rates;
};

// Initial rates given explicitly, one per item.
struct FixedInit {
  std::vector<double> rates;
};

using InitialDistribution = std::variant<UniformInit, MixtureInit, FixedInit>;

// Surrogate for how training moves an item's success rate. A selected item
// whose K rewards are not all equal gets p <- p + gain (1 - p); a uniform
// group carries no learning signal and leaves p alone. Unselected items move
// by transfer * gain * (effective batch fraction) * (1 - p).
struct LearningDynamics {
  double gain = 0.05;
  double transfer = 0.0;
  InitialDistribution initial = UniformInit{};

  // Throws std::invalid_argument naming the offending field.
  void validate(std::size_t pool_size) const;
};

// True per-item success rates, indexed by item id 0..N-1.
struct EnvironmentState {
  std::vector<double> true_rates;
  std::uint64_t step = 0;
  LearningDynamics dynamics;

  std::size_t size() const { return true_rates.size(); }
  double mean_rate() const;
};

EnvironmentState init_env(const LearningDynamics& dynamics, std::size_t pool_size,
                          RandomStream& rng);

// successes ~ Binomial(K, true_rate(item)). Throws std::out_of_range for an
// unknown item and std::invalid_argument for K < 1.
RolloutOutcome rollout(const EnvironmentState& env, ItemId item, int rollouts, RandomStream& rng);

inline bool is_uniform_group(const RolloutOutcome& o) {
  return o.successes == 0 || o.successes == o.rollouts;
}

// Share of outcomes with mixed rewards; 0 for an empty batch.
double effective_fraction(const std::vector<RolloutOutcome>& outcomes);

// Advances the environment one step. batch and outcomes must be aligned and
// batch ids distinct and known.
EnvironmentState apply_learning(const EnvironmentState& env, const std::vector<ItemId>& batch,
                                const std::vector<RolloutOutcome>& outcomes);

}  // namespace insight
