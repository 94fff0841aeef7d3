#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "insight/belief.hpp"
#include "insight/rng.hpp"
#include "insight/selection.hpp"
#include "insight/simulator.hpp"

namespace insight {

struct DynamicSamplingResult {
  std::vector<ItemId> selected;           // accepted items, in acceptance order
  std::vector<RolloutOutcome> outcomes;   // aligned with selected
  std::uint64_t attempts = 0;             // items rolled out, accepted or not
  std::uint64_t rollouts_consumed = 0;    // attempts * K
  bool budget_exhausted = false;          // fewer than m items were accepted
};

// Over-sampling oracle: walks the pool in successive uniformly shuffled
// passes, rolls out K responses per drawn item against the true environment
// and keeps only items whose rewards are not all identical. Stops at m
// accepted items or after max_attempts draws; in the latter case the partial
// batch is returned with budget_exhausted set.
DynamicSamplingResult oracle_dynamic_sampling(const EnvironmentState& env, const ItemPool& pool,
                                              std::size_t m, int rollouts,
                                              std::uint64_t max_attempts, RandomStream& rng);

}  // namespace insight
