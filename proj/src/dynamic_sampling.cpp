#include "insight/dynamic_sampling.hpp"

#include <stdexcept>

namespace insight {

DynamicSamplingResult oracle_dynamic_sampling(const EnvironmentState& env, const ItemPool& pool,
                                              std::size_t m, int rollouts,
                                              std::uint64_t max_attempts, RandomStream& rng) {
  if (pool.empty()) throw std::invalid_argument("oracle_dynamic_sampling: empty pool");
  if (m < 1 || m > pool.size()) {
    throw std::invalid_argument("oracle_dynamic_sampling: need 1 <= m <= pool size");
  }
  if (rollouts < 1) throw std::invalid_argument("oracle_dynamic_sampling: K must be >= 1");

  DynamicSamplingResult result;
  std::vector<ItemId> order = pool.ids();
  std::size_t cursor = order.size();
  std::vector<bool> accepted(order.size(), false);

  while (result.selected.size() < m && result.attempts < max_attempts) {
    if (cursor == order.size()) {
      // Fresh pass. Items already accepted this step are skipped below.
      for (std::size_t i = order.size(); i > 1; --i) {
        std::swap(order[i - 1], order[rng.uniform_index(i)]);
      }
      cursor = 0;
    }
    const ItemId id = order[cursor++];
    const std::size_t index = pool.index_of(id);
    if (accepted[index]) continue;
    const RolloutOutcome outcome = rollout(env, id, rollouts, rng);
    ++result.attempts;
    result.rollouts_consumed += static_cast<std::uint64_t>(rollouts);
    if (is_uniform_group(outcome)) continue;
    accepted[index] = true;
    result.selected.push_back(id);
    result.outcomes.push_back(outcome);
  }
  result.budget_exhausted = result.selected.size() < m;
  return result;
}

}  // namespace insight
