#include "insight/simulator.hpp"

#include <numeric>
#include <stdexcept>
#include <unordered_set>

namespace insight {

namespace {

bool in_unit(double v) { return v >= 0.0 && v <= 1.0; }

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};

}  // namespace

void LearningDynamics::validate(std::size_t pool_size) const {
  if (!in_unit(gain)) throw std::invalid_argument("env.gain must lie in [0, 1]");
  if (!in_unit(transfer)) throw std::invalid_argument("env.transfer must lie in [0, 1]");
  std::visit(Overloaded{
                 [](const UniformInit& u) {
                   if (!in_unit(u.lo) || !in_unit(u.hi) || u.lo > u.hi) {
                     throw std::invalid_argument("env.lo/env.hi must satisfy 0 <= lo <= hi <= 1");
                   }
                 },
                 [](const MixtureInit& m) {
                   if (m.weights.empty() || m.weights.size() != m.rates.size()) {
                     throw std::invalid_argument(
                         "env.weights and env.rates must be non-empty and equally long");
                   }
                   double total = 0.0;
                   for (double w : m.weights) {
                     if (!(w >= 0.0)) throw std::invalid_argument("env.weights must be >= 0");
                     total += w;
                   }
                   if (!(total > 0.0)) throw std::invalid_argument("env.weights must not all be 0");
                   for (double r : m.rates) {
                     if (!in_unit(r)) throw std::invalid_argument("env.rates must lie in [0, 1]");
                   }
                 },
                 [pool_size](const FixedInit& f) {
                   if (f.rates.size() != pool_size) {
                     throw std::invalid_argument("env.rates must list exactly pool_size rates");
                   }
                   for (double r : f.rates) {
                     if (!in_unit(r)) throw std::invalid_argument("env.rates must lie in [0, 1]");
                   }
                 },
             },
             initial);
}

double EnvironmentState::mean_rate() const {
  if (true_rates.empty()) return 0.0;
  return std::accumulate(true_rates.begin(), true_rates.end(), 0.0) /
         static_cast<double>(true_rates.size());
}

EnvironmentState init_env(const LearningDynamics& dynamics, std::size_t pool_size,
                          RandomStream& rng) {
  dynamics.validate(pool_size);
  EnvironmentState env;
  env.dynamics = dynamics;
  env.true_rates.resize(pool_size);
  std::visit(Overloaded{
                 [&](const UniformInit& u) {
                   for (double& p : env.true_rates) p = u.lo + (u.hi - u.lo) * rng.uniform();
                 },
                 [&](const MixtureInit& m) {
                   const double total =
                       std::accumulate(m.weights.begin(), m.weights.end(), 0.0);
                   for (double& p : env.true_rates) {
                     double u = rng.uniform() * total;
                     std::size_t k = 0;
                     while (k + 1 < m.weights.size() && u >= m.weights[k]) {
                       u -= m.weights[k];
                       ++k;
                     }
                     p = m.rates[k];
                   }
                 },
                 [&](const FixedInit& f) { env.true_rates = f.rates; },
             },
             dynamics.initial);
  return env;
}

RolloutOutcome rollout(const EnvironmentState& env, ItemId item, int rollouts, RandomStream& rng) {
  if (rollouts < 1) throw std::invalid_argument("rollout: K must be >= 1");
  if (item >= env.true_rates.size()) {
    throw std::out_of_range("rollout: unknown item " + std::to_string(item));
  }
  return RolloutOutcome{rng.binomial(rollouts, env.true_rates[item]), rollouts};
}

double effective_fraction(const std::vector<RolloutOutcome>& outcomes) {
  if (outcomes.empty()) return 0.0;
  std::size_t effective = 0;
  for (const auto& o : outcomes) {
    if (!is_uniform_group(o)) ++effective;
  }
  return static_cast<double>(effective) / static_cast<double>(outcomes.size());
}

EnvironmentState apply_learning(const EnvironmentState& env, const std::vector<ItemId>& batch,
                                const std::vector<RolloutOutcome>& outcomes) {
  if (batch.size() != outcomes.size()) {
    throw std::invalid_argument("apply_learning: batch and outcomes differ in length");
  }
  std::unordered_set<ItemId> selected;
  for (ItemId id : batch) {
    if (id >= env.true_rates.size()) {
      throw std::out_of_range("apply_learning: unknown item " + std::to_string(id));
    }
    if (!selected.insert(id).second) {
      throw std::invalid_argument("apply_learning: duplicate item " + std::to_string(id));
    }
  }
  for (const auto& o : outcomes) validate(o);

  EnvironmentState next = env;
  next.step = env.step + 1;
  const double gain = env.dynamics.gain;
  for (std::size_t i = 0; i < batch.size(); ++i) {
    if (is_uniform_group(outcomes[i])) continue;
    double& p = next.true_rates[batch[i]];
    p += gain * (1.0 - p);
  }
  const double spill = env.dynamics.transfer * gain * effective_fraction(outcomes);
  if (spill > 0.0) {
    for (std::size_t id = 0; id < next.true_rates.size(); ++id) {
      if (selected.contains(id)) continue;
      double& p = next.true_rates[id];
      p += spill * (1.0 - p);
    }
  }
  return next;
}

}  // namespace insight
