#include "insight/experiment.hpp"

#include <cmath>
#include <stdexcept>

#include "insight/dynamic_sampling.hpp"

namespace insight {

double belief_rmse(const ItemPool& pool, const EnvironmentState& env) {
  if (pool.empty()) return 0.0;
  double sum = 0.0;
  for (std::size_t i = 0; i < pool.size(); ++i) {
    const double d = pool.beliefs()[i].mean() - env.true_rates[pool.ids()[i]];
    sum += d * d;
  }
  return std::sqrt(sum / static_cast<double>(pool.size()));
}

std::optional<std::uint64_t> steps_to_threshold(const ExperimentLog& log, double threshold) {
  for (const auto& row : log.rows) {
    if (row.mean_true_rate >= threshold) return row.step;
  }
  return std::nullopt;
}

double mean_effective_fraction(const ExperimentLog& log) {
  if (log.rows.size() < 2) return 0.0;
  double sum = 0.0;
  for (std::size_t i = 1; i < log.rows.size(); ++i) sum += log.rows[i].effective_batch_fraction;
  return sum / static_cast<double>(log.rows.size() - 1);
}

ExperimentResult run_experiment(const ExperimentConfig& cfg, const StepObserver& observer) {
  cfg.validate();

  ExperimentResult result;
  result.log.seed = cfg.seed;
  result.log.config_digest = config_digest(cfg);

  RandomStream env_rng = RandomStream::derived(cfg.seed, StreamPurpose::kEnvironmentInit, 0);
  EnvironmentState env = init_env(cfg.dynamics, cfg.pool_size, env_rng);
  ItemPool pool = ItemPool::uniform_prior(cfg.pool_size, cfg.prior_alpha, cfg.prior_beta);
  const bool oracle = cfg.acquisition.strategy == Strategy::kDynamicSampling;
  const std::uint64_t ds_budget =
      cfg.ds_max_attempts > 0 ? cfg.ds_max_attempts : 16 * static_cast<std::uint64_t>(cfg.pool_size);

  result.log.rows.push_back(StepRecord{0, env.mean_rate(), belief_rmse(pool, env), 0.0, 0, {}});

  for (std::uint64_t t = 0; t < cfg.steps; ++t) {
    try {
      std::vector<ItemId> batch;
      std::vector<RolloutOutcome> outcomes;
      std::uint64_t consumed = 0;

      if (oracle) {
        RandomStream ds_rng = RandomStream::derived(cfg.seed, StreamPurpose::kDynamicSampling, t);
        auto ds = oracle_dynamic_sampling(env, pool, cfg.batch_size, cfg.rollouts, ds_budget, ds_rng);
        batch = std::move(ds.selected);
        outcomes = std::move(ds.outcomes);
        consumed = ds.rollouts_consumed;
      } else {
        SelectionRound round = run_selection_round(pool, cfg.acquisition, cfg.batch_size,
                                                   cfg.candidate_size, cfg.seed, t);
        RandomStream rollout_rng = RandomStream::derived(cfg.seed, StreamPurpose::kRollouts, t);
        batch = round.selected;
        outcomes.reserve(batch.size());
        for (ItemId id : batch) outcomes.push_back(rollout(env, id, cfg.rollouts, rollout_rng));
        consumed = batch.size() * static_cast<std::uint64_t>(cfg.rollouts);
        result.rounds.push_back(std::move(round));
      }

      const double effective = effective_fraction(outcomes);
      env = apply_learning(env, batch, outcomes);
      for (std::size_t i = 0; i < batch.size(); ++i) {
        pool.set_belief(batch[i], discounted_update(pool.belief(batch[i]), outcomes[i], cfg.lambda));
      }

      StepRecord row{t + 1, env.mean_rate(), belief_rmse(pool, env), effective, consumed,
                     std::move(batch)};
      result.log.rows.push_back(std::move(row));
      if (observer) observer(result.log.rows.back(), pool);
    } catch (const std::exception& e) {
      throw std::runtime_error("step " + std::to_string(t) + ": " + e.what());
    }
  }

  result.final_pool = std::move(pool);
  result.final_env = std::move(env);
  return result;
}

}  // namespace insight
