#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "insight/config.hpp"
#include "insight/selection.hpp"
#include "insight/simulator.hpp"

namespace insight {

// Metrics after `step` completed steps (row 0 is the initial state).
struct StepRecord {
  std::uint64_t step = 0;
  double mean_true_rate = 0.0;
  double belief_rmse = 0.0;               // RMS of (belief mean - true rate) over the pool
  double effective_batch_fraction = 0.0;  // 0 for row 0
  std::uint64_t rollouts_consumed = 0;    // this step only
  std::vector<ItemId> selected;
};

struct ExperimentLog {
  std::vector<StepRecord> rows;
  std::uint64_t seed = 0;
  std::string config_digest;
};

struct ExperimentResult {
  ExperimentLog log;
  ItemPool final_pool;
  EnvironmentState final_env;
  std::vector<SelectionRound> rounds;  // empty for dynamic_sampling
};

// Called after every completed step with the updated record and beliefs.
using StepObserver = std::function<void(const StepRecord&, const ItemPool&)>;

// Runs the select -> rollout -> learn -> belief-update loop for cfg.steps
// steps. Fully determined by cfg (including the seed). Errors are rethrown
// as std::runtime_error carrying the step number.
ExperimentResult run_experiment(const ExperimentConfig& cfg, const StepObserver& observer = {});

double belief_rmse(const ItemPool& pool, const EnvironmentState& env);

// First logged step at which mean_true_rate >= threshold.
std::optional<std::uint64_t> steps_to_threshold(const ExperimentLog& log, double threshold);

double mean_effective_fraction(const ExperimentLog& log);

}  // namespace insight
