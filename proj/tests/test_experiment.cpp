#include <cmath>
#include <sstream>
#include <stdexcept>

#include "doctest.h"
#include "insight/experiment.hpp"
#include "insight/io.hpp"

using namespace insight;

namespace {

ExperimentConfig small_config(Strategy strategy, std::uint64_t seed = 1) {
  ExperimentConfig cfg;
  cfg.pool_size = 60;
  cfg.batch_size = 4;
  cfg.candidate_size = 32;
  cfg.rollouts = 8;
  cfg.steps = 40;
  cfg.acquisition.strategy = strategy;
  cfg.dynamics.initial = UniformInit{0.05, 0.95};
  cfg.dynamics.gain = 0.05;
  cfg.seed = seed;
  return cfg;
}

std::string csv(const ExperimentLog& log) {
  std::ostringstream out;
  write_log_csv(log, out);
  return out.str();
}

constexpr Strategy kAllStrategies[] = {Strategy::kInSight,          Strategy::kRandom,
                                       Strategy::kMoPPS,            Strategy::kInverseEvidence,
                                       Strategy::kExpectedDifficulty, Strategy::kDynamicSampling};

}  // namespace

TEST_CASE("zero steps logs only the initial state") {
  auto cfg = small_config(Strategy::kInSight);
  cfg.steps = 0;
  const auto result = run_experiment(cfg);
  REQUIRE(result.log.rows.size() == 1);
  CHECK(result.log.rows[0].step == 0);
  CHECK(result.log.rows[0].selected.empty());
  CHECK(result.log.rows[0].rollouts_consumed == 0);
}

TEST_CASE("identical config and seed give identical logs") {
  for (Strategy s : kAllStrategies) {
    CAPTURE(to_string(s));
    const auto a = run_experiment(small_config(s, 5));
    const auto b = run_experiment(small_config(s, 5));
    CHECK(csv(a.log) == csv(b.log));
    CHECK(a.final_pool == b.final_pool);
    CHECK(csv(a.log) != csv(run_experiment(small_config(s, 6)).log));
  }
}

TEST_CASE("log shape and rollout accounting") {
  for (Strategy s : kAllStrategies) {
    CAPTURE(to_string(s));
    const auto cfg = small_config(s);
    const auto result = run_experiment(cfg);
    REQUIRE(result.log.rows.size() == cfg.steps + 1);
    for (std::size_t t = 1; t < result.log.rows.size(); ++t) {
      const auto& row = result.log.rows[t];
      CHECK(row.step == t);
      CHECK(row.effective_batch_fraction >= 0.0);
      CHECK(row.effective_batch_fraction <= 1.0);
      if (s == Strategy::kDynamicSampling) {
        CHECK(row.rollouts_consumed >= row.selected.size() * cfg.rollouts);
        CHECK(row.effective_batch_fraction == (row.selected.empty() ? 0.0 : 1.0));
      } else {
        CHECK(row.rollouts_consumed == cfg.batch_size * cfg.rollouts);
        CHECK(row.selected.size() == cfg.batch_size);
      }
    }
  }
}

TEST_CASE("beliefs with lambda = 1 count every observed reward") {
  auto cfg = small_config(Strategy::kInSight);
  const auto result = run_experiment(cfg);
  double total_evidence = 0.0;
  for (const auto& b : result.final_pool.beliefs()) {
    total_evidence += b.evidence() - 2.0;
    CHECK(b.alpha() == std::floor(b.alpha()));
    CHECK(b.beta() == std::floor(b.beta()));
  }
  CHECK(total_evidence == double(cfg.steps * cfg.batch_size * cfg.rollouts));
}

TEST_CASE("a static environment never changes and beliefs converge") {
  for (Strategy s : kAllStrategies) {
    CAPTURE(to_string(s));
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
      auto cfg = small_config(s, seed);
      cfg.dynamics.gain = 0.0;
      cfg.steps = 60;
      const auto result = run_experiment(cfg);
      const auto& rows = result.log.rows;
      CHECK(rows.front().mean_true_rate == rows.back().mean_true_rate);
      CHECK(rows.back().belief_rmse < rows.front().belief_rmse);
    }
  }
}

TEST_CASE("uniform groups leave the environment unchanged") {
  auto cfg = small_config(Strategy::kRandom);
  cfg.dynamics.initial = UniformInit{1.0, 1.0};
  const auto result = run_experiment(cfg);
  for (const auto& row : result.log.rows) CHECK(row.mean_true_rate == 1.0);
  for (std::size_t t = 1; t < result.log.rows.size(); ++t) {
    CHECK(result.log.rows[t].effective_batch_fraction == 0.0);
  }
}

TEST_CASE("observer sees every step and errors carry the step") {
  auto cfg = small_config(Strategy::kInSight);
  std::uint64_t seen = 0;
  run_experiment(cfg, [&](const StepRecord& row, const ItemPool&) { seen = row.step; });
  CHECK(seen == cfg.steps);

  try {
    run_experiment(cfg, [](const StepRecord& row, const ItemPool&) {
      if (row.step == 7) throw std::runtime_error("boom");
    });
    FAIL("expected an exception");
  } catch (const std::runtime_error& e) {
    CHECK(std::string(e.what()) == "step 6: boom");
  }
}

TEST_CASE("threshold helpers") {
  ExperimentLog log;
  log.rows = {{0, 0.5, 0, 0, 0, {}}, {1, 0.7, 0, 0.5, 8, {}}, {2, 0.81, 0, 1.0, 8, {}}};
  CHECK(steps_to_threshold(log, 0.8) == 2u);
  CHECK_FALSE(steps_to_threshold(log, 0.9).has_value());
  CHECK(steps_to_threshold(log, 0.5) == 0u);
  CHECK(mean_effective_fraction(log) == 0.75);
}
