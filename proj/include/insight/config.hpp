#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <stdexcept>
#include <string>

#include "insight/acquisition.hpp"
#include "insight/simulator.hpp"

namespace insight {

// Invalid configuration; key() names the offending config key.
class ConfigError : public std::runtime_error {
 public:
  ConfigError(std::string key, const std::string& message)
      : std::runtime_error(key + ": " + message), key_(std::move(key)) {}
  const std::string& key() const { return key_; }

 private:
  std::string key_;
};

struct OutputPaths {
  std::string log = "experiment_log.csv";
  std::string header = "experiment_log.json";
  std::string rounds;      // optional SelectionRound JSONL
  std::string checkpoint;  // optional; the serve loop persists here after each reward
};

struct ExperimentConfig {
  std::size_t pool_size = 200;
  std::size_t batch_size = 8;
  std::size_t candidate_size = 128;
  int rollouts = 8;
  std::size_t steps = 100;
  AcquisitionConfig acquisition;  // strategy, eta, mu, target_phi, mi_rollouts
  double lambda = 1.0;
  double prior_alpha = 1.0;
  double prior_beta = 1.0;
  LearningDynamics dynamics;
  std::uint64_t seed = 0;
  std::uint64_t ds_max_attempts = 0;  // 0: 16 * pool_size
  OutputPaths output;

  // Throws ConfigError for the first violated invariant.
  void validate() const;
};

// Parses a flat JSON object. Every key is optional and unknown keys are
// rejected; see the key table in the README. Defaults that depend on other
// keys: candidate_size = min(16 * batch_size, pool_size), mi_rollouts =
// rollouts. The result is validated.
ExperimentConfig parse_config(const std::string& text);
ExperimentConfig load_config(const std::filesystem::path& path);

// Canonical flat JSON (sorted keys, all fields present; output paths omitted).
std::string canonical_json(const ExperimentConfig& cfg);
// FNV-1a 64 of canonical_json, as 16 hex digits.
std::string config_digest(const ExperimentConfig& cfg);

std::uint64_t fnv1a64(std::string_view bytes);

}  // namespace insight
