#include <charconv>
#include <cstring>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

#include "doctest.h"
#include "insight/config.hpp"
#include "insight/io.hpp"
#include "json.hpp"

using namespace insight;

namespace {

std::filesystem::path temp_path(const std::string& name) {
  return std::filesystem::temp_directory_path() / ("insight_test_io_" + name);
}

BeliefCheckpoint random_checkpoint(std::mt19937_64& gen, std::size_t items) {
  std::uniform_real_distribution<double> log_u(std::log(1e-3), std::log(1e7));
  BeliefCheckpoint ckpt;
  ckpt.step = gen() % 100000;
  ckpt.config_digest = hex64(gen());
  for (std::size_t i = 0; i < items; ++i) {
    ckpt.items.push_back({gen(), std::exp(log_u(gen)), std::exp(log_u(gen)),
                          std::exp(log_u(gen)), std::exp(log_u(gen))});
  }
  return ckpt;
}

std::string config_error_key(const std::string& text) {
  try {
    parse_config(text);
  } catch (const ConfigError& e) {
    return e.key();
  }
  return "";
}

}  // namespace

TEST_CASE("format_real round-trips") {
  std::mt19937_64 gen(1);
  for (int i = 0; i < 10000; ++i) {
    double v;
    const std::uint64_t bits = gen();
    std::memcpy(&v, &bits, sizeof v);
    if (!std::isfinite(v)) continue;
    const std::string s = format_real(v);
    double back = 0;
    std::from_chars(s.data(), s.data() + s.size(), back);
    CHECK(back == v);
  }
  CHECK(format_real(0.5) == "0.5");
  CHECK(format_real(1.0) == "1");
}

TEST_CASE("checkpoint round trip is field-identical") {
  std::mt19937_64 gen(2);
  const auto big = random_checkpoint(gen, 1000);
  const auto path = temp_path("big.ckpt");
  save_checkpoint(big, path);
  CHECK(load_checkpoint(path) == big);

  for (int i = 0; i < 10000; ++i) {
    const auto ckpt = random_checkpoint(gen, 1 + gen() % 3);
    CHECK(parse_checkpoint(serialize_checkpoint(ckpt)) == ckpt);
  }
  std::filesystem::remove(path);
}

TEST_CASE("pool <-> checkpoint") {
  ItemPool pool;
  pool.add(4, BetaBelief(2.5, 3, 1, 1));
  pool.add(1, BetaBelief(1, 1));
  const auto ckpt = make_checkpoint(pool, 12, "abc");
  CHECK(ckpt.step == 12);
  CHECK(pool_from_checkpoint(parse_checkpoint(serialize_checkpoint(ckpt))) == pool);

  BeliefCheckpoint bad = ckpt;
  bad.items[0].alpha = -1;
  CHECK_THROWS_AS(pool_from_checkpoint(bad), CheckpointError);
  bad = ckpt;
  bad.items[1].id = 4;
  CHECK_THROWS_AS(pool_from_checkpoint(bad), CheckpointError);
}

TEST_CASE("corrupt checkpoints are rejected") {
  std::mt19937_64 gen(3);
  const std::string bytes = serialize_checkpoint(random_checkpoint(gen, 20));
  auto kind_of = [](const std::string& b) {
    try {
      parse_checkpoint(b);
    } catch (const CheckpointError& e) {
      return static_cast<int>(e.kind());
    }
    return -1;
  };
  const int checksum = static_cast<int>(CheckpointError::Kind::kChecksum);
  for (std::size_t cut : {std::size_t{0}, std::size_t{1}, bytes.size() / 2, bytes.size() - 10,
                          bytes.size() - 1}) {
    CHECK(kind_of(bytes.substr(0, cut)) == checksum);
  }
  std::string flipped = bytes;
  flipped[bytes.size() / 3] ^= 0x01;
  CHECK(kind_of(flipped) == checksum);

  const auto path = temp_path("truncated.ckpt");
  std::ofstream(path, std::ios::binary) << bytes.substr(0, bytes.size() / 2);
  CHECK_THROWS_AS(load_checkpoint(path), CheckpointError);
  std::filesystem::remove(path);
  CHECK_THROWS_AS(load_checkpoint(temp_path("missing.ckpt")), CheckpointError);
}

TEST_CASE("a newer schema version is a version mismatch, not a parse error") {
  BeliefCheckpoint ckpt;
  ckpt.schema_version = kCheckpointSchemaVersion + 1;
  ckpt.items.push_back({0, 1, 1, 1, 1});
  try {
    parse_checkpoint(serialize_checkpoint(ckpt));
    FAIL("expected a version mismatch");
  } catch (const CheckpointError& e) {
    CHECK(e.kind() == CheckpointError::Kind::kVersionMismatch);
  }
}

TEST_CASE("config parsing") {
  const auto cfg = parse_config(R"({"pool_size": 10, "batch_size": 2, "steps": 5})");
  CHECK(cfg.pool_size == 10);
  CHECK(cfg.candidate_size == 10);  // min(16 * 2, 10)
  CHECK(cfg.acquisition.rollouts_k == 8);
  CHECK(cfg.acquisition.eta == 3.0);
  CHECK(cfg.acquisition.mu == 0.3);
  CHECK(cfg.lambda == 1.0);

  const auto defaults = parse_config("{}");
  CHECK(defaults.candidate_size == 128);
  CHECK(defaults.acquisition.strategy == Strategy::kInSight);

  const auto full = parse_config(R"({
    "pool_size": 20, "batch_size": 2, "candidate_size": 8, "rollouts": 4, "mi_rollouts": 6,
    "steps": 3, "strategy": "mopps", "eta": 1.5, "mu": 0.4, "target_phi": 0.6,
    "lambda": 0.9, "prior_alpha": 2, "prior_beta": 3, "seed": 99,
    "env.init": "bimodal", "env.weights": [1, 3], "env.rates": [0.2, 0.7],
    "env.gain": 0.1, "env.transfer": 0.2, "ds.max_attempts": 50,
    "output.log": "a.csv", "output.header": "a.json", "output.rounds": "r.jsonl",
    "output.checkpoint": "c.ckpt"})");
  CHECK(full.acquisition.strategy == Strategy::kMoPPS);
  CHECK(full.acquisition.rollouts_k == 6);
  CHECK(full.rollouts == 4);
  CHECK(std::get<MixtureInit>(full.dynamics.initial).rates == std::vector<double>{0.2, 0.7});
  CHECK(full.output.checkpoint == "c.ckpt");

  CHECK(config_error_key(R"({"pool_size": 10, "candidate_size": 11})") == "candidate_size");
  CHECK(config_error_key(R"({"pool_size": 10, "batch_size": 11})") == "batch_size");
  CHECK(config_error_key(R"({"batch_size": 4, "candidate_size": 2})") == "candidate_size");
  CHECK(config_error_key(R"({"pool_sise": 10})") == "pool_sise");
  CHECK(config_error_key(R"({"pool_size": "10"})") == "pool_size");
  CHECK(config_error_key(R"({"pool_size": -3})") == "pool_size");
  CHECK(config_error_key(R"({"lambda": 1.5})") == "lambda");
  CHECK(config_error_key(R"({"mu": 3.0})") == "mu");
  CHECK(config_error_key(R"({"eta": -1})") == "eta");
  CHECK(config_error_key(R"({"prior_alpha": 0})") == "prior_alpha");
  CHECK(config_error_key(R"({"strategy": "ucb"})") == "strategy");
  CHECK(config_error_key(R"({"mi_rollouts": 65})") == "mi_rollouts");
  CHECK(config_error_key(R"({"env.init": "fixed"})") == "env.rates");
  CHECK(config_error_key(R"({"env.init": "gaussian"})") == "env.init");
  CHECK(config_error_key(R"({"env.lo": 0.1, "env.rates": [0.5]})") == "env.rates");
  CHECK(config_error_key(R"({"env.gain": 2})") == "env.gain");
  CHECK(config_error_key(R"({"pool_size": 3, "batch_size": 1, "env.init": "fixed",
                             "env.rates": [0.1, 0.2]})") == "env.rates");
  CHECK(config_error_key("[1, 2]") == "<document>");
  CHECK(config_error_key("{not json") == "<document>");
}

TEST_CASE("config digest is canonical") {
  const auto a = parse_config(R"({"pool_size": 10, "batch_size": 2, "seed": 4})");
  const auto b = parse_config(R"({"seed": 4, "batch_size": 2, "pool_size": 10,
                                  "output.log": "elsewhere.csv"})");
  CHECK(config_digest(a) == config_digest(b));
  CHECK(config_digest(a) != config_digest(parse_config(R"({"pool_size": 10, "batch_size": 2})")));
  CHECK(config_digest(a).size() == 16);
  // The canonical form parses back to the same configuration.
  CHECK(config_digest(parse_config(canonical_json(a))) == config_digest(a));
}

TEST_CASE("log CSV and header") {
  ExperimentLog log;
  log.seed = 7;
  log.config_digest = "0123456789abcdef";
  log.rows = {{0, 0.5, 0.25, 0.0, 0, {}}, {1, 0.51, 0.2, 0.75, 32, {3, 1, 4, 15}}};
  std::ostringstream out;
  write_log_csv(log, out);
  CHECK(out.str() ==
        "step,mean_true_rate,belief_rmse,effective_batch_fraction,rollouts_consumed,selected_ids\n"
        "0,0.5,0.25,0,0,\n"
        "1,0.51,0.2,0.75,32,3;1;4;15\n");

  std::ostringstream header;
  write_log_header(ExperimentConfig{}, log, header);
  const auto j = nlohmann::json::parse(header.str());
  CHECK(j["seed"] == 7);
  CHECK(j["config_digest"] == "0123456789abcdef");
  CHECK(j["version"] == kArtifactVersion);
  CHECK(j["config"]["strategy"] == "insight");
}

TEST_CASE("score tables") {
  AcquisitionConfig cfg;
  std::ostringstream one;
  write_score_table({score_row(0, new_belief(1, 1), cfg)}, one);
  std::istringstream lines(one.str());
  std::string header, row;
  std::getline(lines, header);
  std::getline(lines, row);
  CHECK(header == "item_id,alpha,beta,mean,evidence,entropy,mi,weight,wmi");
  CHECK(row.rfind("0,1,1,0.5,2,", 0) == 0);

  std::ostringstream empty;
  write_score_table({}, empty);
  CHECK(empty.str() == "item_id,alpha,beta,mean,evidence,entropy,mi,weight,wmi\n");

  std::ostringstream grid;
  write_grid_table({grid_row(0.5, 2, cfg)}, grid);
  CHECK(grid.str().rfind("phi_bar,evidence,alpha,beta,delta_v,mi,weight,wmi\n0.5,2,1,1,", 0) == 0);
}
