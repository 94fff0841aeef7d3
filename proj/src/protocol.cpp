#include "insight/protocol.hpp"

#include <istream>
#include <ostream>
#include <unordered_set>

#include "insight/io.hpp"

namespace insight {

namespace {

using nlohmann::json;

std::string error_reply(std::string_view code, const std::string& detail) {
  nlohmann::ordered_json j;
  j["type"] = "error";
  j["code"] = code;
  j["detail"] = detail;
  return j.dump();
}

// A request field that must be a non-negative integer.
std::optional<std::uint64_t> unsigned_field(const json& msg, const char* key) {
  if (!msg.contains(key) || !msg[key].is_number_unsigned()) return std::nullopt;
  return msg[key].get<std::uint64_t>();
}

}  // namespace

ServeSession::ServeSession(ItemPool pool, ExperimentConfig cfg, std::uint64_t start_step)
    : pool_(std::move(pool)), cfg_(std::move(cfg)), next_step_(start_step) {
  if (cfg_.acquisition.strategy == Strategy::kDynamicSampling) {
    throw ConfigError("strategy", "dynamic_sampling needs the simulator and cannot be served");
  }
  if (cfg_.candidate_size < 1 || cfg_.candidate_size > pool_.size()) {
    throw ConfigError("candidate_size", "must lie in [1, " + std::to_string(pool_.size()) +
                                            "] for this checkpoint");
  }
  cfg_.acquisition.validate();
  if (!(cfg_.lambda >= 0.0 && cfg_.lambda <= 1.0)) throw ConfigError("lambda", "must lie in [0, 1]");
  digest_ = config_digest(cfg_);
}

std::string ServeSession::handle_line(std::string_view line, std::uint64_t byte_offset) {
  json msg;
  try {
    msg = json::parse(line);
  } catch (const json::parse_error& e) {
    // parse_error::byte is 1-based within the line.
    const std::uint64_t at = byte_offset + (e.byte > 0 ? e.byte - 1 : 0);
    return error_reply("malformed", "malformed JSON at byte " + std::to_string(at));
  }
  if (!msg.is_object() || !msg.contains("type") || !msg["type"].is_string()) {
    return error_reply("invalid_message", "message must be an object with a string \"type\"");
  }
  const std::string type = msg["type"].get<std::string>();
  const auto step = unsigned_field(msg, "step");
  if (!step) return error_reply("invalid_message", "\"step\" must be a non-negative integer");

  if (type == "select") {
    const auto m = unsigned_field(msg, "m");
    if (!m) return error_reply("invalid_message", "\"m\" must be a non-negative integer");
    return on_select(*step, *m);
  }
  if (type == "reward") {
    if (!msg.contains("outcomes") || !msg["outcomes"].is_array()) {
      return error_reply("invalid_message", "\"outcomes\" must be an array");
    }
    return on_reward(*step, msg["outcomes"]);
  }
  return error_reply("unknown_type", "unknown message type '" + type + "'");
}

std::string ServeSession::on_select(std::uint64_t step, std::uint64_t m) {
  if (pending_) {
    return error_reply("out_of_order", "step " + std::to_string(next_step_) +
                                           " is awaiting a reward report");
  }
  if (step != next_step_) {
    return error_reply("out_of_order", "expected select for step " + std::to_string(next_step_) +
                                           ", got " + std::to_string(step));
  }
  if (m < 1 || m > cfg_.candidate_size) {
    return error_reply("invalid_message", "m must lie in [1, " +
                                              std::to_string(cfg_.candidate_size) + "]");
  }
  SelectionRound round;
  try {
    round = run_selection_round(pool_, cfg_.acquisition, m, cfg_.candidate_size, cfg_.seed, step);
  } catch (const std::exception& e) {
    return error_reply("internal", e.what());
  }
  pending_ = round.selected;
  nlohmann::ordered_json j;
  j["type"] = "selection";
  j["step"] = step;
  j["ids"] = round.selected;
  return j.dump();
}

std::string ServeSession::on_reward(std::uint64_t step, const json& outcomes) {
  if (!pending_) {
    return error_reply("out_of_order", "reward for step " + std::to_string(step) +
                                           " without a preceding selection");
  }
  if (step != next_step_) {
    return error_reply("out_of_order", "expected reward for step " + std::to_string(next_step_) +
                                           ", got " + std::to_string(step));
  }

  const std::unordered_set<ItemId> allowed(pending_->begin(), pending_->end());
  std::unordered_set<ItemId> seen;
  std::vector<std::pair<ItemId, BetaBelief>> updates;
  for (const json& rec : outcomes) {
    if (!rec.is_object() || !unsigned_field(rec, "id") || !unsigned_field(rec, "successes") ||
        !unsigned_field(rec, "rollouts")) {
      return error_reply("invalid_message",
                         "each outcome needs non-negative integer id, successes, rollouts");
    }
    const auto id = rec["id"].get<std::uint64_t>();
    const auto s = rec["successes"].get<std::uint64_t>();
    const auto k = rec["rollouts"].get<std::uint64_t>();
    if (!allowed.contains(id)) {
      return error_reply("unknown_id", "item " + std::to_string(id) +
                                           " was not in the selection for step " +
                                           std::to_string(step));
    }
    if (!seen.insert(id).second) {
      return error_reply("invalid_message", "item " + std::to_string(id) + " reported twice");
    }
    if (k < 1 || s > k || k > 1'000'000) {
      return error_reply("invalid_message", "item " + std::to_string(id) +
                                                ": need 1 <= rollouts and successes <= rollouts");
    }
    const RolloutOutcome o{static_cast<int>(s), static_cast<int>(k)};
    try {
      updates.emplace_back(id, discounted_update(pool_.belief(id), o, cfg_.lambda));
    } catch (const std::exception& e) {
      return error_reply("internal", e.what());
    }
  }

  // The whole report is validated and persisted before anything is committed.
  ItemPool next = pool_;
  for (const auto& [id, belief] : updates) next.set_belief(id, belief);
  if (!cfg_.output.checkpoint.empty()) {
    try {
      save_checkpoint(make_checkpoint(next, next_step_ + 1, digest_), cfg_.output.checkpoint);
    } catch (const std::exception& e) {
      return error_reply("persist_failed", e.what());
    }
  }
  pool_ = std::move(next);
  pending_.reset();
  ++next_step_;
  nlohmann::ordered_json j;
  j["type"] = "ack";
  j["step"] = step;
  return j.dump();
}

void run_serve(ServeSession& session, std::istream& in, std::ostream& out) {
  std::string line;
  std::uint64_t offset = 0;
  while (std::getline(in, line)) {
    const std::uint64_t consumed = line.size() + 1;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (!line.empty()) out << session.handle_line(line, offset) << '\n' << std::flush;
    offset += consumed;
  }
}

}  // namespace insight
