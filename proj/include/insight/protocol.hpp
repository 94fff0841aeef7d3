#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "insight/config.hpp"
#include "insight/selection.hpp"
#include "json.hpp"

namespace insight {

// Line-delimited JSON sidecar protocol. One request per line, one reply per
// line, strictly alternating select and reward for consecutive steps:
//
//   -> {"type":"select","step":t,"m":M}
//   <- {"type":"selection","step":t,"ids":[...]}
//   -> {"type":"reward","step":t,"outcomes":[{"id":i,"successes":s,"rollouts":k},...]}
//   <- {"type":"ack","step":t}
//
// Any rejected message yields {"type":"error","code":...,"detail":...} and
// leaves the session state untouched.
class ServeSession {
 public:
  // cfg supplies the acquisition settings, candidate_size, lambda, seed and
  // the optional checkpoint path. Throws ConfigError if the pool cannot
  // support cfg (e.g. candidate_size > pool size, dynamic_sampling).
  ServeSession(ItemPool pool, ExperimentConfig cfg, std::uint64_t start_step = 0);

  // Handles one request line. byte_offset is the position of the line in
  // the input stream and is reported for malformed input.
  std::string handle_line(std::string_view line, std::uint64_t byte_offset = 0);

  const ItemPool& pool() const { return pool_; }
  std::uint64_t next_step() const { return next_step_; }
  bool awaiting_reward() const { return pending_.has_value(); }

 private:
  std::string on_select(std::uint64_t step, std::uint64_t m);
  std::string on_reward(std::uint64_t step, const nlohmann::json& outcomes);

  ItemPool pool_;
  ExperimentConfig cfg_;
  std::string digest_;
  std::uint64_t next_step_;
  std::optional<std::vector<ItemId>> pending_;
};

// Reads requests from in until EOF and writes one reply line per request.
void run_serve(ServeSession& session, std::istream& in, std::ostream& out);

}  // namespace insight
