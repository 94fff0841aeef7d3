#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <unordered_map>
#include <vector>

#include "insight/acquisition.hpp"
#include "insight/belief.hpp"
#include "insight/rng.hpp"

namespace insight {

using ItemId = std::uint64_t;

// Datapoint ids with their beliefs, in insertion order. Ids are unique.
class ItemPool {
 public:
  ItemPool() = default;
  // Pool of ids 0..size-1, every item at the given prior.
  static ItemPool uniform_prior(std::size_t size, double alpha0, double beta0);

  // Throws std::invalid_argument on a duplicate id.
  void add(ItemId id, const BetaBelief& belief);

  std::size_t size() const { return ids_.size(); }
  bool empty() const { return ids_.empty(); }
  bool contains(ItemId id) const { return index_.contains(id); }
  // Throws std::out_of_range for unknown ids.
  std::size_t index_of(ItemId id) const;

  const std::vector<ItemId>& ids() const { return ids_; }
  const std::vector<BetaBelief>& beliefs() const { return beliefs_; }
  const BetaBelief& belief(ItemId id) const { return beliefs_[index_of(id)]; }
  void set_belief(ItemId id, const BetaBelief& belief) { beliefs_[index_of(id)] = belief; }

  friend bool operator==(const ItemPool& a, const ItemPool& b) {
    return a.ids_ == b.ids_ && a.beliefs_ == b.beliefs_;
  }

 private:
  std::vector<ItemId> ids_;
  std::vector<BetaBelief> beliefs_;
  std::unordered_map<ItemId, std::size_t> index_;
};

// Larger value is preferred; equal values fall back to ascending tiebreak.
struct Score {
  double value = 0.0;
  std::uint64_t tiebreak = 0;
};

// True when a ranks strictly ahead of b.
inline bool ranks_before(const Score& a, const Score& b) {
  if (a.value != b.value) return a.value > b.value;
  return a.tiebreak < b.tiebreak;
}

struct ScoredCandidate {
  ItemId id = 0;
  Score score;
};

struct SelectionRound {
  std::uint64_t step = 0;
  std::vector<ItemId> candidates;
  std::vector<Score> scores;  // aligned with candidates
  std::vector<ItemId> selected;
  std::string rng_state_digest;
};

// Uniform sample of m_hat distinct ids (partial Fisher-Yates over pool order).
// Throws std::invalid_argument unless 1 <= m_hat <= pool.size().
std::vector<ItemId> sample_candidates(const ItemPool& pool, std::size_t m_hat, RandomStream& rng);

// Strategy-specific scores, larger preferred:
//   InSight             w(mean) * I(R_1..K; Phi)
//   MoPPS               -|phi_hat - phi*|, phi_hat ~ Beta(alpha, beta)
//   ExpectedDifficulty  -|mean - phi*|
//   InverseEvidence     1 / n
//   Random              uniform draw
// Draws are taken from rng in candidate order. DynamicSampling is rejected
// here: it needs environment access (see dynamic_sampling.hpp).
std::vector<ScoredCandidate> score_candidates(const std::vector<ItemId>& candidates,
                                              const ItemPool& pool, const AcquisitionConfig& cfg,
                                              RandomStream& rng);

// The m best candidates ordered by (value desc, tiebreak asc).
std::vector<ItemId> select_top_m(const std::vector<ScoredCandidate>& scored, std::size_t m);

// One full sample -> score -> select round with streams derived from
// (master_seed, step). Shared by the simulator and the serve loop so both
// make identical choices.
SelectionRound run_selection_round(const ItemPool& pool, const AcquisitionConfig& cfg,
                                   std::size_t m, std::size_t m_hat, std::uint64_t master_seed,
                                   std::uint64_t step);

// Single-line JSON for audit/replay logs.
std::string to_jsonl(const SelectionRound& round);

}  // namespace insight
