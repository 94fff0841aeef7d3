#include "insight/selection.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "json.hpp"

namespace insight {

ItemPool ItemPool::uniform_prior(std::size_t size, double alpha0, double beta0) {
  ItemPool pool;
  const BetaBelief prior(alpha0, beta0);
  for (std::size_t i = 0; i < size; ++i) pool.add(i, prior);
  return pool;
}

void ItemPool::add(ItemId id, const BetaBelief& belief) {
  if (!index_.emplace(id, ids_.size()).second) {
    throw std::invalid_argument("ItemPool: duplicate item id " + std::to_string(id));
  }
  ids_.push_back(id);
  beliefs_.push_back(belief);
}

std::size_t ItemPool::index_of(ItemId id) const {
  const auto it = index_.find(id);
  if (it == index_.end()) throw std::out_of_range("ItemPool: unknown item id " + std::to_string(id));
  return it->second;
}

std::vector<ItemId> sample_candidates(const ItemPool& pool, std::size_t m_hat, RandomStream& rng) {
  if (m_hat < 1 || m_hat > pool.size()) {
    throw std::invalid_argument("sample_candidates: candidate count " + std::to_string(m_hat) +
                                " must lie in [1, " + std::to_string(pool.size()) + "]");
  }
  std::vector<ItemId> ids = pool.ids();
  for (std::size_t i = 0; i < m_hat; ++i) {
    const std::size_t j = i + rng.uniform_index(ids.size() - i);
    std::swap(ids[i], ids[j]);
  }
  ids.resize(m_hat);
  return ids;
}

std::vector<ScoredCandidate> score_candidates(const std::vector<ItemId>& candidates,
                                              const ItemPool& pool, const AcquisitionConfig& cfg,
                                              RandomStream& rng) {
  std::vector<ScoredCandidate> scored;
  scored.reserve(candidates.size());
  for (ItemId id : candidates) {
    const BetaBelief& b = pool.belief(id);
    double value = 0.0;
    switch (cfg.strategy) {
      case Strategy::kInSight:
        value = wmi_score(b, cfg);
        break;
      case Strategy::kMoPPS:
        value = -std::abs(sample_phi(b, rng) - cfg.target_phi);
        break;
      case Strategy::kExpectedDifficulty:
        value = -std::abs(b.mean() - cfg.target_phi);
        break;
      case Strategy::kInverseEvidence:
        value = 1.0 / b.evidence();
        break;
      case Strategy::kRandom:
        value = rng.uniform();
        break;
      case Strategy::kDynamicSampling:
        throw std::invalid_argument(
            "score_candidates: dynamic_sampling needs environment rollouts, not scores");
    }
    scored.push_back({id, Score{value, id}});
  }
  return scored;
}

std::vector<ItemId> select_top_m(const std::vector<ScoredCandidate>& scored, std::size_t m) {
  if (m > scored.size()) {
    throw std::invalid_argument("select_top_m: m = " + std::to_string(m) + " exceeds " +
                                std::to_string(scored.size()) + " scored candidates");
  }
  std::vector<ScoredCandidate> order = scored;
  std::partial_sort(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(m), order.end(),
                    [](const ScoredCandidate& a, const ScoredCandidate& b) {
                      return ranks_before(a.score, b.score);
                    });
  std::vector<ItemId> selected(m);
  for (std::size_t i = 0; i < m; ++i) selected[i] = order[i].id;
  return selected;
}

SelectionRound run_selection_round(const ItemPool& pool, const AcquisitionConfig& cfg,
                                   std::size_t m, std::size_t m_hat, std::uint64_t master_seed,
                                   std::uint64_t step) {
  if (m < 1 || m > m_hat) {
    throw std::invalid_argument("run_selection_round: need 1 <= m <= m_hat");
  }
  RandomStream candidate_rng = RandomStream::derived(master_seed, StreamPurpose::kCandidates, step);
  RandomStream scoring_rng = RandomStream::derived(master_seed, StreamPurpose::kScoring, step);

  SelectionRound round;
  round.step = step;
  round.rng_state_digest = hex64(mix64(candidate_rng.seed() ^ mix64(scoring_rng.seed())));
  round.candidates = sample_candidates(pool, m_hat, candidate_rng);
  const auto scored = score_candidates(round.candidates, pool, cfg, scoring_rng);
  round.scores.reserve(scored.size());
  for (const auto& s : scored) round.scores.push_back(s.score);
  round.selected = select_top_m(scored, m);
  return round;
}

std::string to_jsonl(const SelectionRound& round) {
  nlohmann::ordered_json j;
  j["step"] = round.step;
  j["candidates"] = round.candidates;
  auto scores = nlohmann::ordered_json::array();
  for (const auto& s : round.scores) scores.push_back({s.value, s.tiebreak});
  j["scores"] = std::move(scores);
  j["selected"] = round.selected;
  j["rng_state_digest"] = round.rng_state_digest;
  return j.dump();
}

}  // namespace insight
