#include "insight/acquisition.hpp"

#include <cmath>
#include <string>
#include <vector>

#include "insight/special_functions.hpp"

namespace insight {

std::string_view to_string(Strategy strategy) {
  switch (strategy) {
    case Strategy::kInSight: return "insight";
    case Strategy::kRandom: return "random";
    case Strategy::kMoPPS: return "mopps";
    case Strategy::kInverseEvidence: return "inverse_evidence";
    case Strategy::kExpectedDifficulty: return "expected_difficulty";
    case Strategy::kDynamicSampling: return "dynamic_sampling";
  }
  return "unknown";
}

Strategy parse_strategy(std::string_view name) {
  for (Strategy s : {Strategy::kInSight, Strategy::kRandom, Strategy::kMoPPS,
                     Strategy::kInverseEvidence, Strategy::kExpectedDifficulty,
                     Strategy::kDynamicSampling}) {
    if (to_string(s) == name) return s;
  }
  throw std::invalid_argument("unknown strategy '" + std::string(name) + "'");
}

void AcquisitionConfig::validate() const {
  if (!(eta >= 0.0) || !std::isfinite(eta)) throw std::invalid_argument("eta must be >= 0");
  if (!(mu >= 0.0 && mu <= 1.0)) throw std::invalid_argument("mu must lie in [0, 1]");
  if (!(target_phi >= 0.0 && target_phi <= 1.0)) {
    throw std::invalid_argument("target_phi must lie in [0, 1]");
  }
  if (rollouts_k < 1 || rollouts_k > kMaxScoringRollouts) {
    throw std::invalid_argument("rollouts_k must lie in [1, " +
                                std::to_string(kMaxScoringRollouts) + "]");
  }
}

double expected_variance_reduction(const BetaBelief& belief) {
  // mean * (1 - mean) / (n + 1)^2 with 1 - mean taken as beta / n, which
  // avoids cancellation for means near 1.
  const double n = belief.evidence();
  const double m = belief.alpha() / n;
  const double m_complement = belief.beta() / n;
  return m * m_complement / ((n + 1.0) * (n + 1.0));
}

double mutual_information(const BetaBelief& belief, int rollouts) {
  if (rollouts < 1 || rollouts > kMaxScoringRollouts) {
    throw std::invalid_argument("mutual_information: rollouts must lie in [1, " +
                                std::to_string(kMaxScoringRollouts) + "]");
  }
  // Each entropy drop H(a, b) - H(a + s, b + f), f = K - s, is expanded with
  // psi(x + m) = psi(x) + sum_{i<m} 1 / (x + i) and the matching rising
  // factorials for ln B. Every remaining term is O(K log n), so there is no
  // cancellation between O(n log n) entropy terms at large evidence.
  const int k = rollouts;
  const double a = belief.alpha();
  const double b = belief.beta();
  const double n = a + b;

  std::vector<double> log_rise_a(k + 1, 0.0), log_rise_b(k + 1, 0.0);
  std::vector<double> harm_a(k + 1, 0.0), harm_b(k + 1, 0.0);
  double log_rise_n = 0.0, harm_n = 0.0;
  for (int i = 0; i < k; ++i) {
    log_rise_a[i + 1] = log_rise_a[i] + std::log(a + i);
    log_rise_b[i + 1] = log_rise_b[i] + std::log(b + i);
    harm_a[i + 1] = harm_a[i] + 1.0 / (a + i);
    harm_b[i + 1] = harm_b[i] + 1.0 / (b + i);
    log_rise_n += std::log(n + i);
    harm_n += 1.0 / (n + i);
  }
  const double psi_a = digamma(a);
  const double psi_b = digamma(b);
  const double psi_n = digamma(n);
  const double shared = log_rise_n - k * psi_n - (n + k - 2.0) * harm_n;

  const SuccessPmf pmf = predictive_success_pmf(belief, k);
  double mi = 0.0;
  for (int s = 0; s <= k; ++s) {
    const int f = k - s;
    const double drop = shared - log_rise_a[s] - log_rise_b[f] + s * psi_a +
                        (a + s - 1.0) * harm_a[s] + f * psi_b + (b + f - 1.0) * harm_b[f];
    mi += pmf.probabilities[s] * drop;
  }
  if (mi < -kNegativeMiTolerance || !std::isfinite(mi)) {
    throw NumericConsistencyError("mutual_information: value " + std::to_string(mi) +
                                  " for Beta(" + std::to_string(a) + ", " + std::to_string(b) +
                                  ")");
  }
  return mi < 0.0 ? 0.0 : mi;
}

double asymptotic_mi(const BetaBelief& belief) { return 0.5 / (belief.evidence() + 1.0); }

double weight(double phi_bar, const AcquisitionConfig& cfg) {
  if (!(phi_bar >= 0.0 && phi_bar <= 1.0)) {
    throw std::invalid_argument("weight: mean must lie in [0, 1], got " + std::to_string(phi_bar));
  }
  const double d = phi_bar - cfg.mu;
  return phi_bar * (1.0 - phi_bar) * std::exp(-cfg.eta * d * d);
}

double wmi_score(const BetaBelief& belief, const AcquisitionConfig& cfg) {
  const double w = weight(belief.mean(), cfg);
  // A saturated mean (0 or 1 after rounding) has zero weight; its counts are
  // then too large for a meaningful entropy difference anyway.
  if (w == 0.0) return 0.0;
  return w * mutual_information(belief, cfg.rollouts_k);
}

ScoreRow score_row(std::uint64_t id, const BetaBelief& belief, const AcquisitionConfig& cfg) {
  ScoreRow row;
  row.id = id;
  row.alpha = belief.alpha();
  row.beta = belief.beta();
  row.mean = belief.mean();
  row.evidence = belief.evidence();
  row.entropy = entropy(belief);
  row.mi = mutual_information(belief, cfg.rollouts_k);
  row.weight = weight(row.mean, cfg);
  row.wmi = row.weight * row.mi;
  return row;
}

GridRow grid_row(double phi_bar, double evidence, const AcquisitionConfig& cfg) {
  if (!(phi_bar > 0.0 && phi_bar < 1.0)) {
    throw std::invalid_argument("grid_row: mean must lie in (0, 1)");
  }
  if (!(evidence > 0.0)) throw std::invalid_argument("grid_row: evidence must be > 0");
  const BetaBelief belief(phi_bar * evidence, (1.0 - phi_bar) * evidence);
  GridRow row;
  row.phi_bar = phi_bar;
  row.evidence = evidence;
  row.alpha = belief.alpha();
  row.beta = belief.beta();
  // Use the lattice coordinates directly so the exported column is exactly
  // phi (1 - phi) / (n + 1)^2 for the requested cell.
  row.delta_v = phi_bar * (1.0 - phi_bar) / ((evidence + 1.0) * (evidence + 1.0));
  row.mi = mutual_information(belief, cfg.rollouts_k);
  row.weight = weight(phi_bar, cfg);
  row.wmi = row.weight * row.mi;
  return row;
}

}  // namespace insight
