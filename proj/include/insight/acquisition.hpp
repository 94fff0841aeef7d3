#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

#include "insight/belief.hpp"

namespace insight {

enum class Strategy {
  kInSight,
  kRandom,
  kMoPPS,
  kInverseEvidence,
  kExpectedDifficulty,
  // Simulator-only oracle: needs true rollouts before selection.
  kDynamicSampling,
};

std::string_view to_string(Strategy strategy);
// Accepts the names produced by to_string(); throws std::invalid_argument.
Strategy parse_strategy(std::string_view name);

struct AcquisitionConfig {
  double eta = 3.0;         // sharpness of the difficulty bias
  double mu = 0.3;          // preferred success rate
  int rollouts_k = 8;       // K used when scoring mutual information
  Strategy strategy = Strategy::kInSight;
  double target_phi = 0.5;  // phi* for MoPPS / Expected-Difficulty

  // Throws std::invalid_argument naming the offending field.
  void validate() const;
};

// Raised when exact mutual information comes out below -1e-9, which means a
// numerics bug rather than float cancellation.
class NumericConsistencyError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline constexpr int kMaxScoringRollouts = 64;
inline constexpr double kNegativeMiTolerance = 1e-9;

// Expected reduction of Var(phi) from one binary reward:
// alpha*beta / (n^2 (n+1)^2), evaluated as mean*(1-mean)/(n+1)^2.
double expected_variance_reduction(const BetaBelief& belief);

// I(R_1..K; Phi) = H(Phi) - sum_s P(S=s) H(Phi | S=s), summed exactly over
// all K+1 outcomes. K must lie in [1, 64]. Values in [-1e-9, 0) are clamped
// to 0; anything lower throws NumericConsistencyError.
double mutual_information(const BetaBelief& belief, int rollouts);

// Large-evidence approximation 1 / (2 (n + 1)).
double asymptotic_mi(const BetaBelief& belief);

// w(phi) = phi (1 - phi) exp(-eta (phi - mu)^2); phi must lie in [0, 1].
double weight(double phi_bar, const AcquisitionConfig& cfg);

// Weighted mutual information w(mean) * I(R_1..K; Phi). Finite and >= 0.
double wmi_score(const BetaBelief& belief, const AcquisitionConfig& cfg);

// One row of the score-table export.
struct ScoreRow {
  std::uint64_t id = 0;
  double alpha = 0, beta = 0, mean = 0, evidence = 0, entropy = 0, mi = 0, weight = 0, wmi = 0;
};
ScoreRow score_row(std::uint64_t id, const BetaBelief& belief, const AcquisitionConfig& cfg);

// One cell of the (mean, evidence) lattice export.
struct GridRow {
  double phi_bar = 0, evidence = 0, alpha = 0, beta = 0;
  double delta_v = 0, mi = 0, weight = 0, wmi = 0;
};
// phi_bar must lie strictly inside (0, 1) and evidence must be > 0.
GridRow grid_row(double phi_bar, double evidence, const AcquisitionConfig& cfg);

}  // namespace insight
