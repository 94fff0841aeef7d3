#pragma once

#include <vector>

#include "insight/rng.hpp"

namespace insight {

// Beta(alpha, beta) belief over a datapoint's latent success rate. Carries its
// own prior so discounting toward the prior is self-contained per item.
// Pseudo-counts are real-valued: discounting with 0 < lambda < 1 produces
// non-integers.
class BetaBelief {
 public:
  // Belief at its prior. Throws std::domain_error unless both are finite and > 0.
  BetaBelief(double alpha0, double beta0);
  // Belief with explicit current counts (checkpoint restore).
  BetaBelief(double alpha, double beta, double alpha0, double beta0);

  double alpha() const { return alpha_; }
  double beta() const { return beta_; }
  double alpha0() const { return alpha0_; }
  double beta0() const { return beta0_; }

  double mean() const { return alpha_ / (alpha_ + beta_); }
  double evidence() const { return alpha_ + beta_; }
  double variance() const;

  friend bool operator==(const BetaBelief&, const BetaBelief&) = default;

 private:
  double alpha_;
  double beta_;
  double alpha0_;
  double beta0_;
};

// S successes out of K rollouts for one datapoint at one step.
struct RolloutOutcome {
  int successes = 0;
  int rollouts = 1;

  friend bool operator==(const RolloutOutcome&, const RolloutOutcome&) = default;
};

// Throws std::invalid_argument unless rollouts >= 1 and 0 <= successes <= rollouts.
void validate(const RolloutOutcome& outcome);

// Beta-Binomial predictive over S in {0..K}.
struct SuccessPmf {
  std::vector<double> probabilities;
  // Set when the raw log-space pmf deviated from unit mass by more than 1e-12
  // and had to be rescaled.
  bool renormalized = false;

  int rollouts() const { return static_cast<int>(probabilities.size()) - 1; }
};

BetaBelief new_belief(double alpha0, double beta0);

// Differential entropy of Beta(alpha, beta) in nats:
// ln B(a,b) + (a+b-2) psi(a+b) - (a-1) psi(a) - (b-1) psi(b).
double entropy(const BetaBelief& belief);
double entropy(double alpha, double beta);

// Conjugate update: alpha += S, beta += K - S.
BetaBelief posterior(const BetaBelief& belief, const RolloutOutcome& outcome);

// alpha <- lambda*alpha + (1-lambda)*alpha0 + S, likewise for beta with K - S.
// lambda = 1 is bit-identical to posterior(). Throws std::invalid_argument for
// lambda outside [0, 1] and std::domain_error if a count would become <= 0.
BetaBelief discounted_update(const BetaBelief& belief, const RolloutOutcome& outcome,
                             double lambda);

// P(S = s) = C(K, s) B(alpha+s, beta+K-s) / B(alpha, beta), evaluated as sums
// of logs of the rising-factorial ratios and exponentiated per entry.
SuccessPmf predictive_success_pmf(const BetaBelief& belief, int rollouts);

// One draw phi ~ Beta(alpha, beta).
double sample_phi(const BetaBelief& belief, RandomStream& rng);

}  // namespace insight
