#include "insight/belief.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "insight/special_functions.hpp"

namespace insight {

namespace {

void require_positive_param(double v, const char* name) {
  if (!(v > 0.0) || !std::isfinite(v)) {
    throw std::domain_error(std::string("BetaBelief: ") + name + " must be finite and > 0, got " +
                            std::to_string(v));
  }
}

}  // namespace

BetaBelief::BetaBelief(double alpha0, double beta0) : BetaBelief(alpha0, beta0, alpha0, beta0) {}

BetaBelief::BetaBelief(double alpha, double beta, double alpha0, double beta0)
    : alpha_(alpha), beta_(beta), alpha0_(alpha0), beta0_(beta0) {
  require_positive_param(alpha, "alpha");
  require_positive_param(beta, "beta");
  require_positive_param(alpha0, "alpha0");
  require_positive_param(beta0, "beta0");
}

double BetaBelief::variance() const {
  const double n = alpha_ + beta_;
  return alpha_ * beta_ / (n * n * (n + 1.0));
}

void validate(const RolloutOutcome& outcome) {
  if (outcome.rollouts < 1) {
    throw std::invalid_argument("RolloutOutcome: rollouts must be >= 1, got " +
                                std::to_string(outcome.rollouts));
  }
  if (outcome.successes < 0 || outcome.successes > outcome.rollouts) {
    throw std::invalid_argument("RolloutOutcome: successes " + std::to_string(outcome.successes) +
                                " outside [0, " + std::to_string(outcome.rollouts) + "]");
  }
}

BetaBelief new_belief(double alpha0, double beta0) { return BetaBelief(alpha0, beta0); }

double entropy(double alpha, double beta) {
  const double n = alpha + beta;
  // The two per-parameter terms are summed first so swapping (alpha, beta)
  // gives a bit-identical result.
  const double per_param = (alpha - 1.0) * digamma(alpha) + (beta - 1.0) * digamma(beta);
  return ln_beta(alpha, beta) + (n - 2.0) * digamma(n) - per_param;
}

double entropy(const BetaBelief& belief) { return entropy(belief.alpha(), belief.beta()); }

BetaBelief posterior(const BetaBelief& belief, const RolloutOutcome& outcome) {
  validate(outcome);
  const double s = outcome.successes;
  const double f = outcome.rollouts - outcome.successes;
  return BetaBelief(belief.alpha() + s, belief.beta() + f, belief.alpha0(), belief.beta0());
}

BetaBelief discounted_update(const BetaBelief& belief, const RolloutOutcome& outcome,
                             double lambda) {
  if (!(lambda >= 0.0 && lambda <= 1.0)) {
    throw std::invalid_argument("discounted_update: lambda must lie in [0, 1], got " +
                                std::to_string(lambda));
  }
  validate(outcome);
  const double s = outcome.successes;
  const double f = outcome.rollouts - outcome.successes;
  const double alpha = lambda * belief.alpha() + (1.0 - lambda) * belief.alpha0() + s;
  const double beta = lambda * belief.beta() + (1.0 - lambda) * belief.beta0() + f;
  if (!(alpha > 0.0) || !(beta > 0.0)) {
    throw std::domain_error("discounted_update: update would leave a non-positive count");
  }
  return BetaBelief(alpha, beta, belief.alpha0(), belief.beta0());
}

SuccessPmf predictive_success_pmf(const BetaBelief& belief, int rollouts) {
  if (rollouts < 1) {
    throw std::invalid_argument("predictive_success_pmf: rollouts must be >= 1");
  }
  const double a = belief.alpha();
  const double b = belief.beta();
  const double n = a + b;
  const int k = rollouts;

  // Partial sums of ln(a+i), ln(b+j) and ln(n+l).
  std::vector<double> log_rise_a(k + 1, 0.0), log_rise_b(k + 1, 0.0);
  double log_rise_n = 0.0;
  for (int i = 0; i < k; ++i) {
    log_rise_a[i + 1] = log_rise_a[i] + std::log(a + i);
    log_rise_b[i + 1] = log_rise_b[i] + std::log(b + i);
    log_rise_n += std::log(n + i);
  }
  const double log_k_factorial = ln_gamma(k + 1.0);

  SuccessPmf pmf;
  pmf.probabilities.resize(k + 1);
  double total = 0.0;
  for (int s = 0; s <= k; ++s) {
    const double log_choose = log_k_factorial - ln_gamma(s + 1.0) - ln_gamma(k - s + 1.0);
    const double log_p = log_choose + log_rise_a[s] + log_rise_b[k - s] - log_rise_n;
    pmf.probabilities[s] = std::exp(log_p);
    total += pmf.probabilities[s];
  }
  if (std::abs(total - 1.0) > 1e-12) {
    for (double& p : pmf.probabilities) p /= total;
    pmf.renormalized = true;
  }
  return pmf;
}

double sample_phi(const BetaBelief& belief, RandomStream& rng) {
  return rng.beta(belief.alpha(), belief.beta());
}

}  // namespace insight
