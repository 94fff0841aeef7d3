#include "insight/special_functions.hpp"

#include <array>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace insight {

namespace {

void require_positive(double x, const char* fn) {
  if (!(x > 0.0) || !std::isfinite(x)) {
    throw std::domain_error(std::string(fn) + ": argument must be finite and > 0, got " +
                            std::to_string(x));
  }
}

// Below these thresholds the argument is shifted upward with the recurrence
// before the asymptotic series is applied.
constexpr double kLnGammaAsymptotic = 15.0;
constexpr double kDigammaAsymptotic = 10.0;

// B_{2k} / (2k (2k-1)), k = 1..8.
constexpr std::array<double, 8> kStirling = {
    1.0 / 12.0,           -1.0 / 360.0,   1.0 / 1260.0, -1.0 / 1680.0,
    1.0 / 1188.0,         -691.0 / 360360.0, 1.0 / 156.0, -3617.0 / 122400.0,
};

// B_{2k} / (2k), k = 1..7.
constexpr std::array<double, 7> kDigammaSeries = {
    1.0 / 12.0, -1.0 / 120.0, 1.0 / 252.0, -1.0 / 240.0,
    1.0 / 132.0, -691.0 / 32760.0, 1.0 / 12.0,
};

double ln_gamma_asymptotic(double z) {
  const double inv = 1.0 / z;
  const double inv2 = inv * inv;
  double series = 0.0;
  double power = inv;
  for (double c : kStirling) {
    series += c * power;
    power *= inv2;
  }
  return (z - 0.5) * std::log(z) - z + 0.5 * std::log(2.0 * std::numbers::pi) + series;
}

double digamma_asymptotic(double z) {
  const double inv2 = 1.0 / (z * z);
  double series = 0.0;
  double power = inv2;
  for (double c : kDigammaSeries) {
    series += c * power;
    power *= inv2;
  }
  return std::log(z) - 0.5 / z - series;
}

}  // namespace

double ln_gamma(double x) {
  require_positive(x, "ln_gamma");
  if (x >= kLnGammaAsymptotic) return ln_gamma_asymptotic(x);
  // ln Gamma(x) = ln Gamma(x + k) - ln(x (x+1) ... (x+k-1))
  double z = x;
  double product = 1.0;
  while (z < kLnGammaAsymptotic) {
    product *= z;
    z += 1.0;
  }
  return ln_gamma_asymptotic(z) - std::log(product);
}

double digamma(double x) {
  require_positive(x, "digamma");
  double z = x;
  double shift = 0.0;
  while (z < kDigammaAsymptotic) {
    shift += 1.0 / z;
    z += 1.0;
  }
  return digamma_asymptotic(z) - shift;
}

double ln_beta(double a, double b) {
  require_positive(a, "ln_beta");
  require_positive(b, "ln_beta");
  return ln_gamma(a) + ln_gamma(b) - ln_gamma(a + b);
}

}  // namespace insight
