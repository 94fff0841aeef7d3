#pragma once

namespace insight {

// Log-space special functions for Beta/Beta-Binomial closed forms.
// All arguments must be finite and strictly positive; anything else throws
// std::domain_error (a non-positive Beta parameter is an upstream bug).

// ln Gamma(x). Absolute error <= 1e-12 where |ln Gamma| <= 1, relative
// error <= 1e-12 beyond that, for x in [1e-3, 1e7].
double ln_gamma(double x);

// psi(x) = d/dx ln Gamma(x). Absolute error <= 1e-10 on [1e-3, 1e7].
double digamma(double x);

// ln B(a, b) = ln Gamma(a) + ln Gamma(b) - ln Gamma(a + b). Symmetric in
// (a, b) to the last bit.
double ln_beta(double a, double b);

}  // namespace insight
