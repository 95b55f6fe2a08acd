#pragma once

namespace ccount {

// log|Gamma(x)| with the sign of Gamma(x) written to *sign. Reentrant
// (the glibc std::lgamma writes the global signgam). Throws DomainError
// at the poles x = 0, -1, -2, ...
double log_abs_gamma(double x, int* sign = nullptr);

// log Gamma(x) for x > 0.
double log_gamma(double x);

// Standard normal CDF.
double normal_cdf(double x);

}  // namespace ccount
