#include "ccount/special.hpp"

#include <cmath>
#include <string>

#include "ccount/error.hpp"

namespace ccount {

double log_abs_gamma(double x, int* sign) {
  if (x <= 0.0 && std::floor(x) == x) {
    throw DomainError("Gamma pole at x = " + std::to_string(x));
  }
  int s = 1;
#if defined(__GLIBC__)
  const double r = ::lgamma_r(x, &s);
#else
  const double r = std::lgamma(x);
  if (x < 0.0) {
    // Gamma alternates sign on (-n-1, -n): negative for n even.
    const auto n = static_cast<long long>(std::floor(-x));
    s = (n % 2 == 0) ? -1 : 1;
  }
#endif
  if (sign != nullptr) *sign = s;
  return r;
}

double log_gamma(double x) {
  if (!(x > 0.0)) {
    throw DomainError("log_gamma requires x > 0, got " + std::to_string(x));
  }
  return log_abs_gamma(x);
}

double normal_cdf(double x) { return 0.5 * std::erfc(-x / std::sqrt(2.0)); }

}  // namespace ccount
