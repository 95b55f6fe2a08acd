#include "ccount/stable.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "ccount/error.hpp"
#include "ccount/special.hpp"

namespace ccount {

namespace {

constexpr double kPi = std::numbers::pi;

void check_alpha(double alpha) {
  if (!(alpha > 0.0 && alpha <= 2.0)) {
    throw DomainError("alpha must lie in (0, 2], got " + std::to_string(alpha));
  }
  if (alpha == 1.0) {
    throw DomainError("alpha == 1 is not supported; F_(1) is an exact counter");
  }
}

// log|G| and sign of the trigonometric form.
double log_abs_g_trig(double lambda, double alpha, int* sign) {
  const double c = std::cos(kappa(alpha) / alpha * lambda * kPi / 2.0);
  const double s = std::sin(kPi * lambda / 2.0);
  int sg1 = 1;
  int sg2 = 1;
  const double lg1 = log_abs_gamma(1.0 - lambda / alpha, &sg1);
  const double lg2 = log_abs_gamma(lambda, &sg2);
  int sg = sg1 * sg2;
  if (c < 0.0) sg = -sg;
  if (s < 0.0) sg = -sg;
  *sign = (c == 0.0 || s == 0.0) ? 0 : sg;
  return std::log(2.0 / kPi) + std::log(std::abs(c)) + std::log(std::abs(s)) + lg1 + lg2;
}

double log_abs_g_ratio(double lambda, double alpha, int* sign) {
  int sg1 = 1;
  const double lg1 = log_abs_gamma(1.0 - lambda / alpha, &sg1);
  const double b = 1.0 - lambda;
  if (b <= 0.0 && std::floor(b) == b) {
    // 1 / Gamma at a pole vanishes.
    *sign = 0;
    return -INFINITY;
  }
  int sg2 = 1;
  const double lg2 = log_abs_gamma(b, &sg2);
  *sign = sg1 * sg2;
  return lg1 - lg2;
}

double log_abs_g(double lambda, double alpha, int* sign) {
  check_alpha(alpha);
  if (lambda == 0.0) {
    throw DomainError("G(lambda) at lambda == 0 is a removable singularity (limit 1)");
  }
  return alpha < 1.0 ? log_abs_g_ratio(lambda, alpha, sign) : log_abs_g_trig(lambda, alpha, sign);
}

}  // namespace

void StableParams::validate() const {
  check_alpha(alpha);
  if (!(scale > 0.0)) {
    throw DomainError("stable scale must be > 0, got " + std::to_string(scale));
  }
}

double kappa(double alpha) {
  check_alpha(alpha);
  return alpha < 1.0 ? alpha : 2.0 - alpha;
}

double cos_kappa_half_pi(double alpha) {
  check_alpha(alpha);
  return std::sin(std::abs(1.0 - alpha) * kPi / 2.0);
}

double g_moment_factor(double lambda, double alpha) {
  int sign = 0;
  const double la = log_abs_g(lambda, alpha, &sign);
  return sign == 0 ? 0.0 : sign * std::exp(la);
}

double g_moment_factor_trig(double lambda, double alpha) {
  check_alpha(alpha);
  if (lambda == 0.0) {
    throw DomainError("G(lambda) at lambda == 0 is a removable singularity (limit 1)");
  }
  int sign = 0;
  const double la = log_abs_g_trig(lambda, alpha, &sign);
  return sign == 0 ? 0.0 : sign * std::exp(la);
}

double log_g_moment_factor_trig(double lambda, double alpha) {
  check_alpha(alpha);
  if (lambda == 0.0) {
    throw DomainError("G(lambda) at lambda == 0 is a removable singularity (limit 1)");
  }
  int sign = 0;
  const double la = log_abs_g_trig(lambda, alpha, &sign);
  if (sign <= 0) throw DomainError("G(lambda) is not positive here");
  return la;
}

double log_g_moment_factor(double lambda, double alpha) {
  int sign = 0;
  const double la = log_abs_g(lambda, alpha, &sign);
  if (sign <= 0) {
    throw DomainError("G(" + std::to_string(lambda) + ") is not positive for alpha = " +
                      std::to_string(alpha));
  }
  return la;
}

double absolute_moment(double lambda, const StableParams& params) {
  params.validate();
  const double alpha = params.alpha;
  if (!(lambda < alpha)) {
    throw DivergentMomentError("E|Z|^lambda diverges for lambda >= alpha");
  }
  if (alpha > 1.0 && !(lambda > -1.0)) {
    throw DivergentMomentError("E|Z|^lambda diverges for lambda <= -1 when alpha > 1");
  }
  if (lambda == 0.0) return 1.0;
  const double r = lambda / alpha;
  return std::exp(r * std::log(params.scale) + log_g_moment_factor(lambda, alpha) -
                  r * std::log(cos_kappa_half_pi(alpha)));
}

double stable_from_uniforms(double alpha, double u_angle, double u_exp) {
  const double v = kPi * (u_angle - 0.5);
  const double w = -std::log(u_exp);
  // theta0 = arctan(tan(pi alpha / 2)), written out per branch.
  const double theta0 = alpha < 1.0 ? kPi * alpha / 2.0 : kPi * alpha / 2.0 - kPi;
  const double inv_alpha = 1.0 / alpha;
  // Weron scale factor (1 + tan^2(pi alpha/2))^{1/(2 alpha)}; brings the
  // characteristic-function scale to exactly 1.
  const double log_scale = -inv_alpha * std::log(cos_kappa_half_pi(alpha));
  const double num = std::sin(alpha * v + theta0);
  const double log_mag = log_scale + std::log(std::abs(num)) - inv_alpha * std::log(std::cos(v)) +
                         (1.0 - alpha) * inv_alpha *
                             (std::log(std::cos(v - alpha * v - theta0)) - std::log(w));
  const double mag = std::exp(log_mag);
  return num < 0.0 ? -mag : mag;
}

std::vector<double> sample_skewed_stable(double alpha, std::size_t n, std::mt19937_64& rng) {
  check_alpha(alpha);
  if (alpha == 2.0) {
    throw DomainError("sampling requires alpha < 2");
  }
  std::vector<double> out(n);
  for (auto& z : out) {
    const double u1 = bits_to_unit_open(rng());
    const double u2 = bits_to_unit_open(rng());
    z = stable_from_uniforms(alpha, u1, u2);
  }
  return out;
}

double levy_pdf(double z, double F) {
  if (!(z > 0.0)) throw DomainError("levy_pdf requires z > 0");
  if (!(F > 0.0)) throw DomainError("levy_pdf requires F > 0");
  return F / std::sqrt(2.0 * kPi) * std::exp(-F * F / (2.0 * z)) * std::pow(z, -1.5);
}

double levy_cdf(double z, double F) {
  if (!(z > 0.0)) throw DomainError("levy_cdf requires z > 0");
  if (!(F > 0.0)) throw DomainError("levy_cdf requires F > 0");
  // 2 (1 - Phi(F / sqrt(z)))
  return std::erfc(F / std::sqrt(2.0 * z));
}

}  // namespace ccount
