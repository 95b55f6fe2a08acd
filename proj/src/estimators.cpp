#include "ccount/estimators.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>
#include <vector>

#include "ccount/error.hpp"
#include "ccount/special.hpp"
#include "ccount/stable.hpp"

namespace ccount {

namespace {

constexpr double kPi = std::numbers::pi;

void check_input(std::span<const double> x, double alpha) {
  if (x.size() < 2) throw DomainError("estimators require k >= 2");
  if (!(alpha > 0.0 && alpha < 2.0) || alpha == 1.0) {
    throw DomainError("alpha must lie in (0, 2) \\ {1}, got " + std::to_string(alpha));
  }
}

// log|x_j|, throwing on a zero coordinate.
std::vector<double> log_abs(std::span<const double> x) {
  std::vector<double> out(x.size());
  for (std::size_t j = 0; j < x.size(); ++j) {
    if (x[j] == 0.0 || !std::isfinite(x[j])) {
      throw DegenerateSketchError("sketch coordinate " + std::to_string(j + 1) + " is " +
                                  std::to_string(x[j]));
    }
    out[j] = std::log(std::abs(x[j]));
  }
  return out;
}

// log(mean_j exp(c * v_j)).
double log_mean_exp(std::span<const double> v, double c) {
  double m = -INFINITY;
  for (double t : v) m = std::max(m, c * t);
  double s = 0.0;
  for (double t : v) s += std::exp(c * t - m);
  return m + std::log(s / static_cast<double>(v.size()));
}

Estimate finish(double value, EstimatorKind kind, double alpha, std::size_t k) {
  Estimate e;
  e.value = value;
  e.kind = kind;
  e.predicted_se = std::sqrt(predicted_variance(kind, alpha, value, k));
  return e;
}

}  // namespace

Estimate estimate_gm(std::span<const double> x, double alpha) {
  check_input(x, alpha);
  const auto lx = log_abs(x);
  const double k = static_cast<double>(x.size());
  const double kap = kappa(alpha);
  const double log_d = k * std::log(std::cos(kap * kPi / (2.0 * k))) -
                       std::log(cos_kappa_half_pi(alpha)) +
                       k * (std::log(2.0 / kPi) + std::log(std::sin(kPi * alpha / (2.0 * k))) +
                            log_gamma(1.0 - 1.0 / k) + log_gamma(alpha / k));
  double sum = 0.0;
  for (double v : lx) sum += v;
  return finish(std::exp(alpha / k * sum - log_d), EstimatorKind::kGeometricMean, alpha, x.size());
}

Estimate estimate_hm(std::span<const double> x, double alpha) {
  check_input(x, alpha);
  if (!(alpha < 1.0)) throw DomainError("harmonic-mean estimator requires alpha < 1");
  const auto lx = log_abs(x);
  const double k = static_cast<double>(x.size());
  // log sum |x_j|^{-alpha}
  const double log_sum = log_mean_exp(lx, -alpha) + std::log(k);
  const double base = std::log(k) + std::log(cos_kappa_half_pi(alpha)) - log_gamma(1.0 + alpha);
  const double value = std::exp(base - log_sum) * (1.0 - hm_variance_factor(alpha) / k);
  return finish(value, EstimatorKind::kHarmonicMean, alpha, x.size());
}

Estimate estimate_op(std::span<const double> x, double alpha, std::optional<double> lambda_override) {
  check_input(x, alpha);
  double lambda = 0.0;
  if (lambda_override) {
    VarianceCoeffQuery{alpha, *lambda_override}.validate();
    lambda = *lambda_override;
  } else {
    lambda = optimal_lambda(alpha).lambda_star;
  }
  const auto lx = log_abs(x);
  const double k = static_cast<double>(x.size());
  const double log_r = log_mean_exp(lx, lambda * alpha) +
                       lambda * std::log(cos_kappa_half_pi(alpha)) -
                       log_g_moment_factor(alpha * lambda, alpha);
  // G(2 a l)/G^2(a l) - 1
  const double excess = std::expm1(log_g_moment_factor(2.0 * alpha * lambda, alpha) -
                                   2.0 * log_g_moment_factor(alpha * lambda, alpha));
  const double correction = 1.0 - (1.0 / k) * (1.0 / (2.0 * lambda)) * (1.0 / lambda - 1.0) * excess;
  const double value = std::exp(log_r / lambda) * correction;

  Estimate e;
  e.value = value;
  e.kind = EstimatorKind::kOptimalPower;
  e.lambda_used = lambda;
  const double g = excess / (lambda * lambda);
  e.predicted_se = std::sqrt(value * value * g / k);
  return e;
}

Estimate estimate_mle_half(std::span<const double> x, double alpha) {
  check_input(x, alpha);
  if (alpha != 0.5) throw DomainError("the MLE is defined only at alpha == 0.5");
  double inv_sum = 0.0;
  for (std::size_t j = 0; j < x.size(); ++j) {
    if (!(x[j] > 0.0) || !std::isfinite(x[j])) {
      throw DegenerateSketchError("Levy MLE needs positive coordinates; x_" +
                                  std::to_string(j + 1) + " = " + std::to_string(x[j]));
    }
    inv_sum += 1.0 / x[j];
  }
  const double k = static_cast<double>(x.size());
  const double value = (1.0 - 3.0 / (4.0 * k)) * std::sqrt(k / inv_sum);
  return finish(value, EstimatorKind::kMleHalf, alpha, x.size());
}

Estimate estimate(EstimatorKind kind, std::span<const double> x, double alpha) {
  switch (kind) {
    case EstimatorKind::kGeometricMean:
      return estimate_gm(x, alpha);
    case EstimatorKind::kHarmonicMean:
      return estimate_hm(x, alpha);
    case EstimatorKind::kOptimalPower:
      return estimate_op(x, alpha);
    case EstimatorKind::kMleHalf:
      return estimate_mle_half(x, alpha);
  }
  throw DomainError("unknown estimator kind");
}

Estimate estimate_gm(const Sketch& sketch) {
  return estimate_gm(sketch.coordinates(), sketch.config().alpha);
}
Estimate estimate_hm(const Sketch& sketch) {
  return estimate_hm(sketch.coordinates(), sketch.config().alpha);
}
Estimate estimate_op(const Sketch& sketch, std::optional<double> lambda_override) {
  return estimate_op(sketch.coordinates(), sketch.config().alpha, lambda_override);
}
Estimate estimate_mle_half(const Sketch& sketch) {
  return estimate_mle_half(sketch.coordinates(), sketch.config().alpha);
}
Estimate estimate(EstimatorKind kind, const Sketch& sketch) {
  return estimate(kind, sketch.coordinates(), sketch.config().alpha);
}

}  // namespace ccount
