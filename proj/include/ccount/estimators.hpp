#pragma once

#include <optional>
#include <span>

#include "ccount/lambda_opt.hpp"
#include "ccount/sketch.hpp"

namespace ccount {

struct Estimate {
  double value = 0.0;
  EstimatorKind kind = EstimatorKind::kOptimalPower;
  // sqrt(predicted_variance) with F replaced by the estimate (plug-in).
  double predicted_se = 0.0;
  // Power used by the optimal-power estimator; empty for the others.
  std::optional<double> lambda_used;
};

// Each estimator takes the raw coordinates x_1..x_k of a sketch built with
// the given alpha, or the sketch itself. Products and power sums are formed
// in log space. A zero coordinate throws DegenerateSketchError.

/// Geometric mean: prod |x_j|^{alpha/k} / D_gm, with
///   D_gm = cos^k(kappa pi/(2k)) / cos(kappa pi/2)
///          * [(2/pi) sin(pi alpha/(2k)) Gamma(1 - 1/k) Gamma(alpha/k)]^k.
/// Unbiased for any k >= 2.
Estimate estimate_gm(std::span<const double> x, double alpha);
Estimate estimate_gm(const Sketch& sketch);

/// Harmonic mean, alpha < 1:
///   k cos(alpha pi/2) / Gamma(1+alpha) / sum |x_j|^{-alpha}
///   * (1 - (1/k)(2 Gamma^2(1+alpha)/Gamma(1+2 alpha) - 1)).
Estimate estimate_hm(std::span<const double> x, double alpha);
Estimate estimate_hm(const Sketch& sketch);

/// Bias-corrected fractional-power estimator at lambda = lambda*(alpha)
/// (or lambda_override):
///   R = cos^lambda(kappa pi/2) * mean |x_j|^{lambda alpha} / G(alpha lambda)
///   F = R^{1/lambda} * (1 - (1/k) (1/(2 lambda)) (1/lambda - 1)
///                          [G(2 alpha lambda)/G^2(alpha lambda) - 1]).
/// lambda_override = -1 reproduces the harmonic-mean estimator; at
/// alpha = 0.5 the default reproduces the Levy MLE.
Estimate estimate_op(std::span<const double> x, double alpha,
                     std::optional<double> lambda_override = std::nullopt);
Estimate estimate_op(const Sketch& sketch, std::optional<double> lambda_override = std::nullopt);

/// Bias-corrected MLE of the Levy scale, alpha == 0.5 only:
///   (1 - 3/(4k)) sqrt(k / sum 1/x_j). Requires every x_j > 0.
Estimate estimate_mle_half(std::span<const double> x, double alpha);
Estimate estimate_mle_half(const Sketch& sketch);

Estimate estimate(EstimatorKind kind, std::span<const double> x, double alpha);
Estimate estimate(EstimatorKind kind, const Sketch& sketch);

}  // namespace ccount
