#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <string_view>

namespace ccount {

enum class EstimatorKind { kGeometricMean, kHarmonicMean, kOptimalPower, kMleHalf };

// "gm", "hm", "op", "mle".
std::string_view to_string(EstimatorKind kind);
// Throws DomainError on an unknown name.
EstimatorKind parse_estimator_kind(std::string_view name);

struct VarianceCoeffQuery {
  double alpha = 0.5;
  double lambda = -1.0;

  // Open admissible range: lambda < 1/2 for alpha < 1,
  // -1/(2 alpha) < lambda < 1/2 for alpha > 1. lambda == 0 is excluded.
  void validate() const;
};

struct OptimalLambda {
  double alpha = 0.0;
  double lambda_star = 0.0;
  double g_at_star = 0.0;
  // alpha > 1 only: minimizer landed within tolerance of an interval end.
  bool at_boundary = false;
};

inline constexpr double kDefaultLambdaTolerance = 1e-9;

/// Asymptotic variance coefficient of the fractional-power estimator,
///   g(lambda; alpha) = (1/lambda^2) [G(2 alpha lambda) / G^2(alpha lambda) - 1].
/// For alpha < 1 the ratio is the Gamma product
///   Gamma(1-2l) Gamma^2(1-l alpha) / (Gamma(1-2 l alpha) Gamma^2(1-l)),
/// evaluated in log space with expm1 for the "- 1".
double variance_coeff(const VarianceCoeffQuery& query);

// Minimize a unimodal f on [lo, hi] until the bracket is narrower than tol.
// Returns the midpoint of the final bracket.
double golden_section_minimize(const std::function<double(double)>& f, double lo, double hi,
                               double tol);

/// lambda*(alpha) = argmin_lambda g(lambda; alpha).
///
/// alpha < 1: g is convex with a negative minimizer, which drifts to -inf
/// as alpha -> 1-, so the search brackets by doubling |lambda| from -0.5
/// before running golden section. alpha > 1: golden section on the
/// admissible interval shrunk by a relative margin of 1e-9.
///
/// At alpha == 0.5 the searched value is checked against, then replaced by,
/// the closed form lambda* = -2.
///
/// Results are memoized per (alpha, tolerance); the memo is thread-safe.
OptimalLambda optimal_lambda(double alpha, double tolerance = kDefaultLambdaTolerance);

// The raw numerical search behind optimal_lambda: no memo, no snapping.
OptimalLambda search_optimal_lambda(double alpha, double tolerance = kDefaultLambdaTolerance);

// Harmonic-mean variance factor 2 Gamma^2(1+alpha) / Gamma(1+2 alpha) - 1.
double hm_variance_factor(double alpha);

// Geometric-mean variance factor: (pi^2/6)(1 - alpha^2) for alpha < 1,
// (pi^2/6)(alpha - 1)(5 - alpha) for alpha > 1. The pi^2/6 constant is the
// Monte-Carlo-measured one (`ccount bench` reports the fitted value).
double gm_variance_factor(double alpha);

/// Leading-order asymptotic variance of an estimator of F at sample size k.
/// HM requires alpha < 1, MLE requires alpha == 0.5; k >= 2.
double predicted_variance(EstimatorKind kind, double alpha, double F, std::size_t k);

}  // namespace ccount
