#pragma once

#include <span>
#include <string_view>

#include "ccount/estimators.hpp"
#include "ccount/sketch.hpp"

namespace ccount {

// All entropies use the natural logarithm.

enum class EntropyRoute { kTsallis, kRenyi };

std::string_view to_string(EntropyRoute route);
// "tsallis" | "renyi"; throws DomainError otherwise.
EntropyRoute parse_entropy_route(std::string_view name);

struct EntropyEstimate {
  double shannon_estimate = 0.0;
  double alpha_used = 0.0;
  EntropyRoute route = EntropyRoute::kTsallis;
  double moment_estimate = 0.0;  // F_(alpha) estimate that was plugged in
  double f1 = 0.0;
};

// H = -sum p_i log p_i with p_i = a_i / sum a, and 0 log 0 = 0.
// Throws DomainError on a negative entry or an all-zero vector.
double shannon_exact(std::span<const double> a);

// T_alpha = (1 - F_alpha / f1^alpha) / (alpha - 1)
double tsallis_from_moments(double f_alpha, double f1, double alpha);

// H_alpha = log(F_alpha / f1^alpha) / (1 - alpha)
double renyi_from_moments(double f_alpha, double f1, double alpha);

double entropy_from_moments(EntropyRoute route, double f_alpha, double f1, double alpha);

// Shannon estimate from a sketch: F_(alpha) by the chosen estimator, F_(1)
// from the sketch's exact counter, combined through the chosen route.
// Valid only when the accumulated vector is non-negative.
EntropyEstimate estimate_shannon(const Sketch& sketch, EstimatorKind kind,
                                 EntropyRoute route = EntropyRoute::kTsallis);
EntropyEstimate estimate_shannon(std::span<const double> x, double alpha, double f1,
                                 EstimatorKind kind, EntropyRoute route = EntropyRoute::kTsallis);

}  // namespace ccount
