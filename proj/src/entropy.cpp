#include "ccount/entropy.hpp"

#include <cmath>
#include <string>

#include "ccount/error.hpp"

namespace ccount {

namespace {

void check_moments(double f_alpha, double f1, double alpha) {
  if (alpha == 1.0) throw DomainError("entropy routes need alpha != 1");
  if (!(alpha > 0.0)) throw DomainError("alpha must be > 0");
  if (!(f_alpha > 0.0)) throw DomainError("F_(alpha) must be > 0");
  if (!(f1 > 0.0)) throw DomainError("F_(1) must be > 0");
}

}  // namespace

std::string_view to_string(EntropyRoute route) {
  return route == EntropyRoute::kTsallis ? "tsallis" : "renyi";
}

EntropyRoute parse_entropy_route(std::string_view name) {
  if (name == "tsallis") return EntropyRoute::kTsallis;
  if (name == "renyi") return EntropyRoute::kRenyi;
  throw DomainError("unknown entropy route '" + std::string(name) + "' (expected tsallis|renyi)");
}

double shannon_exact(std::span<const double> a) {
  double total = 0.0;
  for (double v : a) {
    if (!(v >= 0.0) || !std::isfinite(v)) {
      throw DomainError("shannon_exact requires finite non-negative entries");
    }
    total += v;
  }
  if (!(total > 0.0)) throw DomainError("shannon_exact requires a nonzero vector");
  const double log_total = std::log(total);
  double h = 0.0;
  for (double v : a) {
    if (v > 0.0) h -= v / total * (std::log(v) - log_total);
  }
  return h;
}

double tsallis_from_moments(double f_alpha, double f1, double alpha) {
  check_moments(f_alpha, f1, alpha);
  return -std::expm1(std::log(f_alpha) - alpha * std::log(f1)) / (alpha - 1.0);
}

double renyi_from_moments(double f_alpha, double f1, double alpha) {
  check_moments(f_alpha, f1, alpha);
  return (std::log(f_alpha) - alpha * std::log(f1)) / (1.0 - alpha);
}

double entropy_from_moments(EntropyRoute route, double f_alpha, double f1, double alpha) {
  return route == EntropyRoute::kTsallis ? tsallis_from_moments(f_alpha, f1, alpha)
                                         : renyi_from_moments(f_alpha, f1, alpha);
}

EntropyEstimate estimate_shannon(std::span<const double> x, double alpha, double f1,
                                 EstimatorKind kind, EntropyRoute route) {
  if (!(f1 > 0.0)) {
    throw DomainError("entropy estimation needs F_(1) > 0, got " + std::to_string(f1));
  }
  const Estimate moment = estimate(kind, x, alpha);
  EntropyEstimate out;
  out.alpha_used = alpha;
  out.route = route;
  out.moment_estimate = moment.value;
  out.f1 = f1;
  out.shannon_estimate = entropy_from_moments(route, moment.value, f1, alpha);
  return out;
}

EntropyEstimate estimate_shannon(const Sketch& sketch, EstimatorKind kind, EntropyRoute route) {
  return estimate_shannon(sketch.coordinates(), sketch.config().alpha, sketch.f1(), kind, route);
}

}  // namespace ccount
