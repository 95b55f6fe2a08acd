#include "ccount/lambda_opt.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <numbers>
#include <string>
#include <utility>

#include "ccount/error.hpp"
#include "ccount/special.hpp"
#include "ccount/stable.hpp"

namespace ccount {

std::string_view to_string(EstimatorKind kind) {
  switch (kind) {
    case EstimatorKind::kGeometricMean:
      return "gm";
    case EstimatorKind::kHarmonicMean:
      return "hm";
    case EstimatorKind::kOptimalPower:
      return "op";
    case EstimatorKind::kMleHalf:
      return "mle";
  }
  return "?";
}

EstimatorKind parse_estimator_kind(std::string_view name) {
  if (name == "gm") return EstimatorKind::kGeometricMean;
  if (name == "hm") return EstimatorKind::kHarmonicMean;
  if (name == "op") return EstimatorKind::kOptimalPower;
  if (name == "mle") return EstimatorKind::kMleHalf;
  throw DomainError("unknown estimator '" + std::string(name) + "' (expected gm|hm|op|mle)");
}

void VarianceCoeffQuery::validate() const {
  if (!(alpha > 0.0 && alpha < 2.0) || alpha == 1.0) {
    throw DomainError("variance_coeff requires alpha in (0, 2) \\ {1}, got " +
                      std::to_string(alpha));
  }
  if (lambda == 0.0) {
    throw DomainError("variance_coeff is undefined at lambda == 0");
  }
  if (!(lambda < 0.5)) {
    throw DomainError("variance_coeff requires lambda < 1/2, got " + std::to_string(lambda));
  }
  if (alpha > 1.0 && !(lambda > -1.0 / (2.0 * alpha))) {
    throw DomainError("variance_coeff requires lambda > -1/(2 alpha) for alpha > 1, got " +
                      std::to_string(lambda));
  }
}

double variance_coeff(const VarianceCoeffQuery& query) {
  query.validate();
  const double a = query.alpha;
  const double l = query.lambda;
  const double log_ratio = log_g_moment_factor(2.0 * a * l, a) - 2.0 * log_g_moment_factor(a * l, a);
  return std::expm1(log_ratio) / (l * l);
}

double golden_section_minimize(const std::function<double(double)>& f, double lo, double hi,
                               double tol) {
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double c = hi - inv_phi * (hi - lo);
  double d = lo + inv_phi * (hi - lo);
  double fc = f(c);
  double fd = f(d);
  while (hi - lo > tol) {
    if (fc < fd) {
      hi = d;
      d = c;
      fd = fc;
      c = hi - inv_phi * (hi - lo);
      fc = f(c);
    } else {
      lo = c;
      c = d;
      fc = fd;
      d = lo + inv_phi * (hi - lo);
      fd = f(d);
    }
    // Bracket stops shrinking once it reaches the spacing of doubles.
    if (!(c > lo && d < hi && c <= d)) break;
  }
  return 0.5 * (lo + hi);
}

namespace {

constexpr int kMaxDoublings = 64;

}  // namespace

OptimalLambda search_optimal_lambda(double alpha, double tolerance) {
  if (!(alpha > 0.0 && alpha < 2.0) || alpha == 1.0) {
    throw DomainError("optimal_lambda requires alpha in (0, 2) \\ {1}, got " +
                      std::to_string(alpha));
  }
  if (!(tolerance > 0.0)) {
    throw DomainError("optimal_lambda requires tolerance > 0");
  }
  auto g = [alpha](double l) { return variance_coeff({alpha, l}); };
  OptimalLambda out;
  out.alpha = alpha;

  if (alpha < 1.0) {
    double prev = -0.5;
    double g_prev = g(prev);
    double cur = -1.0;
    double g_cur = g(cur);
    double lo = 0.0;
    double hi = 0.0;
    if (g_cur >= g_prev) {
      lo = cur;
      hi = -1e-3;
    } else {
      double before = prev;
      int n = 0;
      for (;;) {
        const double next = 2.0 * cur;
        const double g_next = g(next);
        if (g_next >= g_cur) {
          lo = next;
          hi = before;
          break;
        }
        before = cur;
        cur = next;
        g_cur = g_next;
        if (++n >= kMaxDoublings) {
          throw SolverError("no interior minimum of g(lambda; " + std::to_string(alpha) +
                            ") found in [" + std::to_string(next) + ", -0.5]");
        }
      }
    }
    out.lambda_star = golden_section_minimize(g, lo, hi, tolerance);
  } else {
    const double margin = 1e-9;
    const double lo = -1.0 / (2.0 * alpha) * (1.0 - margin);
    const double hi = 0.5 * (1.0 - margin);
    out.lambda_star = golden_section_minimize(g, lo, hi, tolerance);
    out.at_boundary = (out.lambda_star - lo) <= tolerance || (hi - out.lambda_star) <= tolerance;
  }
  out.g_at_star = g(out.lambda_star);
  return out;
}

OptimalLambda optimal_lambda(double alpha, double tolerance) {
  static std::mutex mutex;
  static std::map<std::pair<double, double>, OptimalLambda> memo;
  const auto key = std::make_pair(alpha, tolerance);
  {
    std::lock_guard<std::mutex> lock(mutex);
    if (auto it = memo.find(key); it != memo.end()) return it->second;
  }
  // Solved outside the lock; concurrent first callers compute the same
  // deterministic value.
  OptimalLambda result = search_optimal_lambda(alpha, tolerance);
  if (alpha == 0.5) {
    // Closed form: g'(-2; 0.5) = 0. Snap so the optimal-power estimator
    // coincides with the Levy MLE to rounding.
    if (std::abs(result.lambda_star + 2.0) > 1e-6) {
      throw SolverError("search disagrees with lambda*(0.5) = -2: " +
                        std::to_string(result.lambda_star));
    }
    result.lambda_star = -2.0;
    result.g_at_star = variance_coeff({alpha, -2.0});
  }
  std::lock_guard<std::mutex> lock(mutex);
  return memo.emplace(key, result).first->second;
}

double hm_variance_factor(double alpha) {
  if (!(alpha > 0.0 && alpha < 1.0)) {
    throw DomainError("harmonic-mean estimator requires 0 < alpha < 1");
  }
  return std::expm1(std::log(2.0) + 2.0 * log_gamma(1.0 + alpha) - log_gamma(1.0 + 2.0 * alpha));
}

double gm_variance_factor(double alpha) {
  if (!(alpha > 0.0 && alpha <= 2.0) || alpha == 1.0) {
    throw DomainError("geometric-mean estimator requires alpha in (0, 2] \\ {1}");
  }
  constexpr double c = std::numbers::pi * std::numbers::pi / 6.0;
  return alpha < 1.0 ? c * (1.0 - alpha * alpha) : c * (alpha - 1.0) * (5.0 - alpha);
}

double predicted_variance(EstimatorKind kind, double alpha, double F, std::size_t k) {
  if (k < 2) throw DomainError("predicted_variance requires k >= 2");
  if (!(F > 0.0)) throw DomainError("predicted_variance requires F > 0");
  const double kk = static_cast<double>(k);
  const double f2 = F * F;
  switch (kind) {
    case EstimatorKind::kGeometricMean:
      return f2 * gm_variance_factor(alpha) / kk;
    case EstimatorKind::kHarmonicMean:
      return f2 * hm_variance_factor(alpha) / kk;
    case EstimatorKind::kOptimalPower:
      return f2 * optimal_lambda(alpha).g_at_star / kk;
    case EstimatorKind::kMleHalf:
      if (alpha != 0.5) throw DomainError("the MLE is defined only at alpha == 0.5");
      return f2 / (2.0 * kk) + 9.0 * f2 / (8.0 * kk * kk);
  }
  throw DomainError("unknown estimator kind");
}

}  // namespace ccount
