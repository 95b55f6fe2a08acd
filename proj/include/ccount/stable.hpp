#pragma once

#include <cstddef>
#include <cstdint>
#include <random>
#include <vector>

namespace ccount {

// Maximally-skewed stable law S(alpha, beta = 1, scale) with characteristic
// function exp(-scale * |t|^alpha * (1 - i sign(t) tan(pi alpha / 2))).
struct StableParams {
  static constexpr double beta = 1.0;

  double alpha = 0.5;
  double scale = 1.0;

  // Throws DomainError unless 0 < alpha <= 2, alpha != 1, scale > 0.
  void validate() const;
};

// alpha for alpha < 1, 2 - alpha for alpha > 1.
double kappa(double alpha);

// cos(kappa(alpha) * pi / 2), evaluated as sin(|1 - alpha| * pi / 2) so it
// keeps full relative precision as alpha -> 1.
double cos_kappa_half_pi(double alpha);

/// Moment factor G(lambda) of E|Z|^lambda for Z ~ S(alpha, 1, F):
///
///   G(lambda) = (2/pi) cos((kappa/alpha) lambda pi/2) sin(pi lambda/2)
///               * Gamma(1 - lambda/alpha) Gamma(lambda)
///
/// For alpha < 1 this collapses (reflection formula) to
/// Gamma(1 - lambda/alpha) / Gamma(1 - lambda), which is what is evaluated
/// there; alpha > 1 uses the trigonometric form. Everything runs through
/// log-Gamma, so |lambda| in the hundreds or thousands is fine.
///
/// Throws DomainError for lambda == 0 (removable singularity, limit 1) and
/// at Gamma poles.
double g_moment_factor(double lambda, double alpha);

// The trigonometric form for any alpha != 1. Exposed so tests can check it
// against the Gamma-ratio form away from integer lambda.
double g_moment_factor_trig(double lambda, double alpha);

// log G(lambda) through the trigonometric form; requires G(lambda) > 0.
double log_g_moment_factor_trig(double lambda, double alpha);

// log G(lambda); requires G(lambda) > 0, which holds on every range the
// estimators use.
double log_g_moment_factor(double lambda, double alpha);

/// E|Z|^lambda for Z ~ S(alpha, 1, F):
///   F^{lambda/alpha} G(lambda) / cos^{lambda/alpha}(kappa pi / 2).
/// Finite for lambda < alpha when alpha < 1, and for -1 < lambda < alpha
/// when alpha > 1; anything else throws DivergentMomentError.
double absolute_moment(double lambda, const StableParams& params);

// Chambers-Mallows-Stuck transform of two independent uniforms on (0, 1)
// into one draw from S(alpha, 1, 1).
double stable_from_uniforms(double alpha, double u_angle, double u_exp);

// Uniform on the open interval (0, 1) from 64 random bits.
inline double bits_to_unit_open(std::uint64_t bits) {
  return (static_cast<double>(bits >> 11) + 0.5) * 0x1.0p-53;
}

// n independent draws from S(alpha, 1, 1). Scale to S(alpha, 1, F) by
// multiplying with F^{1/alpha}.
std::vector<double> sample_skewed_stable(double alpha, std::size_t n, std::mt19937_64& rng);

// Levy law, i.e. S(0.5, 1, F): the distribution of F^2 / N^2.
double levy_pdf(double z, double F);
double levy_cdf(double z, double F);

}  // namespace ccount
