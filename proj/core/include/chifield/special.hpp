#pragma once

// Scalar special functions: standard normal pdf/cdf/quantile and the
// sequential-analysis correction factor nu, by exact series and by the
// Siegmund-Yakir rational approximation.

#include <cstdint>

namespace chifield {

/// Standard normal density.
double phi(double x);

/// Standard normal CDF, evaluated through erfc so the lower tail keeps full
/// relative accuracy (Phi(-8) ~ 6.2e-16 without cancellation).
double Phi(double x);

/// Standard normal quantile (Wichura's AS 241, double precision).
/// Requires p in (0,1).
double inv_Phi(double p);

/// Rate of the small-argument asymptote nu(x) ~ exp(-rate * x),
/// equal to -zeta(1/2) * sqrt(2/pi) / 2.
inline constexpr double nu_small_x_rate = 0.5825971579390107;

/// nu(x) = 2 x^-2 exp{-2 sum_{n>=1} n^-1 Phi(-x sqrt(n)/2)}, nu(0) = 1.
///
/// Branches: x == 0 returns 1 by definition; x < 1e-4 returns the limit 1
/// (|nu - 1| < 6e-5 there, and no supported lattice produces such arguments
/// except deliberate continuum-limit queries); x in [1e-4, 0.02) uses the
/// exponential asymptote (relative error < 3e-8 at the switch point); above
/// that the series is summed until a geometric majorant bounds the remainder
/// below tol. Throws argument_error for x < 0 and numerical_error if the
/// bound is not reached within max_terms.
double nu_series(double x, double tol = 1e-10, std::uint64_t max_terms = 50'000'000);

/// Siegmund-Yakir approximation
///   nu(x) ~ (2/x)(Phi(x/2) - 1/2) / ((x/2) Phi(x/2) + phi(x/2)),
/// with the same snap-to-limit guard below 1e-4. Accurate to about 2.2e-2
/// relative against the exact series (worst near x = 1.15). Throws
/// argument_error for x <= 0.
double nu_approx(double x);

struct NuMethod {
  enum class Kind { series, approx };
  Kind kind = Kind::series;
  double tol = 1e-10;
  std::uint64_t max_terms = 50'000'000;

  static NuMethod series(double tol = 1e-10, std::uint64_t max_terms = 50'000'000) {
    return {Kind::series, tol, max_terms};
  }
  static NuMethod approx() { return {Kind::approx, 0.0, 0}; }
};

double nu(double x, const NuMethod& method);

}  // namespace chifield
