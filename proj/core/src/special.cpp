#include "chifield/special.hpp"

#include <cmath>
#include <string>

#include "chifield/errors.hpp"
#include "chifield/rng.hpp"

namespace chifield {

namespace {
constexpr double kInvSqrt2Pi = 0.3989422804014326779;
constexpr double kSqrt2 = 1.4142135623730950488;
}  // namespace

double phi(double x) { return kInvSqrt2Pi * std::exp(-0.5 * x * x); }

double Phi(double x) { return 0.5 * std::erfc(-x / kSqrt2); }

// AS 241 algorithm PPND16 (Wichura 1988). Three rational approximations:
// central |p-1/2| <= 0.425, and two tail regions split at r = 5 with
// r = sqrt(-log(min(p,1-p))).
double inv_Phi(double p) {
  if (!(p > 0.0 && p < 1.0)) throw argument_error("inv_Phi: p must lie in (0,1)");
  const double q = p - 0.5;
  if (std::fabs(q) <= 0.425) {
    const double r = 0.180625 - q * q;
    return q *
           (((((((2.5090809287301226727e3 * r + 3.3430575583588128105e4) * r +
                 6.7265770927008700853e4) *
                    r +
                4.5921953931549871457e4) *
                   r +
               1.3731693765509461125e4) *
                  r +
              1.9715909503065514427e3) *
                 r +
             1.3314166789178437745e2) *
                r +
            3.3871328727963666080e0) /
           (((((((5.2264952788528545610e3 * r + 2.8729085735721942674e4) * r +
                 3.9307895800092710610e4) *
                    r +
                2.1213794301586595867e4) *
                   r +
               5.3941960214247511077e3) *
                  r +
              6.8718700749205790830e2) *
                 r +
             4.2313330701600911252e1) *
                r +
            1.0);
  }
  double r = (q < 0.0) ? p : 1.0 - p;
  r = std::sqrt(-std::log(r));
  double z;
  if (r <= 5.0) {
    r -= 1.6;
    z = (((((((7.74545014278341407640e-4 * r + 2.27238449892691845833e-2) * r +
              2.41780725177450611770e-1) *
                 r +
             1.27045825245236838258e0) *
                r +
            3.64784832476320460504e0) *
               r +
           5.76949722146069140550e0) *
              r +
          4.63033784615654529590e0) *
             r +
         1.42343711074968357734e0) /
        (((((((1.05075007164441684324e-9 * r + 5.47593808499534494600e-4) * r +
              1.51986665636164571966e-2) *
                 r +
             1.48103976427480074590e-1) *
                r +
            6.89767334985100004550e-1) *
               r +
           1.67638483018380384940e0) *
              r +
          2.05319162663775882187e0) *
             r +
         1.0);
  } else {
    r -= 5.0;
    z = (((((((2.01033439929228813265e-7 * r + 2.71155556874348757815e-5) * r +
              1.24266094738807843860e-3) *
                 r +
             2.65321895265761230930e-2) *
                r +
            2.96560571828504891230e-1) *
               r +
           1.78482653991729133580e0) *
              r +
          5.46378491116411436990e0) *
             r +
         6.65790464350110377720e0) /
        (((((((2.04426310338993978564e-15 * r + 1.42151175831644588870e-7) * r +
              1.84631831751005468180e-5) *
                 r +
             7.86869131145613259100e-4) *
                r +
            1.48753612908506148525e-2) *
               r +
           1.36929880922735805310e-1) *
              r +
          5.99832206555887937690e-1) *
             r +
         1.0);
  }
  return (q < 0.0) ? -z : z;
}

double nu_series(double x, double tol, std::uint64_t max_terms) {
  if (x < 0.0) throw argument_error("nu_series: x must be nonnegative");
  if (!(tol > 0.0)) throw argument_error("nu_series: tol must be positive");
  if (max_terms < 1) throw argument_error("nu_series: max_terms must be >= 1");
  if (x == 0.0) return 1.0;
  if (x < 1e-4) return 1.0;
  if (x < 0.02) return std::exp(-nu_small_x_rate * x);

  const double half_x = 0.5 * x;
  const double q = std::exp(-x * x / 8.0);  // per-term ratio of the Gaussian majorant
  double sum = 0.0;
  std::uint64_t n = 0;
  while (n < max_terms) {
    const std::uint64_t batch_end = std::min<std::uint64_t>(n + 512, max_terms);
    for (; n < batch_end; ) {
      ++n;
      sum += Phi(-half_x * std::sqrt(static_cast<double>(n))) / static_cast<double>(n);
    }
    // remainder: sum_{k>n} Phi(-x sqrt(k)/2)/k <= 2/(x sqrt(2pi)) (n+1)^{-3/2} q^{n+1}/(1-q)
    const double np1 = static_cast<double>(n + 1);
    const double bound = 2.0 / (x * std::sqrt(2.0 * M_PI)) * std::pow(np1, -1.5) *
                         std::exp(-x * x / 8.0 * np1) / (1.0 - q);
    if (2.0 * bound <= tol) {
      const double v = 2.0 / (x * x) * std::exp(-2.0 * sum);
      return v > 1.0 ? 1.0 : v;
    }
  }
  throw numerical_error("nu_series: remainder bound not reached within " +
                        std::to_string(max_terms) + " terms (x=" + std::to_string(x) + ")");
}

double nu_approx(double x) {
  if (!(x > 0.0)) throw argument_error("nu_approx: x must be positive");
  if (x < 1e-4) return 1.0;
  const double h = 0.5 * x;
  const double Ph = Phi(h);
  return (2.0 / x) * (Ph - 0.5) / (h * Ph + phi(h));
}

double nu(double x, const NuMethod& method) {
  if (method.kind == NuMethod::Kind::approx) return x == 0.0 ? 1.0 : nu_approx(x);
  return nu_series(x, method.tol, method.max_terms);
}

}  // namespace chifield

namespace chifield::rng {

double normal(std::uint64_t seed, std::uint64_t stream, std::uint64_t index) {
  return chifield::inv_Phi(uniform(seed, stream, index));
}

}  // namespace chifield::rng
