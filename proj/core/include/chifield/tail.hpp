#pragma once

// Analytic upper tail approximations for P(max over the lattice of Y(t) >= b),
// Y the chi field: nonlinear-renewal formula, volume-of-tube bound, and the
// continuous-field bound, plus the 1 - exp(-x) reporting clamp.

#include <cstdint>
#include <optional>
#include <vector>

#include "chifield/field_model.hpp"
#include "chifield/special.hpp"

namespace chifield {

enum class TailMethod { renewal, tube, continuous };

const char* tail_method_name(TailMethod m);

struct Quadrature {
  std::uint64_t samples = 1'000'000;
  std::uint64_t seed = 0;
  int threads = 0;
};

struct TailQuery {
  CovarianceSpec spec;
  Lattice lattice;
  double b = 0.0;  // threshold on the chi scale (Y, not Y^2)
  TailMethod method = TailMethod::renewal;
  Quadrature quadrature;
  NuMethod nu_method = NuMethod::series();
  /// Renewal only: per-axis spacings used instead of the lattice mean
  /// spacing. Zeros give the continuous limit exactly (nu(0) = 1).
  std::optional<std::vector<double>> spacing_override;
};

struct TailEstimate {
  double prob_raw = 0.0;      // asymptotic expression, may exceed 1
  double prob_clamped = 0.0;  // 1 - exp(-prob_raw)
  double std_error = 0.0;     // quadrature SE propagated to prob_raw
  TailMethod method = TailMethod::renewal;
  bool unequal_spacing_warning = false;  // spacings vary by more than 2x on some axis
  bool coarse_lattice_warning = false;   // b sqrt(2 rho_max D_i) > 10 on some axis
};

/// x >= 0 -> 1 - exp(-x).
double clamp_probability(double prob_raw);

TailEstimate renewal_tail(const TailQuery& q);
TailEstimate tube_tail(const TailQuery& q);
TailEstimate continuous_tail(const TailQuery& q);

/// Same formulas over a caller-owned cache, so b-grids and paired
/// renewal/continuous evaluations share identical quadrature points.
TailEstimate renewal_tail(const TailQuery& q, const SphereRhoCache& cache);
TailEstimate tube_tail(const TailQuery& q, const SphereRhoCache& cache);
TailEstimate continuous_tail(const TailQuery& q, const SphereRhoCache& cache);

/// Dispatch on q.method.
TailEstimate tail_probability(const TailQuery& q);
TailEstimate tail_probability(const TailQuery& q, const SphereRhoCache& cache);

}  // namespace chifield
