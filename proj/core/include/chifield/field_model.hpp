#pragma once

// Chi-square random field model: degrees of freedom, per-axis decay rates,
// lattice geometry, and the unit-sphere functionals consumed by every tail
// formula.

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

namespace chifield {

/// Product-OU covariance specification. rho is m x p (row-major), strictly
/// positive, in units of 1/Morgan.
struct CovarianceSpec {
  int m = 0;
  int p = 0;
  std::vector<double> rho;

  double rho_at(int k, int i) const { return rho[static_cast<std::size_t>(k) * p + i]; }
  double col_min(int i) const;
  double col_max(int i) const;

  /// Validates m >= 1, p >= 1, rho dimensions and positivity.
  void validate() const;

  /// F2 intercross: m=4, rho rows (2,2),(2,4),(4,2),(4,4).
  static CovarianceSpec preset_f2();
  /// Backcross: m=1, rho = (2,2).
  static CovarianceSpec preset_bc();
};

/// Sorted marker positions per axis, in Morgans, first position 0.
struct Lattice {
  std::vector<std::vector<double>> axes;

  int dim() const { return static_cast<int>(axes.size()); }
  std::size_t axis_points(int i) const { return axes[i].size(); }
  std::size_t total_points() const;
  double extent(int i) const { return axes[i].back(); }
  /// Product of per-axis extents, |T~|.
  double rect_measure() const;
  /// Segment lengths D_ij = d_ij - d_i,j-1 on axis i.
  std::vector<double> spacings(int i) const;
  double mean_spacing(int i) const;
  double sum_sqrt_spacing(int i) const;

  /// Validates: each axis starts at 0, strictly increasing, >= 2 points.
  void validate() const;

  /// n+1 points 0, spacing, ..., n*spacing per axis.
  static Lattice equal(int p, double spacing, int segments_per_axis);
  /// Repeats the spacing cycle on each axis until extent is reached.
  static Lattice from_cycle(int p, const std::vector<double>& cycle, double extent);
};

/// Unit vector on S^{m-1}; the constructor checks the norm to 1e-12.
struct SpherePoint {
  std::vector<double> u;
  explicit SpherePoint(std::vector<double> coords);
};

/// bar_rho_i(u) = sum_k u_k^2 rho_ki. axis is zero-based.
double bar_rho(const CovarianceSpec& spec, std::span<const double> u, int axis);

/// Surface measure of S^{m-1}: 2 pi^{m/2} / Gamma(m/2).
double sphere_volume(int m);

/// Closed form for E[bar_rho_1(U) bar_rho_2(U)], U uniform on S^{m-1};
/// defined for p = 2 only (throws argument_error otherwise):
///   (prod_i sum_k rho_ki + 2 sum_k rho_k1 rho_k2) / (m (m+2)).
double sphere_moment_prod(const CovarianceSpec& spec);

struct McEstimate {
  double estimate = 0.0;
  double std_error = 0.0;
};

/// Monte Carlo estimate of E[f(U)], U uniform on S^{m-1}, from normalized
/// Gaussian vectors keyed by (seed, sample). Deterministic given the seed and
/// independent of the thread count. For m = 1 the two-point average
/// (f(+1)+f(-1))/2 is returned exactly with std_error 0.
McEstimate sphere_expectation_mc(const CovarianceSpec& spec,
                                 const std::function<double(std::span<const double>)>& f,
                                 std::uint64_t samples, std::uint64_t seed, int threads = 0);

/// Cached bar_rho values over a fixed set of sphere samples, so that a b-grid
/// of tail evaluations reuses the same quadrature points (common random
/// numbers). For m = 1 the cache holds the single exact point.
class SphereRhoCache {
 public:
  SphereRhoCache(const CovarianceSpec& spec, std::uint64_t samples, std::uint64_t seed,
                 int threads = 0);

  std::size_t count() const { return count_; }
  int dim() const { return p_; }
  bool exact() const { return exact_; }
  std::uint64_t seed() const { return seed_; }
  std::span<const double> row(std::size_t s) const { return {&bar_[s * p_], static_cast<std::size_t>(p_)}; }

  /// Mean and standard error of g(bar_rho row) over the cached samples, with
  /// a fixed-chunk deterministic reduction. std_error is 0 for exact caches.
  McEstimate mean(const std::function<double(std::span<const double>)>& g, int threads = 0) const;

 private:
  std::vector<double> bar_;
  std::size_t count_;
  int p_;
  bool exact_;
  std::uint64_t seed_;
};

}  // namespace chifield
