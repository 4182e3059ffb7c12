#include "chifield/field_model.hpp"

#include <cmath>
#include <string>

#include "chifield/errors.hpp"
#include "chifield/parallel.hpp"
#include "chifield/rng.hpp"

namespace chifield {

namespace {
constexpr std::uint64_t kChunk = 4096;
}

void CovarianceSpec::validate() const {
  if (m < 1) throw argument_error("CovarianceSpec: m must be >= 1");
  if (p < 1) throw argument_error("CovarianceSpec: p must be >= 1");
  if (rho.size() != static_cast<std::size_t>(m) * p)
    throw argument_error("CovarianceSpec: rho must be m x p");
  for (double r : rho)
    if (!(r > 0.0) || !std::isfinite(r))
      throw argument_error("CovarianceSpec: all decay rates must be strictly positive");
}

double CovarianceSpec::col_min(int i) const {
  double v = rho_at(0, i);
  for (int k = 1; k < m; ++k) v = std::min(v, rho_at(k, i));
  return v;
}

double CovarianceSpec::col_max(int i) const {
  double v = rho_at(0, i);
  for (int k = 1; k < m; ++k) v = std::max(v, rho_at(k, i));
  return v;
}

CovarianceSpec CovarianceSpec::preset_f2() {
  return {4, 2, {2, 2, 2, 4, 4, 2, 4, 4}};
}

CovarianceSpec CovarianceSpec::preset_bc() {
  return {1, 2, {2, 2}};
}

std::size_t Lattice::total_points() const {
  std::size_t n = 1;
  for (const auto& a : axes) n *= a.size();
  return n;
}

double Lattice::rect_measure() const {
  double v = 1.0;
  for (const auto& a : axes) v *= a.back();
  return v;
}

std::vector<double> Lattice::spacings(int i) const {
  const auto& a = axes[i];
  std::vector<double> d(a.size() - 1);
  for (std::size_t j = 1; j < a.size(); ++j) d[j - 1] = a[j] - a[j - 1];
  return d;
}

double Lattice::mean_spacing(int i) const {
  const auto& a = axes[i];
  return a.back() / static_cast<double>(a.size() - 1);
}

double Lattice::sum_sqrt_spacing(int i) const {
  const auto& a = axes[i];
  double s = 0.0;
  for (std::size_t j = 1; j < a.size(); ++j) s += std::sqrt(a[j] - a[j - 1]);
  return s;
}

void Lattice::validate() const {
  if (axes.empty()) throw argument_error("Lattice: needs at least one axis");
  for (std::size_t i = 0; i < axes.size(); ++i) {
    const auto& a = axes[i];
    if (a.size() < 2)
      throw argument_error("Lattice: axis " + std::to_string(i + 1) + " needs >= 2 points");
    if (a.front() != 0.0)
      throw argument_error("Lattice: axis " + std::to_string(i + 1) + " must start at 0");
    for (std::size_t j = 1; j < a.size(); ++j)
      if (!(a[j] > a[j - 1]))
        throw argument_error("Lattice: axis " + std::to_string(i + 1) +
                             " must be strictly increasing");
  }
}

Lattice Lattice::equal(int p, double spacing, int segments_per_axis) {
  if (p < 1 || segments_per_axis < 1 || !(spacing > 0.0))
    throw argument_error("Lattice::equal: bad parameters");
  Lattice lat;
  lat.axes.assign(p, {});
  for (auto& a : lat.axes) {
    a.resize(segments_per_axis + 1);
    for (int j = 0; j <= segments_per_axis; ++j) a[j] = j * spacing;
  }
  return lat;
}

Lattice Lattice::from_cycle(int p, const std::vector<double>& cycle, double extent) {
  if (p < 1 || cycle.empty() || !(extent > 0.0))
    throw argument_error("Lattice::from_cycle: bad parameters");
  for (double d : cycle)
    if (!(d > 0.0)) throw argument_error("Lattice::from_cycle: spacings must be positive");
  std::vector<double> axis{0.0};
  std::size_t k = 0;
  while (axis.back() < extent - 1e-12) {
    axis.push_back(axis.back() + cycle[k % cycle.size()]);
    ++k;
  }
  Lattice lat;
  lat.axes.assign(p, axis);
  return lat;
}

SpherePoint::SpherePoint(std::vector<double> coords) : u(std::move(coords)) {
  double s = 0.0;
  for (double v : u) s += v * v;
  if (std::fabs(std::sqrt(s) - 1.0) > 1e-12)
    throw argument_error("SpherePoint: vector is not unit length");
}

double bar_rho(const CovarianceSpec& spec, std::span<const double> u, int axis) {
  if (axis < 0 || axis >= spec.p) throw argument_error("bar_rho: axis out of range");
  if (static_cast<int>(u.size()) != spec.m)
    throw argument_error("bar_rho: point dimension does not match spec.m");
  double s = 0.0;
  for (int k = 0; k < spec.m; ++k) s += u[k] * u[k] * spec.rho_at(k, axis);
  return s;
}

double sphere_volume(int m) {
  if (m < 1) throw argument_error("sphere_volume: m must be >= 1");
  return 2.0 * std::pow(M_PI, m / 2.0) / std::tgamma(m / 2.0);
}

double sphere_moment_prod(const CovarianceSpec& spec) {
  spec.validate();
  if (spec.p != 2)
    throw argument_error("sphere_moment_prod: closed form is defined for p = 2 only");
  double s1 = 0.0, s2 = 0.0, cross = 0.0;
  for (int k = 0; k < spec.m; ++k) {
    s1 += spec.rho_at(k, 0);
    s2 += spec.rho_at(k, 1);
    cross += spec.rho_at(k, 0) * spec.rho_at(k, 1);
  }
  return (s1 * s2 + 2.0 * cross) / (static_cast<double>(spec.m) * (spec.m + 2));
}

namespace {

// Draw sphere sample s into u (length m); normals keyed by (seed, 0, s*m+k).
void draw_sphere_point(const CovarianceSpec& spec, std::uint64_t seed, std::uint64_t s,
                       double* u) {
  const int m = spec.m;
  double norm2 = 0.0;
  for (int k = 0; k < m; ++k) {
    u[k] = rng::normal(seed, 0, s * m + k);
    norm2 += u[k] * u[k];
  }
  if (!(norm2 > 0.0)) throw numerical_error("sphere sampling produced a zero vector");
  const double inv = 1.0 / std::sqrt(norm2);
  for (int k = 0; k < m; ++k) u[k] *= inv;
}

McEstimate reduce_chunks(const std::vector<double>& sums, const std::vector<double>& sumsqs,
                         std::uint64_t n) {
  double sum = 0.0, sumsq = 0.0;
  for (std::size_t c = 0; c < sums.size(); ++c) {
    sum += sums[c];
    sumsq += sumsqs[c];
  }
  const double mean = sum / static_cast<double>(n);
  double var = (sumsq - static_cast<double>(n) * mean * mean) / static_cast<double>(n - 1);
  if (var < 0.0) var = 0.0;
  return {mean, std::sqrt(var / static_cast<double>(n))};
}

}  // namespace

McEstimate sphere_expectation_mc(const CovarianceSpec& spec,
                                 const std::function<double(std::span<const double>)>& f,
                                 std::uint64_t samples, std::uint64_t seed, int threads) {
  spec.validate();
  if (spec.m == 1) {
    const double plus[1] = {1.0};
    const double minus[1] = {-1.0};
    const double a = f(std::span<const double>(plus, 1));
    const double b = f(std::span<const double>(minus, 1));
    if (!std::isfinite(a) || !std::isfinite(b))
      throw numerical_error("sphere_expectation_mc: integrand not finite at u = +-1");
    return {0.5 * (a + b), 0.0};
  }
  if (samples < 2) throw argument_error("sphere_expectation_mc: samples must be >= 2");

  const std::size_t nchunks = (samples + kChunk - 1) / kChunk;
  std::vector<double> sums(nchunks, 0.0), sumsqs(nchunks, 0.0);
  parallel_for_chunks(samples, kChunk, threads, [&](std::uint64_t begin, std::uint64_t end) {
    std::vector<double> u(spec.m);
    double sum = 0.0, sumsq = 0.0;
    for (std::uint64_t s = begin; s < end; ++s) {
      draw_sphere_point(spec, seed, s, u.data());
      const double v = f(std::span<const double>(u.data(), u.size()));
      if (!std::isfinite(v))
        throw numerical_error("sphere_expectation_mc: integrand not finite at sample " +
                              std::to_string(s));
      sum += v;
      sumsq += v * v;
    }
    sums[begin / kChunk] = sum;
    sumsqs[begin / kChunk] = sumsq;
  });
  return reduce_chunks(sums, sumsqs, samples);
}

SphereRhoCache::SphereRhoCache(const CovarianceSpec& spec, std::uint64_t samples,
                               std::uint64_t seed, int threads)
    : p_(spec.p), exact_(spec.m == 1), seed_(seed) {
  spec.validate();
  if (exact_) {
    count_ = 1;
    bar_.resize(p_);
    for (int i = 0; i < p_; ++i) bar_[i] = spec.rho_at(0, i);
    return;
  }
  if (samples < 2) throw argument_error("SphereRhoCache: samples must be >= 2");
  count_ = samples;
  bar_.resize(count_ * p_);
  parallel_for_chunks(samples, kChunk, threads, [&](std::uint64_t begin, std::uint64_t end) {
    std::vector<double> u(spec.m);
    for (std::uint64_t s = begin; s < end; ++s) {
      draw_sphere_point(spec, seed, s, u.data());
      for (int i = 0; i < p_; ++i)
        bar_[s * p_ + i] = bar_rho(spec, std::span<const double>(u.data(), u.size()), i);
    }
  });
}

McEstimate SphereRhoCache::mean(const std::function<double(std::span<const double>)>& g,
                                int threads) const {
  if (exact_) {
    const double v = g(row(0));
    if (!std::isfinite(v)) throw numerical_error("SphereRhoCache::mean: integrand not finite");
    return {v, 0.0};
  }
  const std::size_t nchunks = (count_ + kChunk - 1) / kChunk;
  std::vector<double> sums(nchunks, 0.0), sumsqs(nchunks, 0.0);
  parallel_for_chunks(count_, kChunk, threads, [&](std::uint64_t begin, std::uint64_t end) {
    double sum = 0.0, sumsq = 0.0;
    for (std::uint64_t s = begin; s < end; ++s) {
      const double v = g(row(s));
      if (!std::isfinite(v))
        throw numerical_error("SphereRhoCache::mean: integrand not finite at sample " +
                              std::to_string(s));
      sum += v;
      sumsq += v * v;
    }
    sums[begin / kChunk] = sum;
    sumsqs[begin / kChunk] = sumsq;
  });
  return reduce_chunks(sums, sumsqs, count_);
}

}  // namespace chifield
