#include "chifield/tail.hpp"

#include <cmath>
#include <string>

#include "chifield/errors.hpp"

namespace chifield {

const char* tail_method_name(TailMethod m) {
  switch (m) {
    case TailMethod::renewal: return "renewal";
    case TailMethod::tube: return "tube";
    case TailMethod::continuous: return "continuous";
  }
  return "?";
}

double clamp_probability(double prob_raw) {
  if (!(prob_raw >= 0.0)) throw argument_error("clamp_probability: input must be nonnegative");
  return -std::expm1(-prob_raw);
}

namespace {

void check_query(const TailQuery& q) {
  q.spec.validate();
  q.lattice.validate();
  if (q.spec.p != q.lattice.dim())
    throw argument_error("tail: lattice dimension does not match spec.p");
  if (!(q.b > 0.0) || !std::isfinite(q.b)) throw argument_error("tail: b must be positive");
}

std::vector<double> renewal_spacings(const TailQuery& q) {
  if (q.spacing_override) {
    const auto& d = *q.spacing_override;
    if (static_cast<int>(d.size()) != q.spec.p)
      throw argument_error("tail: spacing_override must have one entry per axis");
    for (double v : d)
      if (v < 0.0) throw argument_error("tail: spacing_override entries must be >= 0");
    return d;
  }
  std::vector<double> d(q.spec.p);
  for (int i = 0; i < q.spec.p; ++i) d[i] = q.lattice.mean_spacing(i);
  return d;
}

bool spacing_varies_2x(const Lattice& lat) {
  for (int i = 0; i < lat.dim(); ++i) {
    const auto d = lat.spacings(i);
    double lo = d[0], hi = d[0];
    for (double v : d) {
      lo = std::min(lo, v);
      hi = std::max(hi, v);
    }
    if (hi > 2.0 * lo) return true;
  }
  return false;
}

// Assemble exp(log_measure + power*log b - b^2/2 + log integral); the raw
// expression underflows as a direct product once b is past ~6.
TailEstimate assemble(const TailQuery& q, double log_prefactor, double power,
                      const McEstimate& integral, TailMethod method) {
  if (!(integral.estimate > 0.0))
    throw numerical_error("tail: sphere integral must be positive");
  const double log_raw =
      log_prefactor + power * std::log(q.b) - 0.5 * q.b * q.b + std::log(integral.estimate);
  TailEstimate est;
  est.prob_raw = std::exp(log_raw);
  est.prob_clamped = clamp_probability(est.prob_raw);
  est.std_error = est.prob_raw * (integral.std_error / integral.estimate);
  est.method = method;
  est.unequal_spacing_warning = spacing_varies_2x(q.lattice);
  return est;
}

}  // namespace

TailEstimate renewal_tail(const TailQuery& q, const SphereRhoCache& cache) {
  check_query(q);
  const int m = q.spec.m, p = q.spec.p;
  const auto D = renewal_spacings(q);
  const auto g = cache.mean(
      [&](std::span<const double> bar) {
        double v = 1.0;
        for (int i = 0; i < p; ++i)
          v *= bar[i] * nu(q.b * std::sqrt(2.0 * bar[i] * D[i]), q.nu_method);
        return v;
      },
      q.quadrature.threads);
  const McEstimate integral{sphere_volume(m) * g.estimate, sphere_volume(m) * g.std_error};
  const double log_prefactor =
      std::log(q.lattice.rect_measure()) - 0.5 * m * std::log(2.0 * M_PI);
  auto est = assemble(q, log_prefactor, m + 2.0 * p - 2.0, integral, TailMethod::renewal);
  for (int i = 0; i < p; ++i)
    if (q.b * std::sqrt(2.0 * q.spec.col_max(i) * D[i]) > 10.0) est.coarse_lattice_warning = true;
  return est;
}

TailEstimate continuous_tail(const TailQuery& q, const SphereRhoCache& cache) {
  check_query(q);
  const int m = q.spec.m, p = q.spec.p;
  const auto g = cache.mean(
      [&](std::span<const double> bar) {
        double v = 1.0;
        for (int i = 0; i < p; ++i) v *= bar[i];
        return v;
      },
      q.quadrature.threads);
  const McEstimate integral{sphere_volume(m) * g.estimate, sphere_volume(m) * g.std_error};
  const double log_prefactor =
      std::log(q.lattice.rect_measure()) - 0.5 * m * std::log(2.0 * M_PI);
  return assemble(q, log_prefactor, m + 2.0 * p - 2.0, integral, TailMethod::continuous);
}

TailEstimate tube_tail(const TailQuery& q, const SphereRhoCache& cache) {
  check_query(q);
  const int m = q.spec.m, p = q.spec.p;
  const auto g = cache.mean(
      [&](std::span<const double> bar) {
        double v = 1.0;
        for (int i = 0; i < p; ++i) v *= std::sqrt(bar[i]);
        return v;
      },
      q.quadrature.threads);
  double log_sum_sqrt = 0.0;
  for (int i = 0; i < p; ++i) log_sum_sqrt += std::log(q.lattice.sum_sqrt_spacing(i));
  // V = 2^{p/2} prod_i sum_j sqrt(D_ij) * integral of prod_i sqrt(bar_rho)
  const McEstimate integral{sphere_volume(m) * g.estimate, sphere_volume(m) * g.std_error};
  const double log_prefactor = std::log(2.0) + 0.5 * p * std::log(2.0) + log_sum_sqrt -
                               0.5 * (m + p) * std::log(2.0 * M_PI);
  return assemble(q, log_prefactor, m + p - 2.0, integral, TailMethod::tube);
}

TailEstimate renewal_tail(const TailQuery& q) {
  return renewal_tail(
      q, SphereRhoCache(q.spec, q.quadrature.samples, q.quadrature.seed, q.quadrature.threads));
}

TailEstimate continuous_tail(const TailQuery& q) {
  return continuous_tail(
      q, SphereRhoCache(q.spec, q.quadrature.samples, q.quadrature.seed, q.quadrature.threads));
}

TailEstimate tube_tail(const TailQuery& q) {
  return tube_tail(
      q, SphereRhoCache(q.spec, q.quadrature.samples, q.quadrature.seed, q.quadrature.threads));
}

TailEstimate tail_probability(const TailQuery& q, const SphereRhoCache& cache) {
  switch (q.method) {
    case TailMethod::renewal: return renewal_tail(q, cache);
    case TailMethod::tube: return tube_tail(q, cache);
    case TailMethod::continuous: return continuous_tail(q, cache);
  }
  throw argument_error("tail_probability: unknown method");
}

TailEstimate tail_probability(const TailQuery& q) {
  return tail_probability(
      q, SphereRhoCache(q.spec, q.quadrature.samples, q.quadrature.seed, q.quadrature.threads));
}

}  // namespace chifield
