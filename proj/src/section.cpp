#include "cubesect/section.hpp"

#include <cmath>
#include <numbers>

#include "cubesect/density.hpp"
#include "cubesect/error.hpp"

namespace cubesect {

namespace {

double pow2(std::size_t k) { return std::ldexp(1.0, static_cast<int>(k)); }

void check_index(const WeightVector& a, std::size_t k) {
  if (k >= a.dimension()) throw InvalidInput("facet index out of range");
}

}  // namespace

SectionValue parallel_section(const WeightVector& a, double r) {
  const std::size_t n = a.dimension();
  if (a.nonzero_count() == 1) {
    const double c = a.nonzero_magnitudes().front();
    const double ar = std::abs(r);
    if (ar == c) return {pow2(n - 1), true};
    return {ar < c ? pow2(n - 1) : 0.0, false};
  }
  const PiecewisePolynomial f = density_closed_form(a);
  return {pow2(n) * a.norm() * f(r), false};
}

double central_volume(const WeightVector& a) { return parallel_section(a.normalized(), 0.0).volume; }

double sigma(const WeightVector& a) {
  const double n = static_cast<double>(a.dimension());
  return std::numbers::pi / std::exp2(n - 1.0) * parallel_section(a, 0.0).volume;
}

SectionValue facet_section_volume(const WeightVector& a, std::size_t k) {
  check_index(a, k);
  const WeightVector u = a.normalized();
  const ReducedWeights rest = reduce(u, k);
  if (rest.degenerate()) return {0.0, true};
  const UniformSum sum(rest.coords);
  // s_{a~}(-|a_k|) = s_{a~}(|a_k|); the right limit at -|a_k| is the value
  // of the closed section even when |a_k| sits on the support boundary.
  const double f = sum.density_right(-std::abs(u[k]));
  return {pow2(u.dimension() - 1) * rest.norm() * f, false};
}

double cone_volume(const WeightVector& a, std::size_t k) {
  check_index(a, k);
  if (a.dimension() < 2) throw InvalidInput("cone volume needs n >= 2");
  const WeightVector u = a.normalized();
  const ReducedWeights rest = reduce(u, k);
  if (rest.degenerate()) return 0.0;
  const SectionValue facet = facet_section_volume(u, k);
  return facet.volume / (static_cast<double>(u.dimension() - 1) * rest.norm());
}

SlabCheck slab_identity_check(const WeightVector& a, std::size_t k) {
  check_index(a, k);
  if (a[k] == 0.0) throw InvalidInput("slab identity needs a_k != 0");
  const WeightVector u = a.normalized();
  const double ak = std::abs(u[k]);
  const ReducedWeights rest = reduce(u, k);
  const UniformSum sum(rest.coords);
  const double mass = sum.cdf(ak) - sum.cdf(-ak);
  return {parallel_section(u, 0.0).volume, pow2(u.dimension() - 1) * mass / ak};
}

SectionReport section_report(const WeightVector& a) {
  const WeightVector u = a.normalized();
  const std::size_t n = u.dimension();
  SectionReport rep{u, central_volume(u), sigma(u), {}, {}, {}, {}};
  for (std::size_t k = 0; k < n; ++k) {
    const SectionValue facet = facet_section_volume(u, k);
    rep.facet_section_volumes.push_back(facet.volume);
    rep.degenerate_facets.push_back(facet.degenerate);
    rep.cone_volumes.push_back(n >= 2 ? cone_volume(u, k) : 0.0);
    if (u[k] != 0.0) {
      rep.slab_checks.emplace_back(slab_identity_check(u, k));
    } else {
      rep.slab_checks.emplace_back(std::nullopt);
    }
  }
  return rep;
}

}  // namespace cubesect
