#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "cubesect/weights.hpp"

namespace cubesect {

/// A volume together with a flag for the degenerate configurations where the
/// density of sum a_i X_i does not exist (a = c e_j, |r| = |c|) or the facet
/// section collapses (a = +-e_k).
struct SectionValue {
  double volume = 0.0;
  bool degenerate = false;
};

/// s_a(r): (n-1)-volume of {x in Q_n : <x, a> = r}, computed as
/// 2^n |a| f(r) with f the density of sum a_i X_i. Not scale invariant.
SectionValue parallel_section(const WeightVector& a, double r);

/// Vol_{n-1}(Q_n cap a^perp); invariant under scaling of a.
double central_volume(const WeightVector& a);

/// sigma(a) = pi / 2^{n-1} * s_a(0) = 2 pi |a| f(0); scale invariant.
double sigma(const WeightVector& a);

/// Vol_{n-2}(S_k cap a^perp) for the facet S_k = {x_k = 1}, i.e. s_{a~_k}(a_k)
/// for the unit direction. At the boundary of the reduced density's
/// support the closed section is measured (one-sided limit from inside).
SectionValue facet_section_volume(const WeightVector& a, std::size_t k);

/// Vol_{n-1}(conv(0 cup (S_k cap a^perp))) = facet / ((n-1) sqrt(1 - a_k^2)).
/// Zero when a = +-e_k. Requires n >= 2.
double cone_volume(const WeightVector& a, std::size_t k);

struct SlabCheck {
  double lhs = 0.0;  // s_a(0)
  double rhs = 0.0;  // 2^{n-1} (F(a_k) - F(-a_k)) / a_k
};

/// Projection of the central section onto the facet S_k. Throws InvalidInput
/// when a_k = 0.
SlabCheck slab_identity_check(const WeightVector& a, std::size_t k);

struct SectionReport {
  WeightVector direction;  // unit-normalized copy of the input
  double volume = 0.0;
  double sigma = 0.0;
  std::vector<double> cone_volumes{};
  std::vector<double> facet_section_volumes{};
  std::vector<bool> degenerate_facets{};
  std::vector<std::optional<SlabCheck>> slab_checks{};  // empty where a_k = 0
};

SectionReport section_report(const WeightVector& a);

}  // namespace cubesect
