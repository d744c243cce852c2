#pragma once

#include <array>
#include <cstddef>
#include <vector>

#include "cubesect/weights.hpp"

namespace cubesect {

/// One instance of the pairwise balance between coordinates i and j:
/// ((1 - a_j^2) / a_j) P(|S - a_i| <= a_j) against the same with i and j
/// swapped, S the sum over the remaining coordinates.
struct QuadResidual {
  double lhs = 0.0;
  double rhs = 0.0;
  double residual = 0.0;  // lhs - rhs
};

/// a is normalized first; coordinates enter through their absolute values.
/// Throws InvalidInput when n < 3, i == j, an index is out of range, or
/// a_i or a_j is zero.
QuadResidual pairwise_balance(const WeightVector& a, std::size_t i, std::size_t j);

/// a1 + a2 - a3 - a1 a2^2 - a1^2 a2 - a1 a2 a3 for arbitrary reals.
double n3_cubic(double a1, double a2, double a3);

/// The cubic at a positive unit 3-vector sorted ascending, with a3 < a1 + a2.
/// Vanishes at critical points with a1 != a2. Throws InvalidInput when the
/// ordering, positivity, unit norm (1e-12) or interior condition fails.
double n3_relation(const WeightVector& a);

/// Sum of the cubic over the three pairings (a1,a2;a3), (a1,a3;a2),
/// (a2,a3;a1), and its factored form (a1+a2+a3)(1 - a1a2 - a1a3 - a2a3).
double n3_cyclic_sum(double a1, double a2, double a3);
double n3_cyclic_product(double a1, double a2, double a3);

/// (a1-a2)^2 + (a1-a3)^2 + (a2-a3)^2 - 2(1 - a1a2 - a1a3 - a2a3): zero on the
/// unit sphere. Evaluated on the coordinates as given.
double n3_identity_check(const WeightVector& a);

/// a1 (1 - 2 a2^2 - a1 a2): the cubic with a2 = a3.
double n3_two_equal_relation(double a1, double a2);

enum class N4Case { A, B, C, D };

const char* to_string(N4Case c);

/// Cases selected by the signs of (b1+b2)-(b3+b4) and (b1+b4)-(b2+b3).
/// Equalities within 1e-12 select every adjacent case.
struct CaseTag {
  std::vector<N4Case> cases;
  double sum_gap = 0.0;    // (b1 + b2) - (b3 + b4)
  double cross_gap = 0.0;  // (b1 + b4) - (b2 + b3)
  bool contains(N4Case c) const;
  bool on_boundary() const { return cases.size() > 1; }
};

using Quad = std::array<double, 4>;

/// Requires 0 < b1 <= b2 and 0 < b3 <= b4 (InvalidInput otherwise).
CaseTag n4_case_dispatch(const Quad& b);

/// Case polynomial as written in the four-case analysis (lhs - rhs):
///   A  (b1+b2+b3-b4)^2 (1+b1b2) - 8 b1b2b3 (b1+b2)
///   B  (b2^2-b1^2)(1+b2^2-2b2(b3+b4)) - (1-b2^2)(b3-b4)^2
///   C  b1 + b2 - b4 - b1b2^2 - b1^2b2 - b1b2b4
///   D  8 b1b3b4 (1-b2^2) - (b1-b2+b3+b4)^2 (b1+b2-b1^2b2-b1b2^2)
/// Throws InvalidInput unless b is ordered, unit (1e-9) and the case's sign
/// conditions hold. Case A additionally needs b1+b2 >= b4-b3 and case D
/// needs b2-b1 <= b3+b4; outside those ranges the polynomials do not
/// describe the balance and InvalidInput is thrown.
double n4_case_residual(const Quad& b, N4Case tag);

/// (b2 - b1) times the case A polynomial: zero whenever b1 = b2.
double n4_case_a_factored(const Quad& b);

/// 8 b1b2b3b4 (L - R) with L, R the two sides of the b1/b2 balance against
/// the trapezoid b3 X3 + b4 X4. Computed from the case polynomial (with the
/// scale factor that makes all cases agree) or directly from the trapezoid
/// distribution function. Continuous across case boundaries.
double n4_balance_normalized(const Quad& b, N4Case tag);
double n4_balance_direct(const Quad& b);

struct UnequalRoot {
  double a1 = 0.0;
  double a3 = 0.0;
  double a4 = 0.0;
  std::array<double, 3> residuals{};
};

/// Positive roots of
///   (a1 + a3 + a4) a4 = 1,  2a1^2 + a3^2 + a4^2 = 1,
///   (2a1 + a3 - a4)^2 (1 + a1a3) = 8 a1^2 a3 (a1 + a3)
/// from damped Newton started on a 20^3 grid in (0,1)^3, merged within 1e-9.
/// Limits with a coordinate below 1e-6 (the boundary root a1 = 0) are dropped.
std::vector<UnequalRoot> solve_n4_system_unequal();

struct TripleRoot {
  double a1 = 0.0;
  double a4 = 0.0;
  std::array<double, 2> residuals{};
  bool satisfies_bound = false;  // a1 > 1/sqrt(12)
};

/// Positive roots of
///   3a1^2 + a4^2 = 1,  8a1^3 (1 - a4^2) = (3a1 - a4)^2 (a1 + a4)(1 - a1a4)
/// from a 20^2 grid, merged within 1e-9, sorted by a1 descending. The roots
/// are (1/2, 1/2) and (0.248051..., 0.903001...).
std::vector<TripleRoot> solve_n4_system_triple();

inline constexpr double kTripleLowerBound = 0.28867513459481287;  // 1/sqrt(12)

/// ((1 - r^2) / r) * P(s - 2r <= Z <= s), Z standard normal. Throws
/// InvalidInput unless 0 < r < 1.
double gaussian_heuristic_G(double r, double s);

/// All a2 in (0, 1) with G(a1, a1 + a2) = G(a2, a1 + a2), located by sign
/// changes on a uniform grid and refined by bracketing. Ascending.
std::vector<double> gaussian_balance_roots(double a1);

}  // namespace cubesect
