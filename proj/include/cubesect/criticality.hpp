#pragma once

#include <cstddef>
#include <vector>

#include "cubesect/weights.hpp"

namespace cubesect {

/// I(a) = integral of prod_i sin(a_i t)/(a_i t) over the real line, evaluated
/// exactly as 2 pi f_a(0). sigma(a) = |a| I(a); I is homogeneous of degree -1.
double polya_integral(const WeightVector& a);

/// Euclidean gradient of I at a (any nonzero a, not only unit vectors).
///
/// Uses a_k dI/da_k = 2 pi f_{a~_k}(a_k) - I(a) with the density taken at its
/// midpoint value, so the two-coordinate diagonals (where I has a kink) get
/// the symmetric subgradient. dI/da_k = 0 when a_k = 0; a Taylor expansion of
/// the reduced density replaces the division for |a_k| < 1e-6 |a|.
std::vector<double> grad_polya_integral(const WeightVector& a);

enum class Verdict { critical, not_critical, degenerate_min, degenerate_max };

const char* to_string(Verdict v);

inline constexpr double kDefaultCriticalityTolerance = 1e-9;

struct CriticalityReport {
  WeightVector direction;  // unit-normalized
  double sigma = 0.0;
  double lambda = 0.0;  // Lagrange multiplier, -sigma
  double mu = 0.0;      // 2^{n-2} sigma / ((n-1) pi)
  /// r_k = (2 pi f_{a~_k}(a_k) - sigma (1 - a_k^2)) / sigma. Empty for the
  /// degenerate verdicts.
  std::vector<double> residuals{};
  double max_residual = 0.0;
  bool interior = false;
  Verdict verdict = Verdict::not_critical;
  double tolerance = kDefaultCriticalityTolerance;
  /// Coordinates equal to zero; the direction is then a direction of the
  /// lower-dimensional cube spanned by the others.
  std::vector<std::size_t> zero_coordinates{};
};

CriticalityReport criticality_residuals(const WeightVector& a,
                                        double tolerance = kDefaultCriticalityTolerance);

/// True for +-e_j (minimal sections) and the two-coordinate diagonals
/// (maximal sections), where the balance equations degenerate.
bool is_degenerate_direction(const WeightVector& a);

struct BalanceResult {
  std::vector<double> cone_over_one_minus_ak2;  // q_k = cone_k / (1 - a_k^2)
  double mu_hat = 0.0;                          // mean of q_k
  double spread = 0.0;                          // (max q - min q) / mu_hat
};

/// Cone volumes over the facets x_k = 1 divided by 1 - a_k^2; a is critical
/// iff these agree. Throws InvalidInput for degenerate directions.
BalanceResult theorem1_balance(const WeightVector& a);

/// |a_k| < sum_{i != k} |a_i| for every k (strict).
bool interior_condition(const WeightVector& a);

}  // namespace cubesect
