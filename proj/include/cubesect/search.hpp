#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "cubesect/weights.hpp"

namespace cubesect {

enum class Classification { global_min, global_max, local_max, local_min, saddle, undetermined };

const char* to_string(Classification c);

struct CriticalPoint {
  WeightVector canonical;  // nonnegative, ascending, unit norm
  double sigma = 0.0;
  double volume = 0.0;
  Classification classification = Classification::undetermined;
  std::size_t basin_count = 0;
  std::optional<std::size_t> diagonal_k{};
  std::vector<std::size_t> seeds{};       // indices of the seeds that converged here
  std::vector<double> hessian_eigenvalues{};  // tangent-space spectrum; empty for global tags
  int iterations = 0;                       // Newton steps taken from the first seed
};

struct ScanConfig {
  std::size_t dimension = 3;
  std::size_t seed_count = 500;
  std::uint64_t rng_seed = 42;
  int newton_max_iters = 100;
  double newton_tol = 1e-11;
  double dedup_tol = 1e-6;

  /// Throws InvalidInput on dimension < 2, zero seeds or nonpositive tolerances.
  void validate() const;
};

/// Absolute values sorted ascending, then normalized. Canonical under signed
/// permutations.
WeightVector canonicalize(const WeightVector& a);

/// k if the canonical vector is the k-diagonal within tol (max-norm).
std::optional<std::size_t> diagonal_order(const WeightVector& canonical, double tol = 1e-8);

/// Damped Newton on the Lagrange system grad I(a) = lambda a, |a| = 1, started
/// from the positive-orthant fold of seed. Coordinates that fall below 1e-7
/// are dropped and the search continues in the lower-dimensional cube.
/// Returns nothing when the iteration stalls, diverges or leaves the shell
/// 1/2 <= |a| <= 2. The point is classified before it is returned.
std::optional<CriticalPoint> refine_critical(const WeightVector& seed, const ScanConfig& cfg);

/// Multistart over cfg.seed_count uniform sphere seeds plus the n diagonal
/// seeds; results are canonicalized, merged within dedup_tol, classified and
/// sorted by sigma. Deterministic for a fixed rng_seed, independent of the
/// worker count.
std::vector<CriticalPoint> scan(const ScanConfig& cfg);

/// Eigenvalues of the Hessian of sigma (degree-0 extension) restricted to the
/// tangent space at a, by central differences (step 1e-4) with one Richardson
/// extrapolation. Ascending.
std::vector<double> tangent_hessian_eigenvalues(const WeightVector& a);

/// Global tags by comparing sigma with pi and sqrt(2) pi; otherwise the sign
/// pattern of the tangent Hessian spectrum. Eigenvalues within 1e-5 of zero
/// are resolved by probing sigma along their eigenspace at radii 1e-2 and
/// 3e-3; a sign change there makes a saddle, no consistent sign makes the
/// point undetermined.
Classification classify(const CriticalPoint& p);

}  // namespace cubesect
