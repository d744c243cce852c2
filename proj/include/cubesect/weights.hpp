#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace cubesect {

/// Nonzero real n-vector a = (a_1, ..., a_n): the normal of a hyperplane
/// section and the weights of the sum a_1 X_1 + ... + a_n X_n.
///
/// Coordinates are stored exactly as given; nothing is normalized
/// implicitly. Indices are zero-based throughout the library.
class WeightVector {
 public:
  /// Throws InvalidInput on an empty, all-zero or non-finite vector.
  explicit WeightVector(std::vector<double> coords);

  /// k-diagonal direction (1/sqrt(k), ..., 1/sqrt(k), 0, ..., 0) in R^n.
  static WeightVector diagonal(std::size_t k, std::size_t n);
  /// Standard basis vector e_j in R^n.
  static WeightVector basis(std::size_t j, std::size_t n);

  std::size_t dimension() const noexcept { return coords_.size(); }
  std::span<const double> coords() const noexcept { return coords_; }
  double operator[](std::size_t i) const { return coords_[i]; }

  double norm() const;
  WeightVector normalized() const;
  WeightVector scaled(double c) const;

  std::size_t nonzero_count() const;
  /// |a_i| for every a_i != 0, in coordinate order.
  std::vector<double> nonzero_magnitudes() const;

  bool operator==(const WeightVector&) const = default;

 private:
  std::vector<double> coords_;
};

/// a with coordinate k deleted. May be empty or all-zero, in which case it
/// is flagged degenerate (the sum over it is the point mass at 0).
struct ReducedWeights {
  WeightVector parent;
  std::size_t omitted_index;
  std::vector<double> coords;

  bool degenerate() const;
  double norm() const;
};

/// Throws InvalidInput when k >= a.dimension().
ReducedWeights reduce(const WeightVector& a, std::size_t k);

double euclidean_norm(std::span<const double> v);

}  // namespace cubesect
