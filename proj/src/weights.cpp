#include "cubesect/weights.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "cubesect/error.hpp"

namespace cubesect {

double euclidean_norm(std::span<const double> v) {
  // Scaled accumulation so tiny and huge weights do not under/overflow.
  double scale = 0.0;
  for (double x : v) scale = std::max(scale, std::abs(x));
  if (scale == 0.0) return 0.0;
  double sum = 0.0;
  for (double x : v) {
    const double y = x / scale;
    sum += y * y;
  }
  return scale * std::sqrt(sum);
}

WeightVector::WeightVector(std::vector<double> coords) : coords_(std::move(coords)) {
  if (coords_.empty()) throw InvalidInput("weight vector must have at least one coordinate");
  bool any_nonzero = false;
  for (double x : coords_) {
    if (!std::isfinite(x)) throw InvalidInput("weight vector has a non-finite coordinate");
    any_nonzero = any_nonzero || x != 0.0;
  }
  if (!any_nonzero) throw InvalidInput("weight vector must not be all zero");
}

WeightVector WeightVector::diagonal(std::size_t k, std::size_t n) {
  if (k == 0 || k > n) {
    throw InvalidInput("k-diagonal needs 1 <= k <= n (got k=" + std::to_string(k) +
                       ", n=" + std::to_string(n) + ")");
  }
  std::vector<double> c(n, 0.0);
  const double v = 1.0 / std::sqrt(static_cast<double>(k));
  std::fill(c.begin(), c.begin() + static_cast<std::ptrdiff_t>(k), v);
  return WeightVector(std::move(c));
}

WeightVector WeightVector::basis(std::size_t j, std::size_t n) {
  if (j >= n) throw InvalidInput("basis index out of range");
  std::vector<double> c(n, 0.0);
  c[j] = 1.0;
  return WeightVector(std::move(c));
}

double WeightVector::norm() const { return euclidean_norm(coords_); }

WeightVector WeightVector::normalized() const {
  const double len = norm();
  std::vector<double> c(coords_);
  for (double& x : c) x /= len;
  return WeightVector(std::move(c));
}

WeightVector WeightVector::scaled(double c) const {
  if (c == 0.0) throw InvalidInput("scaling a weight vector by zero");
  std::vector<double> out(coords_);
  for (double& x : out) x *= c;
  return WeightVector(std::move(out));
}

std::size_t WeightVector::nonzero_count() const {
  return static_cast<std::size_t>(
      std::count_if(coords_.begin(), coords_.end(), [](double x) { return x != 0.0; }));
}

std::vector<double> WeightVector::nonzero_magnitudes() const {
  std::vector<double> out;
  out.reserve(coords_.size());
  for (double x : coords_) {
    if (x != 0.0) out.push_back(std::abs(x));
  }
  return out;
}

bool ReducedWeights::degenerate() const {
  return std::all_of(coords.begin(), coords.end(), [](double x) { return x == 0.0; });
}

double ReducedWeights::norm() const { return euclidean_norm(coords); }

ReducedWeights reduce(const WeightVector& a, std::size_t k) {
  if (k >= a.dimension()) {
    throw InvalidInput("reduce: index " + std::to_string(k) + " out of range for dimension " +
                       std::to_string(a.dimension()));
  }
  std::vector<double> c;
  c.reserve(a.dimension() - 1);
  for (std::size_t i = 0; i < a.dimension(); ++i) {
    if (i != k) c.push_back(a[i]);
  }
  return ReducedWeights{a, k, std::move(c)};
}

}  // namespace cubesect
