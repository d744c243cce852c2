#include "polynomial.hpp"

#include <cmath>

namespace cubesect::detail {

double horner(std::span<const double> c, double u) {
  double acc = 0.0;
  for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * u + *it;
  return acc;
}

double derivative_at(std::span<const double> c, double u, int k) {
  if (k <= 0) return horner(c, u);
  const auto deg = static_cast<int>(c.size()) - 1;
  if (k > deg) return 0.0;
  double acc = 0.0;
  for (int j = deg; j >= k; --j) {
    double falling = 1.0;
    for (int i = 0; i < k; ++i) falling *= j - i;
    acc = acc * u + falling * c[static_cast<std::size_t>(j)];
  }
  return acc;
}

Coeffs antiderivative(std::span<const double> c) {
  Coeffs out(c.size() + 1, 0.0);
  for (std::size_t j = 0; j < c.size(); ++j) out[j + 1] = c[j] / static_cast<double>(j + 1);
  return out;
}

Coeffs taylor_shift(std::span<const double> c, double delta) {
  // Repeated synthetic division; O(d^2) and exact in the absence of rounding.
  Coeffs out(c.begin(), c.end());
  const std::size_t d = out.size();
  for (std::size_t i = 0; i + 1 < d; ++i) {
    for (std::size_t j = d - 1; j > i; --j) out[j - 1] += delta * out[j];
  }
  return out;
}

void CompensatedSum::add(double x) {
  const double t = sum_ + x;
  if (std::abs(sum_) >= std::abs(x)) {
    correction_ += (sum_ - t) + x;
  } else {
    correction_ += (x - t) + sum_;
  }
  sum_ = t;
}

}  // namespace cubesect::detail
