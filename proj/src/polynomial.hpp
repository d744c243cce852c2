#pragma once

// Dense coefficient polynomials c[0] + c[1] u + ... used for the pieces of a
// PiecewisePolynomial. Internal to the library.

#include <span>
#include <vector>

namespace cubesect::detail {

using Coeffs = std::vector<double>;

double horner(std::span<const double> c, double u);
/// k-th derivative evaluated at u.
double derivative_at(std::span<const double> c, double u, int k);
/// Antiderivative with zero constant term.
Coeffs antiderivative(std::span<const double> c);
/// Coefficients of p(u + delta) given those of p(u).
Coeffs taylor_shift(std::span<const double> c, double delta);

/// Neumaier-compensated running sum.
class CompensatedSum {
 public:
  void add(double x);
  double value() const { return sum_ + correction_; }

 private:
  double sum_ = 0.0;
  double correction_ = 0.0;
};

}  // namespace cubesect::detail
