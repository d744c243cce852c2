#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "cubesect/weights.hpp"

namespace cubesect {

/// Compactly supported piecewise polynomial: breakpoints t_0 < ... < t_m and,
/// for each interval [t_j, t_{j+1}], coefficients in the local variable
/// u = x - (t_j + t_{j+1}) / 2 ("midpoint-local" basis). Zero outside
/// [t_0, t_m].
///
/// Point evaluation is right-continuous; left_limit() and midpoint_value()
/// expose the other conventions at breakpoints.
class PiecewisePolynomial {
 public:
  /// Throws InvalidInput unless breakpoints strictly increase and there is
  /// exactly one piece per interval.
  PiecewisePolynomial(std::vector<double> breakpoints, std::vector<std::vector<double>> pieces);

  std::span<const double> breakpoints() const noexcept { return breakpoints_; }
  const std::vector<std::vector<double>>& pieces() const noexcept { return pieces_; }
  std::size_t piece_count() const noexcept { return pieces_.size(); }
  double support_min() const noexcept { return breakpoints_.front(); }
  double support_max() const noexcept { return breakpoints_.back(); }
  double midpoint(std::size_t piece) const;

  double operator()(double x) const { return right_limit(x); }
  double right_limit(double x) const;
  double left_limit(double x) const;
  /// Average of the one-sided limits: the value Fourier inversion produces.
  double midpoint_value(double x) const;
  /// Right-continuous k-th derivative.
  double derivative(double x, int k) const;

  /// Integral from -infinity to x. For an even probability density this is
  /// 1/2 + (integral over [0, x]), exactly 1/2 at the origin and exactly 0
  /// and 1 outside the support.
  double cdf(double x) const;
  /// Integral over the whole support.
  double integral() const;

 private:
  double integral_from_zero(double x) const;  // x >= 0
  std::ptrdiff_t piece_right_of(double x) const;
  std::ptrdiff_t piece_left_of(double x) const;

  std::vector<double> breakpoints_;
  std::vector<std::vector<double>> pieces_;
  // integral of the density over [0, t_j] for breakpoints t_j >= 0 (NaN for t_j < 0).
  std::vector<double> from_zero_;
  bool symmetric_probability_ = false;
};

/// Largest number of nonzero weights the truncated-power form accepts.
inline constexpr std::size_t kMaxClosedFormWeights = 20;

/// Weights below this fraction of sum |a_i| are treated as zero by both
/// density constructions.
inline constexpr double kNegligibleWeight = 1e-10;

/// Density of sum a_i X_i, X_i iid uniform on [-1, 1], via the truncated-power
/// expansion over the 2^n' sign patterns (n' = number of nonzero weights).
/// Zero and negligible weights are dropped. Throws InvalidInput if n' > kMaxClosedFormWeights.
PiecewisePolynomial density_closed_form(const WeightVector& a);

/// Same density built by convolving one uniform box at a time symbolically.
/// Independent of density_closed_form; used as its cross-check.
PiecewisePolynomial density_by_convolution(const WeightVector& a);

double eval_density(const PiecewisePolynomial& f, double r);
double eval_cdf(const PiecewisePolynomial& f, double r);

/// sin(x)/x with sin(0)/0 = 1 and a series for |x| < 1e-4.
double sinc(double x);
/// prod_i sin(a_i t)/(a_i t): characteristic function of sum a_i X_i.
double characteristic_function(const WeightVector& a, double t);

/// Distribution of sum w_i X_i for an arbitrary weight list, including the
/// all-zero (or empty) list, which is the point mass at 0. Reduced weight
/// vectors land here.
class UniformSum {
 public:
  explicit UniformSum(std::span<const double> weights);

  bool is_point_mass() const noexcept { return !density_.has_value(); }
  /// Throws InvalidInput for the point mass.
  const PiecewisePolynomial& density() const;

  /// One-sided values of the density; 0 everywhere for the point mass
  /// (no density exists there).
  double density_right(double x) const;
  double density_left(double x) const;
  double density_midpoint(double x) const;
  /// Point mass: 0 below zero, 1/2 at zero, 1 above.
  double cdf(double x) const;

 private:
  std::optional<PiecewisePolynomial> density_;
};

}  // namespace cubesect
