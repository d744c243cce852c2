#include "cubesect/criticality.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>

#include "cubesect/density.hpp"
#include "cubesect/error.hpp"
#include "cubesect/section.hpp"

namespace cubesect {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

// Nonzero coordinates of a, order preserved.
std::vector<double> support_coords(std::span<const double> a) {
  std::vector<double> out;
  for (double x : a) {
    if (x != 0.0) out.push_back(x);
  }
  return out;
}

bool is_two_diagonal(std::span<const double> nonzero) {
  if (nonzero.size() != 2) return false;
  const double x = std::abs(nonzero[0]);
  const double y = std::abs(nonzero[1]);
  return std::abs(x - y) <= 1e-12 * std::max(x, y);
}

}  // namespace

const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::critical: return "critical";
    case Verdict::not_critical: return "not-critical";
    case Verdict::degenerate_min: return "degenerate-min";
    case Verdict::degenerate_max: return "degenerate-max";
  }
  return "?";
}

double polya_integral(const WeightVector& a) {
  return kTwoPi * density_closed_form(a).midpoint_value(0.0);
}

std::vector<double> grad_polya_integral(const WeightVector& a) {
  const std::size_t n = a.dimension();
  const double integral = polya_integral(a);
  const double len = a.norm();
  std::vector<double> grad(n, 0.0);
  for (std::size_t k = 0; k < n; ++k) {
    const double ak = a[k];
    if (ak == 0.0) continue;
    const ReducedWeights rest = reduce(a, k);
    if (rest.degenerate()) {
      grad[k] = -integral / ak;
      continue;
    }
    const UniformSum sum(rest.coords);
    const double mag = std::abs(ak);
    if (mag < 1e-6 * len) {
      // I = (2 pi / a) * int_0^a f  =>  dI/da = 2 pi (f'(0+)/2 + a f''(0+)/3) + O(a^2)
      const auto& f = sum.density();
      const double d = kTwoPi * (0.5 * f.derivative(0.0, 1) + mag * f.derivative(0.0, 2) / 3.0);
      grad[k] = std::copysign(d, ak);
    } else {
      grad[k] = (kTwoPi * sum.density_midpoint(mag) - integral) / ak;
    }
  }
  return grad;
}

bool is_degenerate_direction(const WeightVector& a) {
  const auto nz = support_coords(a.coords());
  return nz.size() == 1 || is_two_diagonal(nz);
}

CriticalityReport criticality_residuals(const WeightVector& a, double tolerance) {
  const WeightVector u = a.normalized();
  const std::size_t n = u.dimension();
  CriticalityReport rep{u, 0.0, 0.0, 0.0, {}, 0.0, interior_condition(u), Verdict::not_critical,
                        tolerance, {}};
  rep.sigma = sigma(u);
  rep.lambda = -rep.sigma;
  if (n >= 2) {
    rep.mu = std::exp2(static_cast<double>(n) - 2.0) * rep.sigma /
             (static_cast<double>(n - 1) * std::numbers::pi);
  }
  for (std::size_t k = 0; k < n; ++k) {
    if (u[k] == 0.0) rep.zero_coordinates.push_back(k);
  }

  const auto nz = support_coords(u.coords());
  if (nz.size() == 1) {
    rep.verdict = Verdict::degenerate_min;
    return rep;
  }
  if (is_two_diagonal(nz)) {
    rep.verdict = Verdict::degenerate_max;
    return rep;
  }

  rep.residuals.resize(n);
  for (std::size_t k = 0; k < n; ++k) {
    const ReducedWeights rest = reduce(u, k);
    const UniformSum sum(rest.coords);
    const double one_minus = rest.norm() * rest.norm();  // 1 - a_k^2 without cancellation
    const double r = kTwoPi * sum.density_midpoint(std::abs(u[k])) - rep.sigma * one_minus;
    rep.residuals[k] = r / rep.sigma;
    rep.max_residual = std::max(rep.max_residual, std::abs(rep.residuals[k]));
  }
  rep.verdict = rep.max_residual <= tolerance ? Verdict::critical : Verdict::not_critical;
  return rep;
}

BalanceResult theorem1_balance(const WeightVector& a) {
  const WeightVector u = a.normalized();
  if (is_degenerate_direction(u)) {
    throw InvalidInput("balance test is undefined at +-e_j and two-coordinate diagonals");
  }
  BalanceResult res;
  for (std::size_t k = 0; k < u.dimension(); ++k) {
    const double rest = reduce(u, k).norm();
    res.cone_over_one_minus_ak2.push_back(cone_volume(u, k) / (rest * rest));
  }
  const auto& q = res.cone_over_one_minus_ak2;
  res.mu_hat = std::accumulate(q.begin(), q.end(), 0.0) / static_cast<double>(q.size());
  const auto [lo, hi] = std::minmax_element(q.begin(), q.end());
  res.spread = (*hi - *lo) / res.mu_hat;
  return res;
}

bool interior_condition(const WeightVector& a) {
  double total = 0.0;
  for (double x : a.coords()) total += std::abs(x);
  return std::all_of(a.coords().begin(), a.coords().end(),
                     [total](double x) { return 2.0 * std::abs(x) < total; });
}

}  // namespace cubesect
