#pragma once

#include <cstddef>
#include <cstdint>

#include "cubesect/weights.hpp"

namespace cubesect {

struct QuadratureConfig {
  int panel_order = 20;             // Gauss-Legendre nodes per panel: 7, 10, 15, 20, 25 or 30
  double truncation = 0.0;          // T; 0 picks T from tail_bound_target
  double tail_bound_target = 1e-9;  // bound on the integral of |prod sinc| beyond T
  std::size_t max_panels = 4000;    // caps the automatic T
};

struct QuadratureEstimate {
  double value = 0.0;            // integral over the real line
  double truncation = 0.0;       // T actually used
  std::size_t panels = 0;        // panels on [0, T]
  double tail_bound = 0.0;       // 2 T^{1-m} / ((m-1) prod |a_i|), m nonzero weights
  double tail_correction = 0.0;  // integral over |t| > T, included in value
};

/// Integral of prod_i sin(a_i t)/(a_i t) over the real line. [0, T] is split
/// into panels of width pi / sum|a_i| integrated by Gauss-Legendre; the part
/// beyond T is expanded into cos/sin(omega t)/t^m terms by product-to-sum and
/// integrated with the sine and cosine integrals. Throws InvalidInput with
/// fewer than two nonzero weights (not absolutely integrable) or more than 20.
QuadratureEstimate polya_quadrature(const WeightVector& a, const QuadratureConfig& cfg = {});

struct MonteCarloEstimate {
  double mean = 0.0;       // estimate of s_a(r)
  double std_error = 0.0;  // sample standard deviation / sqrt(samples)
  std::uint64_t samples = 0;
  double slab_halfwidth = 0.0;
};

/// s_a(r) from the fraction of uniform points of [-1,1]^n in the slab
/// |<x, a> - r| <= eps, scaled by 2^n |a| / (2 eps). Samples are drawn in
/// batches of 65536 with per-batch seeds, so the result depends only on
/// rng_seed. The slab average carries an O(eps^2) bias where the density is
/// smooth at r. Throws InvalidInput unless eps > 0 and samples > 0.
MonteCarloEstimate monte_carlo_section(const WeightVector& a, double r, std::uint64_t samples,
                                       double eps, std::uint64_t rng_seed);

/// 0.01 * sum |a_i|.
double default_slab_halfwidth(const WeightVector& a);

/// sqrt(6/pi) 2^{n-1}: the normal approximation of the n-diagonal section.
/// Throws InvalidInput for n < 2.
double clt_diagonal_asymptote(std::size_t n);

}  // namespace cubesect
