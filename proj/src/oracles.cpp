#include "cubesect/oracles.hpp"

#include <gsl/gsl_errno.h>
#include <gsl/gsl_sf_expint.h>

#include <boost/math/quadrature/gauss.hpp>
#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>
#include <vector>

#include "cubesect/density.hpp"
#include "cubesect/error.hpp"
#include "cubesect/parallel.hpp"

namespace cubesect {

namespace {

constexpr std::uint64_t kBatchSize = 1u << 16;

template <unsigned Order, class F>
double gauss_panel(F&& f, double lo, double hi) {
  return boost::math::quadrature::gauss<double, Order>::integrate(f, lo, hi);
}

template <class F>
double panel_integral(int order, F&& f, double lo, double hi) {
  switch (order) {
    case 7: return gauss_panel<7>(f, lo, hi);
    case 10: return gauss_panel<10>(f, lo, hi);
    case 15: return gauss_panel<15>(f, lo, hi);
    case 20: return gauss_panel<20>(f, lo, hi);
    case 25: return gauss_panel<25>(f, lo, hi);
    case 30: return gauss_panel<30>(f, lo, hi);
    default: throw InvalidInput("panel_order must be one of 7, 10, 15, 20, 25, 30");
  }
}

struct GslErrorsAsStatus {
  GslErrorsAsStatus() : previous(gsl_set_error_handler_off()) {}
  ~GslErrorsAsStatus() { gsl_set_error_handler(previous); }
  GslErrorsAsStatus(const GslErrorsAsStatus&) = delete;
  GslErrorsAsStatus& operator=(const GslErrorsAsStatus&) = delete;
  gsl_error_handler_t* previous;
};

double gsl_checked(int status, const gsl_sf_result& r) {
  if (status != GSL_SUCCESS) throw std::runtime_error(gsl_strerror(status));
  return r.val;
}

double sine_integral(double x) {
  gsl_sf_result r;
  return gsl_checked(gsl_sf_Si_e(x, &r), r);
}

double cosine_integral(double x) {
  gsl_sf_result r;
  return gsl_checked(gsl_sf_Ci_e(x, &r), r);
}

// Integrals over [T, inf) of cos(w t) / t^m and sin(w t) / t^m for w >= 0,
// by the upward recurrence from m = 1.
struct TailPair {
  double c = 0.0;
  double s = 0.0;
};

TailPair oscillatory_tail(double w, double t, std::size_t m) {
  if (w == 0.0) {
    return {std::pow(t, 1.0 - static_cast<double>(m)) / static_cast<double>(m - 1), 0.0};
  }
  TailPair p{-cosine_integral(w * t), std::numbers::pi / 2.0 - sine_integral(w * t)};
  const double cw = std::cos(w * t);
  const double sw = std::sin(w * t);
  for (std::size_t k = 2; k <= m; ++k) {
    const double km1 = static_cast<double>(k - 1);
    const double pw = std::pow(t, 1.0 - static_cast<double>(k)) / km1;
    const TailPair next{cw * pw - w / km1 * p.s, sw * pw + w / km1 * p.c};
    p = next;
  }
  return p;
}

// Integral over [T, inf) of prod_i sin(a_i t) / t^m, m = a.size() >= 2.
double sine_product_tail(const std::vector<double>& a, double t) {
  const std::size_t m = a.size();
  const bool even = m % 2 == 0;
  const std::size_t half = even ? m / 2 : (m - 1) / 2;
  const double sign = half % 2 == 0 ? 1.0 : -1.0;
  const double scale = sign * std::ldexp(1.0, 1 - static_cast<int>(m));
  double total = 0.0;
  const std::uint64_t patterns = std::uint64_t{1} << (m - 1);
  for (std::uint64_t mask = 0; mask < patterns; ++mask) {
    double omega = a[0];
    double parity = 1.0;
    for (std::size_t i = 1; i < m; ++i) {
      if (mask >> (i - 1) & 1u) {
        omega -= a[i];
        parity = -parity;
      } else {
        omega += a[i];
      }
    }
    const TailPair p = oscillatory_tail(std::abs(omega), t, m);
    if (even) {
      total += parity * p.c;
    } else {
      total += parity * std::copysign(1.0, omega) * p.s;
    }
  }
  return scale * total;
}

}  // namespace

QuadratureEstimate polya_quadrature(const WeightVector& a, const QuadratureConfig& cfg) {
  const std::vector<double> w = a.nonzero_magnitudes();
  const std::size_t m = w.size();
  if (m < 2) throw InvalidInput("the sinc product needs two nonzero weights to be integrable");
  if (m > kMaxClosedFormWeights) throw InvalidInput("too many nonzero weights for the tail expansion");
  if (!(cfg.tail_bound_target > 0.0) || cfg.truncation < 0.0 || cfg.max_panels == 0) {
    throw InvalidInput("invalid quadrature configuration");
  }
  double sum = 0.0;
  double prod = 1.0;
  for (double x : w) {
    sum += x;
    prod *= x;
  }
  const double width = std::numbers::pi / sum;
  const double md = static_cast<double>(m);
  auto bound_at = [&](double t) { return 2.0 * std::pow(t, 1.0 - md) / ((md - 1.0) * prod); };

  double t = cfg.truncation;
  if (t == 0.0) {
    t = std::pow(2.0 / ((md - 1.0) * prod * cfg.tail_bound_target), 1.0 / (md - 1.0));
    t = std::min(t, width * static_cast<double>(cfg.max_panels));
  }
  const auto panels = static_cast<std::size_t>(std::max(1.0, std::ceil(t / width)));
  t = width * static_cast<double>(panels);

  const WeightVector nz(w);
  auto integrand = [&](double x) { return characteristic_function(nz, x); };
  double body = 0.0;
  double comp = 0.0;
  for (std::size_t j = 0; j < panels; ++j) {
    const double lo = width * static_cast<double>(j);
    const double y = panel_integral(cfg.panel_order, integrand, lo, lo + width) - comp;
    const double next = body + y;
    comp = (next - body) - y;
    body = next;
  }

  const GslErrorsAsStatus guard;
  const double tail = sine_product_tail(w, t) / prod;

  QuadratureEstimate est;
  est.truncation = t;
  est.panels = panels;
  est.tail_bound = bound_at(t);
  est.tail_correction = 2.0 * tail;
  est.value = 2.0 * (body + tail);
  return est;
}

MonteCarloEstimate monte_carlo_section(const WeightVector& a, double r, std::uint64_t samples, double eps,
                                       std::uint64_t rng_seed) {
  if (!(eps > 0.0)) throw InvalidInput("slab half-width must be positive");
  if (samples == 0) throw InvalidInput("samples must be positive");
  const std::size_t n = a.dimension();
  const std::uint64_t batches = (samples + kBatchSize - 1) / kBatchSize;
  std::vector<std::uint64_t> hits(batches, 0);
  parallel_for(batches, [&](std::size_t b) {
    std::mt19937_64 gen(mix_seed(rng_seed, b));
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    const std::uint64_t begin = b * kBatchSize;
    const std::uint64_t count = std::min(kBatchSize, samples - begin);
    std::uint64_t local = 0;
    for (std::uint64_t s = 0; s < count; ++s) {
      double dot = 0.0;
      for (std::size_t i = 0; i < n; ++i) dot += a[i] * u(gen);
      if (std::abs(dot - r) <= eps) ++local;
    }
    hits[b] = local;
  });
  std::uint64_t total = 0;
  for (std::uint64_t h : hits) total += h;

  const double nd = static_cast<double>(samples);
  const double p = static_cast<double>(total) / nd;
  const double scale = std::ldexp(a.norm(), static_cast<int>(n)) / (2.0 * eps);
  const double var = samples > 1 ? p * (1.0 - p) * nd / (nd - 1.0) : 0.0;
  MonteCarloEstimate est;
  est.mean = scale * p;
  est.std_error = scale * std::sqrt(var / nd);
  est.samples = samples;
  est.slab_halfwidth = eps;
  return est;
}

double default_slab_halfwidth(const WeightVector& a) {
  double sum = 0.0;
  for (double x : a.coords()) sum += std::abs(x);
  return 0.01 * sum;
}

double clt_diagonal_asymptote(std::size_t n) {
  if (n < 2) throw InvalidInput("clt_diagonal_asymptote needs n >= 2");
  return std::sqrt(6.0 / std::numbers::pi) * std::ldexp(1.0, static_cast<int>(n) - 1);
}

}  // namespace cubesect
