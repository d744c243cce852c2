#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>
#include <vector>

#include "cubesect/criticality.hpp"
#include "cubesect/error.hpp"
#include "cubesect/oracles.hpp"
#include "cubesect/section.hpp"
#include "oracles.hpp"

using namespace cubesect;

namespace {

const double kPi = std::numbers::pi;

}  // namespace

TEST_CASE("quadrature examples") {
  CHECK(std::abs(polya_quadrature(WeightVector({1, 1})).value - kPi) <= 1e-8);
  const auto d = polya_quadrature(WeightVector::diagonal(3, 3));
  CHECK(std::abs(d.value - 3 * std::sqrt(3.0) * kPi / 4) <= 1e-8);
  const WeightVector w({1, 1, 2, 2});
  CHECK(std::abs(polya_quadrature(w).value - polya_integral(w)) <= 1e-7);
  CHECK_THROWS_AS(polya_quadrature(WeightVector({0, 2, 0})), InvalidInput);
}

TEST_CASE("quadrature tail bound is honored") {
  std::mt19937_64 gen(107);
  for (int trial = 0; trial < 10; ++trial) {
    const auto u = oracle::random_unit(gen, 3 + trial % 4);
    const WeightVector a(u);
    const auto auto_t = polya_quadrature(a);
    QuadratureConfig twice;
    twice.truncation = 2 * auto_t.truncation;
    twice.max_panels = 1000000;
    const auto doubled = polya_quadrature(a, twice);
    CHECK(std::abs(doubled.value - auto_t.value) <= std::max(1e-9, auto_t.tail_bound));
    CHECK(std::abs(doubled.value - polya_integral(a)) <= 1e-7);
  }
}

TEST_CASE("quadrature without the tail correction stays within the tail bound") {
  const WeightVector a({0.5, 0.6, 0.7, 0.8, 0.9});
  const auto q = polya_quadrature(a);
  CHECK(std::abs(q.tail_correction) <= q.tail_bound);
  CHECK(std::abs(q.value - q.tail_correction - polya_integral(a)) <= q.tail_bound + 1e-9);
}

TEST_CASE("Monte Carlo examples") {
  const auto e = monte_carlo_section(WeightVector({1, 0, 0}), 0.0, 1000000, 0.01, 1);
  CHECK(std::abs(e.mean - 4.0) <= 3 * e.std_error);
  const WeightVector d2 = WeightVector({1, 1}).normalized();
  const auto m = monte_carlo_section(d2, 0.0, 1000000, default_slab_halfwidth(d2), 2);
  CHECK(std::abs(m.mean - 2 * std::numbers::sqrt2) <= 3 * m.std_error);
  const WeightVector w = WeightVector({1, 1, 2, 2}).normalized();
  const auto mc = monte_carlo_section(w, 0.0, 1000000, default_slab_halfwidth(w), 3);
  CHECK(std::abs(mc.mean - central_volume(w)) <= 3 * mc.std_error);
  CHECK(mc.samples == 1000000);
  CHECK(mc.slab_halfwidth == doctest::Approx(0.01 * 6 / std::sqrt(10.0)).epsilon(1e-15));
}

TEST_CASE("Monte Carlo is reproducible and checks its arguments") {
  const WeightVector a({0.3, 0.5, 0.8});
  const auto x = monte_carlo_section(a, 0.1, 200000, 0.01, 9);
  const auto y = monte_carlo_section(a, 0.1, 200000, 0.01, 9);
  CHECK(x.mean == y.mean);
  CHECK(x.std_error == y.std_error);
  CHECK_THROWS_AS(monte_carlo_section(a, 0.0, 1000, 0.0, 1), InvalidInput);
  CHECK_THROWS_AS(monte_carlo_section(a, 0.0, 0, 0.01, 1), InvalidInput);
}

TEST_CASE("Monte Carlo error decays like one over root samples") {
  const WeightVector a = WeightVector({1, 2, 3}).normalized();
  std::vector<double> lx;
  std::vector<double> ly;
  for (std::uint64_t n : {10000ULL, 100000ULL, 1000000ULL, 10000000ULL}) {
    const auto e = monte_carlo_section(a, 0.0, n, default_slab_halfwidth(a), 5);
    lx.push_back(std::log(static_cast<double>(n)));
    ly.push_back(std::log(e.std_error));
  }
  double mx = 0, my = 0;
  for (std::size_t i = 0; i < lx.size(); ++i) {
    mx += lx[i] / lx.size();
    my += ly[i] / ly.size();
  }
  double sxy = 0, sxx = 0;
  for (std::size_t i = 0; i < lx.size(); ++i) {
    sxy += (lx[i] - mx) * (ly[i] - my);
    sxx += (lx[i] - mx) * (lx[i] - mx);
  }
  CHECK(sxy / sxx == doctest::Approx(-0.5).epsilon(0.2));
}

TEST_CASE("Monte Carlo agrees with exact parallel sections off the centre") {
  std::mt19937_64 gen(109);
  int inside = 0;
  const int trials = 20;
  for (int trial = 0; trial < trials; ++trial) {
    const auto u = oracle::random_unit(gen, 3 + trial % 3);
    const WeightVector a(u);
    const double r = 0.3;
    const auto e = monte_carlo_section(a, r, 400000, 0.01, 100 + trial);
    if (std::abs(e.mean - parallel_section(a, r).volume) <= 3.5 * e.std_error) ++inside;
  }
  CHECK(inside >= trials - 1);
}

TEST_CASE("central limit asymptote for diagonal sections") {
  CHECK(clt_diagonal_asymptote(4) == doctest::Approx(std::sqrt(6 / kPi) * 8).epsilon(1e-15));
  const double v4 = central_volume(WeightVector::diagonal(4, 4));
  CHECK(std::abs(v4 / clt_diagonal_asymptote(4) - 1) <= 0.04);
  // Exact Irwin-Hall values at the centre, from rational arithmetic. The gap
  // shrinks like 0.15 / n and is still 1.5% at n = 10.
  const double v10 = central_volume(WeightVector::diagonal(10, 10));
  CHECK(v10 / std::ldexp(1.0, 9) == doctest::Approx(1.3611004953199382).epsilon(1e-12));
  CHECK(v10 / clt_diagonal_asymptote(10) - 1 == doctest::Approx(-0.015105974006613287).epsilon(1e-9));
  const double v12 = central_volume(WeightVector::diagonal(12, 12));
  CHECK(v12 / std::ldexp(1.0, 11) == doctest::Approx(1.364598186568728).epsilon(1e-12));
  CHECK(clt_diagonal_asymptote(2) == doctest::Approx(2 * std::sqrt(6 / kPi)).epsilon(1e-15));
  CHECK_THROWS_AS(clt_diagonal_asymptote(1), InvalidInput);
}
