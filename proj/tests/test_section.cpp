#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <vector>

#include "cubesect/error.hpp"
#include "cubesect/section.hpp"
#include "oracles.hpp"

using namespace cubesect;

namespace {

const double kSqrt2 = std::numbers::sqrt2;
const double kSqrt3 = std::sqrt(3.0);

bool interior(const std::vector<double>& a) {
  double s = 0.0;
  for (double x : a) s += std::abs(x);
  return std::all_of(a.begin(), a.end(), [&](double x) { return std::abs(x) < s - std::abs(x); });
}

}  // namespace

TEST_CASE("parallel section examples") {
  CHECK(parallel_section(WeightVector({1, 0, 0}), 0.0).volume == doctest::Approx(4.0).epsilon(1e-15));
  CHECK(parallel_section(WeightVector({1, 1}).normalized(), 0.0).volume == doctest::Approx(2 * kSqrt2).epsilon(1e-14));
  CHECK(parallel_section(WeightVector({1, 1, 1}), 0.0).volume == doctest::Approx(3 * kSqrt3).epsilon(1e-14));
  CHECK(oracle::cube_section_area({1, 1, 1}) == doctest::Approx(3 * kSqrt3).epsilon(1e-14));
}

TEST_CASE("facet-parallel slices are flagged degenerate") {
  const auto on_facet = parallel_section(WeightVector({2, 0, 0}), 2.0);
  CHECK(on_facet.degenerate);
  CHECK(on_facet.volume == doctest::Approx(4.0).epsilon(1e-15));
  CHECK_FALSE(parallel_section(WeightVector({2, 0, 0}), 1.0).degenerate);
  CHECK(parallel_section(WeightVector({2, 0, 0}), 3.0).volume == 0.0);
}

TEST_CASE("parallel sections in three dimensions match polygon areas") {
  std::mt19937_64 gen(23);
  std::uniform_real_distribution<double> ur(-1.0, 1.0);
  for (int trial = 0; trial < 200; ++trial) {
    const auto u = oracle::random_unit(gen, 3);
    const double s = std::abs(u[0]) + std::abs(u[1]) + std::abs(u[2]);
    const double r = trial % 2 ? 0.0 : ur(gen) * s;
    const double exact = parallel_section(WeightVector(u), r).volume;
    CHECK(exact == doctest::Approx(oracle::cube_section_area({u[0], u[1], u[2]}, r)).epsilon(1e-11).scale(1.0));
  }
}

TEST_CASE("central sections in four dimensions match slicing by polygon clipping") {
  CHECK(oracle::q4_central_section({1, 1, 2, 2}) == doctest::Approx(10.0 * std::sqrt(10.0) / 3.0).epsilon(1e-13));
  CHECK(central_volume(WeightVector({1, 1, 2, 2})) == doctest::Approx(10.0 * std::sqrt(10.0) / 3.0).epsilon(1e-13));
  CHECK(central_volume(WeightVector({1, 1, 1, 1})) == doctest::Approx(32.0 / 3.0).epsilon(1e-13));
  std::mt19937_64 gen(29);
  for (int trial = 0; trial < 100; ++trial) {
    auto u = oracle::random_unit(gen, 4);
    if (std::abs(u[3]) < 0.05) continue;
    CHECK(central_volume(WeightVector(u)) ==
          doctest::Approx(oracle::q4_central_section({u[0], u[1], u[2], u[3]})).epsilon(1e-11));
  }
}

TEST_CASE("central volume and sigma examples") {
  CHECK(central_volume(WeightVector({2, 0, 0})) == doctest::Approx(4.0).epsilon(1e-15));
  CHECK(central_volume(WeightVector({1, 1, 0, 0, 0})) == doctest::Approx(16 * kSqrt2).epsilon(1e-14));
  for (std::size_t n = 1; n <= 8; ++n) {
    CHECK(sigma(WeightVector::basis(0, n)) == doctest::Approx(std::numbers::pi).epsilon(1e-15));
  }
  CHECK(sigma(WeightVector({1, 1})) == doctest::Approx(kSqrt2 * std::numbers::pi).epsilon(1e-15));
  CHECK(sigma(WeightVector({3, 4})) == doctest::Approx(sigma(WeightVector({0.6, 0.8}))).epsilon(1e-15));
}

TEST_CASE("facet section volumes") {
  const WeightVector diag3 = WeightVector::diagonal(3, 3);
  // On x_3 = 1 the section is the hexagon edge from (-1, 0, 1) to (0, -1, 1).
  for (std::size_t k = 0; k < 3; ++k) CHECK(facet_section_volume(diag3, k).volume == doctest::Approx(kSqrt2).epsilon(1e-14));
  const auto flagged = facet_section_volume(WeightVector({1, 0, 0}), 0);
  CHECK(flagged.degenerate);
  CHECK(flagged.volume == 0.0);
  // The point {x_1 = 1, x_2 = -1} sits at the end of the reduced support.
  CHECK(facet_section_volume(WeightVector({1, 1}).normalized(), 0).volume == doctest::Approx(1.0).epsilon(1e-14));
  CHECK_THROWS_AS(facet_section_volume(diag3, 3), InvalidInput);
}

TEST_CASE("cone volumes match triangle areas in three dimensions") {
  const WeightVector diag3 = WeightVector::diagonal(3, 3);
  for (std::size_t k = 0; k < 3; ++k) {
    CHECK(cone_volume(diag3, k) == doctest::Approx(kSqrt3 / 2.0).epsilon(1e-14));
    CHECK(oracle::cube_cone_area({1 / kSqrt3, 1 / kSqrt3, 1 / kSqrt3}, k) == doctest::Approx(kSqrt3 / 2.0).epsilon(1e-14));
  }
  CHECK(cone_volume(WeightVector({1, 0, 0}), 1) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(oracle::cube_cone_area({1, 0, 0}, 1) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(cone_volume(WeightVector({1, 0, 0}), 0) == 0.0);

  std::mt19937_64 gen(31);
  int checked = 0;
  while (checked < 100) {
    auto u = oracle::random_unit(gen, 3);
    if (!interior(u)) continue;
    ++checked;
    for (std::size_t k = 0; k < 3; ++k) {
      CHECK(cone_volume(WeightVector(u), k) == doctest::Approx(oracle::cube_cone_area({u[0], u[1], u[2]}, k)).epsilon(1e-11));
    }
  }
}

TEST_CASE("cone volumes sum to half the section") {
  std::mt19937_64 gen(37);
  for (std::size_t n = 2; n <= 7; ++n) {
    for (int trial = 0; trial < 20; ++trial) {
      const WeightVector a(oracle::random_unit(gen, n));
      double sum = 0.0;
      for (std::size_t k = 0; k < n; ++k) sum += cone_volume(a, k);
      CHECK(std::abs(sum - central_volume(a) / 2.0) <= 1e-10);
    }
  }
}

TEST_CASE("slab identity") {
  const auto d2 = slab_identity_check(WeightVector({1, 1}).normalized(), 0);
  CHECK(d2.lhs == doctest::Approx(2 * kSqrt2).epsilon(1e-14));
  CHECK(d2.rhs == doctest::Approx(2 * kSqrt2).epsilon(1e-14));
  for (std::size_t n = 1; n <= 6; ++n) {
    const auto e = slab_identity_check(WeightVector::basis(0, n), 0);
    CHECK(e.lhs == doctest::Approx(std::ldexp(1.0, static_cast<int>(n) - 1)).epsilon(1e-14));
    CHECK(e.rhs == doctest::Approx(e.lhs).epsilon(1e-14));
  }
  const WeightVector w = WeightVector({1, 1, 2, 2}).normalized();
  for (std::size_t k = 0; k < 4; ++k) {
    const auto s = slab_identity_check(w, k);
    CHECK(std::abs(s.lhs - s.rhs) <= 1e-10);
  }
  std::mt19937_64 gen(41);
  for (int trial = 0; trial < 50; ++trial) {
    const auto u = oracle::random_unit(gen, 2 + trial % 6);
    for (std::size_t k = 0; k < u.size(); ++k) {
      const auto s = slab_identity_check(WeightVector(u), k);
      CHECK(std::abs(s.lhs - s.rhs) <= 1e-10);
    }
  }
  CHECK_THROWS_AS(slab_identity_check(WeightVector({0, 1, 1}), 0), InvalidInput);
}

TEST_CASE("signed permutation and scale invariance") {
  std::mt19937_64 gen(43);
  for (int trial = 0; trial < 50; ++trial) {
    auto u = oracle::random_unit(gen, 2 + trial % 7);
    const double v = central_volume(WeightVector(u));
    auto p = u;
    std::shuffle(p.begin(), p.end(), gen);
    for (double& x : p) x = (gen() & 1U) ? -x : x;
    CHECK(std::abs(central_volume(WeightVector(p)) - v) <= 1e-12 * v);
    for (double c : {0.5, 2.0, 10.0}) {
      CHECK(std::abs(central_volume(WeightVector(u).scaled(c)) - v) <= 1e-12 * v);
      CHECK(sigma(WeightVector(u).scaled(c)) == doctest::Approx(sigma(WeightVector(u))).epsilon(1e-12));
    }
  }
}

TEST_CASE("sections lie between the facet and the two-diagonal values") {
  std::mt19937_64 gen(47);
  for (std::size_t n = 2; n <= 8; ++n) {
    const double lo = std::ldexp(1.0, static_cast<int>(n) - 1);
    bool ok = true;
    for (int trial = 0; trial < 1000; ++trial) {
      const double v = central_volume(WeightVector(oracle::random_unit(gen, n)));
      ok = ok && v >= lo * (1 - 1e-12) && v <= kSqrt2 * lo * (1 + 1e-12);
    }
    CHECK(ok);
  }
}

TEST_CASE("parallel sections are even and nonincreasing in |r|") {
  std::mt19937_64 gen(53);
  for (int trial = 0; trial < 30; ++trial) {
    const auto u = oracle::random_unit(gen, 2 + trial % 6);
    const WeightVector a(u);
    double s = 0.0;
    for (double x : u) s += std::abs(x);
    double prev = parallel_section(a, 0.0).volume;
    for (int i = 1; i <= 100; ++i) {
      const double r = 1.05 * s * i / 100.0;
      const double here = parallel_section(a, r).volume;
      CHECK(here == doctest::Approx(parallel_section(a, -r).volume).epsilon(1e-12));
      CHECK(here <= prev + 1e-12);
      prev = here;
    }
  }
}

TEST_CASE("section report") {
  const auto rep = section_report(WeightVector({1, 1, 2, 2}));
  CHECK(rep.direction.norm() == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(rep.volume == doctest::Approx(10.0 * std::sqrt(10.0) / 3.0).epsilon(1e-13));
  CHECK(rep.cone_volumes.size() == 4);
  double sum = 0.0;
  for (double c : rep.cone_volumes) sum += c;
  CHECK(sum == doctest::Approx(rep.volume / 2.0).epsilon(1e-12));
  const auto flat = section_report(WeightVector({0, 1, 1}));
  CHECK(flat.degenerate_facets[0] == false);
  CHECK_FALSE(flat.slab_checks[0].has_value());
  CHECK(flat.slab_checks[1].has_value());
}
