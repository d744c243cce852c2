#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <vector>

#include "cubesect/criticality.hpp"
#include "cubesect/section.hpp"
#include "oracles.hpp"

using namespace cubesect;

namespace {

const double kPi = std::numbers::pi;

std::vector<double> tangential(const std::vector<double>& g, const std::vector<double>& a) {
  double dot = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) dot += g[i] * a[i];
  std::vector<double> t(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) t[i] = g[i] - dot * a[i];
  return t;
}

double max_abs(const std::vector<double>& v) {
  double m = 0.0;
  for (double x : v) m = std::max(m, std::abs(x));
  return m;
}

const std::vector<std::vector<double>> kCriticalSet{
    {0, 0, 1}, {0, 1, 1}, {1, 1, 1}, {0, 0, 0, 1}, {0, 0, 1, 1}, {0, 1, 1, 1}, {1, 1, 1, 1}, {1, 1, 2, 2}};

}  // namespace

TEST_CASE("Polya integral examples") {
  CHECK(polya_integral(WeightVector({1.0})) == doctest::Approx(kPi).epsilon(1e-15));
  CHECK(polya_integral(WeightVector({1.0, 1.0})) == doctest::Approx(kPi).epsilon(1e-15));
  CHECK(polya_integral(WeightVector({4.0, 0.0, 0.0})) == doctest::Approx(kPi / 4.0).epsilon(1e-15));
  CHECK(polya_integral(WeightVector({1, 1, 2, 2})) == doctest::Approx(5.0 * kPi / 12.0).epsilon(1e-14));
  const WeightVector a({0.3, 0.7, 1.1});
  CHECK(polya_integral(a.scaled(3.0)) == doctest::Approx(polya_integral(a) / 3.0).epsilon(1e-14));
}

TEST_CASE("gradient is parallel to a at critical directions") {
  for (const auto& v : kCriticalSet) {
    const WeightVector a = WeightVector(v).normalized();
    const auto g = grad_polya_integral(a);
    CHECK(max_abs(tangential(g, {a.coords().begin(), a.coords().end()})) <= 1e-12);
  }
}

TEST_CASE("gradient matches central finite differences") {
  std::mt19937_64 gen(59);
  auto I = [](const std::vector<double>& x) { return polya_integral(WeightVector(x)); };
  double worst = 0.0;
  for (int trial = 0; trial < 100; ++trial) {
    const auto u = oracle::random_unit(gen, 2 + trial % 5);
    const auto g = grad_polya_integral(WeightVector(u));
    const auto fd = oracle::fd_gradient(I, u, 1e-5);
    double num = 0.0;
    double den = 0.0;
    for (std::size_t i = 0; i < u.size(); ++i) {
      num = std::max(num, std::abs(g[i] - fd[i]));
      den = std::max(den, std::abs(fd[i]));
    }
    worst = std::max(worst, num / den);
  }
  CHECK(worst <= 1e-5);
}

TEST_CASE("Euler identity") {
  std::mt19937_64 gen(61);
  for (int trial = 0; trial < 200; ++trial) {
    auto u = oracle::random_unit(gen, 1 + trial % 8);
    if (trial % 5 == 0 && u.size() > 2) u[0] = 0.0;
    const WeightVector a = WeightVector(u).normalized();
    const auto g = grad_polya_integral(a);
    double s = 0.0;
    for (std::size_t k = 0; k < u.size(); ++k) s += a[k] * g[k];
    CHECK(std::abs(s + polya_integral(a)) <= 1e-10);
  }
}

TEST_CASE("gradient vanishes along zero coordinates") {
  const auto g = grad_polya_integral(WeightVector({0.0, 0.6, 0.8}));
  CHECK(g[0] == 0.0);
}

TEST_CASE("criticality residual examples") {
  const auto r = criticality_residuals(WeightVector({1, 1, 2, 2}).normalized());
  CHECK(r.max_residual <= 1e-10);
  CHECK(r.verdict == Verdict::critical);
  CHECK(r.interior);
  const auto d = criticality_residuals(WeightVector::diagonal(3, 3));
  CHECK(d.max_residual <= 1e-10);
  CHECK(d.verdict == Verdict::critical);
  const auto p = criticality_residuals(WeightVector({0.6, 0.5, 0.5, 0.5}).normalized());
  CHECK(p.max_residual > 1e-3);
  CHECK(p.verdict == Verdict::not_critical);
  CHECK(criticality_residuals(WeightVector({0, 0, 3})).verdict == Verdict::degenerate_min);
  CHECK(criticality_residuals(WeightVector({0, 2, 2})).verdict == Verdict::degenerate_max);
}

TEST_CASE("lambda and mu") {
  std::mt19937_64 gen(67);
  for (int trial = 0; trial < 50; ++trial) {
    const auto u = oracle::random_unit(gen, 2 + trial % 6);
    const auto r = criticality_residuals(WeightVector(u));
    const double n = static_cast<double>(u.size());
    CHECK(r.lambda == -r.sigma);
    CHECK(r.mu == doctest::Approx(std::pow(2.0, n - 2) * r.sigma / ((n - 1) * kPi)).epsilon(1e-12));
    CHECK(r.verdict == (r.max_residual <= r.tolerance ? Verdict::critical : Verdict::not_critical));
  }
}

TEST_CASE("least-squares multiplier at critical points equals -sigma") {
  for (const auto& v : kCriticalSet) {
    const WeightVector a = WeightVector(v).normalized();
    if (is_degenerate_direction(a)) continue;
    const auto g = grad_polya_integral(a);
    double num = 0.0;
    double den = 0.0;
    for (std::size_t k = 0; k < v.size(); ++k) {
      num += g[k] * a[k];
      den += a[k] * a[k];
    }
    const double lambda = num / den;
    CHECK(lambda == doctest::Approx(-sigma(a)).epsilon(1e-8));
    double misfit = 0.0;
    for (std::size_t k = 0; k < v.size(); ++k) misfit = std::max(misfit, std::abs(g[k] - lambda * a[k]));
    CHECK(misfit <= 1e-8);
  }
}

TEST_CASE("residual verdict agrees with the tangential gradient test") {
  std::mt19937_64 gen(71);
  int agree = 0;
  int total = 0;
  auto check_one = [&](const std::vector<double>& u) {
    const WeightVector a = WeightVector(u).normalized();
    if (is_degenerate_direction(a)) return;
    const auto rep = criticality_residuals(a);
    const auto t = tangential(grad_polya_integral(a), {a.coords().begin(), a.coords().end()});
    const bool tangential_critical = max_abs(t) <= 1e-8;
    ++total;
    if (tangential_critical == (rep.verdict == Verdict::critical)) ++agree;
  };
  for (const auto& v : kCriticalSet) check_one(v);
  for (int trial = 0; trial < 1000; ++trial) check_one(oracle::random_unit(gen, 3 + trial % 4));
  CHECK(agree == total);
}

TEST_CASE("residuals are invariant under signed permutations") {
  std::mt19937_64 gen(73);
  for (int trial = 0; trial < 30; ++trial) {
    auto u = oracle::random_unit(gen, 3 + trial % 4);
    auto r1 = criticality_residuals(WeightVector(u)).residuals;
    auto p = u;
    std::shuffle(p.begin(), p.end(), gen);
    p[0] = -p[0];
    auto r2 = criticality_residuals(WeightVector(p)).residuals;
    std::sort(r1.begin(), r1.end());
    std::sort(r2.begin(), r2.end());
    for (std::size_t i = 0; i < r1.size(); ++i) CHECK(r1[i] == doctest::Approx(r2[i]).epsilon(1e-12).scale(1.0));
  }
}

TEST_CASE("cone balance") {
  const auto d = theorem1_balance(WeightVector::diagonal(3, 3));
  for (double q : d.cone_over_one_minus_ak2) CHECK(q == doctest::Approx(3.0 * std::sqrt(3.0) / 4.0).epsilon(1e-14));
  CHECK(d.spread <= 1e-14);
  const WeightVector w = WeightVector({1, 1, 2, 2}).normalized();
  const auto b = theorem1_balance(w);
  CHECK(b.spread <= 1e-10);
  CHECK(b.mu_hat == doctest::Approx(criticality_residuals(w).mu).epsilon(1e-12));
  CHECK(theorem1_balance(WeightVector({1, 2, 3}).normalized()).spread > 1e-3);
  CHECK_THROWS(theorem1_balance(WeightVector({0, 1, 1})));
  CHECK_THROWS(theorem1_balance(WeightVector({0, 0, 1})));
}

TEST_CASE("interior condition") {
  CHECK(interior_condition(WeightVector({1, 1, 1})));
  CHECK_FALSE(interior_condition(WeightVector({1, 1, 2})));
  CHECK(interior_condition(WeightVector({1, 1, 2, 2})));
  CHECK(interior_condition(WeightVector({-1, 1, -2, 2})));
}
