#include "cubesect/casework.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <boost/math/tools/roots.hpp>
#include <cmath>
#include <numbers>
#include <optional>
#include <tuple>

#include "cubesect/density.hpp"
#include "cubesect/error.hpp"

namespace cubesect {

namespace {

constexpr double kBoundaryTol = 1e-12;
constexpr double kUnitTol = 1e-9;
constexpr double kNewtonTol = 1e-13;
constexpr double kRootMergeTol = 1e-9;
constexpr int kGridPerAxis = 20;
// Newton creeps linearly toward the boundary root (0, 1/sqrt2, 1/sqrt2) of the
// unequal system; such iterates are not positive roots.
constexpr double kPositiveFloor = 1e-6;

void require_quad(const Quad& b) {
  for (double x : b) {
    if (!std::isfinite(x)) throw InvalidInput("case analysis needs finite coordinates");
  }
  if (!(b[0] > 0.0 && b[0] <= b[1] && b[2] > 0.0 && b[2] <= b[3])) {
    throw InvalidInput("case analysis needs 0 < b1 <= b2 and 0 < b3 <= b4");
  }
}

double sq(double x) { return x * x; }

double case_a_poly(const Quad& b) {
  const auto [b1, b2, b3, b4] = b;
  return sq(b1 + b2 + b3 - b4) * (1.0 + b1 * b2) - 8.0 * b1 * b2 * b3 * (b1 + b2);
}

double case_b_poly(const Quad& b) {
  const auto [b1, b2, b3, b4] = b;
  return (b2 * b2 - b1 * b1) * (1.0 + b2 * b2 - 2.0 * b2 * (b3 + b4)) - (1.0 - b2 * b2) * sq(b3 - b4);
}

double case_c_poly(const Quad& b) {
  const auto [b1, b2, b3, b4] = b;
  (void)b3;
  return b1 + b2 - b4 - b1 * b2 * b2 - b1 * b1 * b2 - b1 * b2 * b4;
}

double case_d_poly(const Quad& b) {
  const auto [b1, b2, b3, b4] = b;
  return 8.0 * b1 * b3 * b4 * (1.0 - b2 * b2) -
         sq(b1 - b2 + b3 + b4) * (b1 + b2 - b1 * b1 * b2 - b1 * b2 * b2);
}

bool case_a_in_range(const Quad& b) { return b[0] + b[1] >= b[3] - b[2] - kBoundaryTol; }
bool case_d_in_range(const Quad& b) { return b[1] - b[0] <= b[2] + b[3] + kBoundaryTol; }

// Damped Newton from x; nullopt if it fails to reach kNewtonTol.
template <int N, class System, class Jacobian>
std::optional<Eigen::Matrix<double, N, 1>> newton(Eigen::Matrix<double, N, 1> x, System f, Jacobian jac) {
  using Vec = Eigen::Matrix<double, N, 1>;
  Vec r = f(x);
  for (int it = 0; it < 100; ++it) {
    if (r.template lpNorm<Eigen::Infinity>() <= kNewtonTol) return x;
    const Vec step = jac(x).colPivHouseholderQr().solve(-r);
    if (!step.allFinite()) return std::nullopt;
    double t = 1.0;
    bool accepted = false;
    for (int h = 0; h <= 30; ++h, t *= 0.5) {
      const Vec trial = x + t * step;
      const Vec rt = f(trial);
      if (rt.allFinite() && rt.norm() < r.norm()) {
        x = trial;
        r = rt;
        accepted = true;
        break;
      }
    }
    if (!accepted) break;
  }
  if (r.template lpNorm<Eigen::Infinity>() <= kNewtonTol) return x;
  return std::nullopt;
}

double grid_point(int i) { return (i + 0.5) / kGridPerAxis; }

}  // namespace

QuadResidual pairwise_balance(const WeightVector& a, std::size_t i, std::size_t j) {
  const std::size_t n = a.dimension();
  if (n < 3) throw InvalidInput("pairwise balance needs n >= 3");
  if (i >= n || j >= n || i == j) throw InvalidInput("pairwise balance needs two distinct valid indices");
  const WeightVector u = a.normalized();
  const double ai = std::abs(u[i]);
  const double aj = std::abs(u[j]);
  if (ai == 0.0 || aj == 0.0) throw InvalidInput("pairwise balance needs a_i, a_j nonzero");
  std::vector<double> rest;
  for (std::size_t k = 0; k < n; ++k) {
    if (k != i && k != j) rest.push_back(u[k]);
  }
  const UniformSum s(rest);
  QuadResidual q;
  q.lhs = (1.0 - aj * aj) / aj * (s.cdf(ai + aj) - s.cdf(ai - aj));
  q.rhs = (1.0 - ai * ai) / ai * (s.cdf(aj + ai) - s.cdf(aj - ai));
  q.residual = q.lhs - q.rhs;
  return q;
}

double n3_cubic(double a1, double a2, double a3) {
  return a1 + a2 - a3 - a1 * a2 * a2 - a1 * a1 * a2 - a1 * a2 * a3;
}

double n3_relation(const WeightVector& a) {
  if (a.dimension() != 3) throw InvalidInput("n3_relation needs a 3-vector");
  const double a1 = a[0], a2 = a[1], a3 = a[2];
  if (!(0.0 < a1 && a1 <= a2 && a2 <= a3 && a3 < 1.0)) {
    throw InvalidInput("n3_relation needs 0 < a1 <= a2 <= a3 < 1");
  }
  if (std::abs(a.norm() - 1.0) > 1e-12) throw InvalidInput("n3_relation needs a unit vector");
  if (!(a3 < a1 + a2)) throw InvalidInput("n3_relation needs a3 < a1 + a2");
  return n3_cubic(a1, a2, a3);
}

double n3_cyclic_sum(double a1, double a2, double a3) {
  return n3_cubic(a1, a2, a3) + n3_cubic(a1, a3, a2) + n3_cubic(a2, a3, a1);
}

double n3_cyclic_product(double a1, double a2, double a3) {
  return (a1 + a2 + a3) * (1.0 - a1 * a2 - a1 * a3 - a2 * a3);
}

double n3_identity_check(const WeightVector& a) {
  if (a.dimension() != 3) throw InvalidInput("n3_identity_check needs a 3-vector");
  const double a1 = a[0], a2 = a[1], a3 = a[2];
  return sq(a1 - a2) + sq(a1 - a3) + sq(a2 - a3) - 2.0 * (1.0 - a1 * a2 - a1 * a3 - a2 * a3);
}

double n3_two_equal_relation(double a1, double a2) { return a1 * (1.0 - 2.0 * a2 * a2 - a1 * a2); }

const char* to_string(N4Case c) {
  switch (c) {
    case N4Case::A: return "A";
    case N4Case::B: return "B";
    case N4Case::C: return "C";
    case N4Case::D: return "D";
  }
  return "?";
}

bool CaseTag::contains(N4Case c) const { return std::find(cases.begin(), cases.end(), c) != cases.end(); }

CaseTag n4_case_dispatch(const Quad& b) {
  require_quad(b);
  CaseTag tag;
  tag.sum_gap = (b[0] + b[1]) - (b[2] + b[3]);
  tag.cross_gap = (b[0] + b[3]) - (b[1] + b[2]);
  const bool sum_le = tag.sum_gap <= kBoundaryTol;
  const bool sum_ge = tag.sum_gap >= -kBoundaryTol;
  const bool cross_ge = tag.cross_gap >= -kBoundaryTol;
  const bool cross_le = tag.cross_gap <= kBoundaryTol;
  if (sum_le && cross_ge) tag.cases.push_back(N4Case::A);
  if (sum_le && cross_le) tag.cases.push_back(N4Case::B);
  if (sum_ge && cross_ge) tag.cases.push_back(N4Case::C);
  if (sum_ge && cross_le) tag.cases.push_back(N4Case::D);
  return tag;
}

double n4_case_residual(const Quad& b, N4Case tag) {
  const CaseTag dispatch = n4_case_dispatch(b);
  const double len = std::sqrt(b[0] * b[0] + b[1] * b[1] + b[2] * b[2] + b[3] * b[3]);
  if (std::abs(len - 1.0) > kUnitTol) throw InvalidInput("case analysis needs a unit 4-vector");
  if (!dispatch.contains(tag)) throw InvalidInput("sign conditions do not select this case");
  switch (tag) {
    case N4Case::A:
      if (!case_a_in_range(b)) throw InvalidInput("case A polynomial needs b1 + b2 >= b4 - b3");
      return case_a_poly(b);
    case N4Case::B: return case_b_poly(b);
    case N4Case::C: return case_c_poly(b);
    case N4Case::D:
      if (!case_d_in_range(b)) throw InvalidInput("case D polynomial needs b2 - b1 <= b3 + b4");
      return case_d_poly(b);
  }
  return 0.0;
}

double n4_case_a_factored(const Quad& b) { return (b[1] - b[0]) * case_a_poly(b); }

double n4_balance_normalized(const Quad& b, N4Case tag) {
  const CaseTag dispatch = n4_case_dispatch(b);
  if (!dispatch.contains(tag)) throw InvalidInput("sign conditions do not select this case");
  const auto [b1, b2, b3, b4] = b;
  switch (tag) {
    case N4Case::A:
      // Both integration windows inside the plateau when b1 + b2 < b4 - b3.
      if (!case_a_in_range(b)) return 8.0 * b1 * b2 * b3 * (b1 - b2) * (b1 + b2);
      return n4_case_a_factored(b);
    case N4Case::B: return 2.0 * b1 * case_b_poly(b);
    case N4Case::C: return 4.0 * b3 * (b2 - b1) * case_c_poly(b);
    case N4Case::D:
      // Window [b2 - b1, b2 + b1] beyond the support when b2 - b1 > b3 + b4.
      if (!case_d_in_range(b)) return 8.0 * b1 * b3 * b4 * (1.0 - b2 * b2);
      return case_d_poly(b);
  }
  return 0.0;
}

double n4_balance_direct(const Quad& b) {
  require_quad(b);
  const auto [b1, b2, b3, b4] = b;
  const std::array<double, 2> tail{b3, b4};
  const UniformSum s(tail);
  const double p = s.cdf(b1 + b2);
  const double q = s.cdf(b2 - b1);
  const double lhs = (1.0 - b2 * b2) / b2 * (p + q - 1.0);
  const double rhs = (1.0 - b1 * b1) / b1 * (p - q);
  return 8.0 * b1 * b2 * b3 * b4 * (lhs - rhs);
}

std::vector<UnequalRoot> solve_n4_system_unequal() {
  using Vec = Eigen::Vector3d;
  auto f = [](const Vec& x) {
    const double a1 = x[0], a3 = x[1], a4 = x[2];
    return Vec((a1 + a3 + a4) * a4 - 1.0, 2.0 * a1 * a1 + a3 * a3 + a4 * a4 - 1.0,
               sq(2.0 * a1 + a3 - a4) * (1.0 + a1 * a3) - 8.0 * a1 * a1 * a3 * (a1 + a3));
  };
  auto jac = [](const Vec& x) {
    const double a1 = x[0], a3 = x[1], a4 = x[2];
    const double u = 2.0 * a1 + a3 - a4;
    const double v = 1.0 + a1 * a3;
    Eigen::Matrix3d j;
    j << a4, a4, a1 + a3 + 2.0 * a4,
        4.0 * a1, 2.0 * a3, 2.0 * a4,
        4.0 * u * v + u * u * a3 - 8.0 * a3 * (3.0 * a1 * a1 + 2.0 * a1 * a3),
        2.0 * u * v + u * u * a1 - 8.0 * a1 * a1 * (a1 + 2.0 * a3),
        -2.0 * u * v;
    return j;
  };
  std::vector<UnequalRoot> roots;
  for (int i = 0; i < kGridPerAxis; ++i) {
    for (int j = 0; j < kGridPerAxis; ++j) {
      for (int k = 0; k < kGridPerAxis; ++k) {
        const auto x = newton<3>(Vec(grid_point(i), grid_point(j), grid_point(k)), f, jac);
        if (!x || (*x).minCoeff() <= kPositiveFloor) continue;
        const bool seen = std::any_of(roots.begin(), roots.end(), [&](const UnequalRoot& r) {
          return (Vec(r.a1, r.a3, r.a4) - *x).lpNorm<Eigen::Infinity>() <= kRootMergeTol;
        });
        if (seen) continue;
        const Vec res = f(*x);
        roots.push_back({(*x)[0], (*x)[1], (*x)[2], {res[0], res[1], res[2]}});
      }
    }
  }
  std::sort(roots.begin(), roots.end(), [](const UnequalRoot& l, const UnequalRoot& r) {
    return std::tie(l.a1, l.a3, l.a4) < std::tie(r.a1, r.a3, r.a4);
  });
  return roots;
}

std::vector<TripleRoot> solve_n4_system_triple() {
  using Vec = Eigen::Vector2d;
  auto f = [](const Vec& x) {
    const double a1 = x[0], a4 = x[1];
    return Vec(3.0 * a1 * a1 + a4 * a4 - 1.0,
               8.0 * a1 * a1 * a1 * (1.0 - a4 * a4) - sq(3.0 * a1 - a4) * (a1 + a4) * (1.0 - a1 * a4));
  };
  auto jac = [](const Vec& x) {
    const double a1 = x[0], a4 = x[1];
    const double w = 3.0 * a1 - a4;
    const double p = a1 + a4;
    const double q = 1.0 - a1 * a4;
    Eigen::Matrix2d j;
    j << 6.0 * a1, 2.0 * a4,
        24.0 * a1 * a1 * (1.0 - a4 * a4) - (6.0 * w * p * q + w * w * q - w * w * p * a4),
        -16.0 * a1 * a1 * a1 * a4 - (-2.0 * w * p * q + w * w * q - w * w * p * a1);
    return j;
  };
  std::vector<TripleRoot> roots;
  for (int i = 0; i < kGridPerAxis; ++i) {
    for (int k = 0; k < kGridPerAxis; ++k) {
      const auto x = newton<2>(Vec(grid_point(i), grid_point(k)), f, jac);
      if (!x || (*x).minCoeff() <= kPositiveFloor) continue;
      const bool seen = std::any_of(roots.begin(), roots.end(), [&](const TripleRoot& r) {
        return (Vec(r.a1, r.a4) - *x).lpNorm<Eigen::Infinity>() <= kRootMergeTol;
      });
      if (seen) continue;
      const Vec res = f(*x);
      roots.push_back({(*x)[0], (*x)[1], {res[0], res[1]}, (*x)[0] > kTripleLowerBound});
    }
  }
  std::sort(roots.begin(), roots.end(), [](const TripleRoot& l, const TripleRoot& r) { return l.a1 > r.a1; });
  return roots;
}

double gaussian_heuristic_G(double r, double s) {
  if (!(r > 0.0 && r < 1.0)) throw InvalidInput("gaussian_heuristic_G needs 0 < r < 1");
  const double lo = s - 2.0 * r;
  const double k = 1.0 / std::numbers::sqrt2;
  // Pick the erfc tail on the side away from the mean to avoid cancellation.
  double mass;
  if (lo >= 0.0) {
    mass = 0.5 * (std::erfc(lo * k) - std::erfc(s * k));
  } else if (s <= 0.0) {
    mass = 0.5 * (std::erfc(-s * k) - std::erfc(-lo * k));
  } else {
    mass = 0.5 * (std::erf(s * k) - std::erf(lo * k));
  }
  return (1.0 - r * r) / r * mass;
}

std::vector<double> gaussian_balance_roots(double a1) {
  if (!(a1 > 0.0 && a1 < 1.0)) throw InvalidInput("gaussian_balance_roots needs 0 < a1 < 1");
  auto h = [a1](double a2) { return gaussian_heuristic_G(a1, a1 + a2) - gaussian_heuristic_G(a2, a1 + a2); };
  constexpr int kSteps = 4000;
  std::vector<double> roots;
  auto add = [&](double x) {
    for (double r : roots) {
      if (std::abs(r - x) <= kRootMergeTol) return;
    }
    roots.push_back(x);
  };
  double x0 = 1.0 / (kSteps + 1);
  double h0 = h(x0);
  if (h0 == 0.0) add(x0);
  for (int i = 2; i <= kSteps; ++i) {
    const double x1 = static_cast<double>(i) / (kSteps + 1);
    const double h1 = h(x1);
    if (h1 == 0.0) {
      add(x1);
    } else if (h0 != 0.0 && (h0 < 0.0) != (h1 < 0.0)) {
      std::uintmax_t iters = 200;
      const auto bracket = boost::math::tools::toms748_solve(
          h, x0, x1, h0, h1, boost::math::tools::eps_tolerance<double>(52), iters);
      add(0.5 * (bracket.first + bracket.second));
    }
    x0 = x1;
    h0 = h1;
  }
  // The trivial root a2 = a1 is exact; snap the bracketed estimate onto it.
  for (double& r : roots) {
    if (std::abs(r - a1) <= 1e-9) r = a1;
  }
  std::sort(roots.begin(), roots.end());
  return roots;
}

}  // namespace cubesect
