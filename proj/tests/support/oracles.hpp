#pragma once

// Independent reference computations used only by the tests. None of them
// touches the library's density code.

#include <algorithm>
#include <array>
#include <cmath>
#include <functional>
#include <numeric>
#include <optional>
#include <random>
#include <vector>

namespace oracle {

using Vec2 = std::array<double, 2>;
using Vec3 = std::array<double, 3>;

// Density of sum a_i X_i at x by discrete convolution on a uniform grid of
// step h. Each box is discretized by the length of its overlap with every
// grid cell, so the kernels sum to one.
inline double grid_convolution_density(const std::vector<double>& a, double x, double h) {
  double half = 0.0;
  for (double w : a) half += std::abs(w);
  const auto cells = static_cast<long>(std::ceil(half / h)) + 1;
  const auto size = static_cast<std::size_t>(2 * cells + 1);
  std::vector<double> f(size, 0.0);
  f[static_cast<std::size_t>(cells)] = 1.0 / h;
  for (double w : a) {
    const double c = std::abs(w);
    const auto reach = static_cast<long>(std::ceil(c / h + 0.5));
    std::vector<double> kernel;
    for (long j = -reach; j <= reach; ++j) {
      const double lo = std::max(-c, (static_cast<double>(j) - 0.5) * h);
      const double hi = std::min(c, (static_cast<double>(j) + 0.5) * h);
      kernel.push_back(std::max(0.0, hi - lo) / (2.0 * c));
    }
    std::vector<double> g(size, 0.0);
    for (long i = 0; i < static_cast<long>(size); ++i) {
      double acc = 0.0;
      for (long j = -reach; j <= reach; ++j) {
        const long k = i - j;
        if (k >= 0 && k < static_cast<long>(size)) acc += f[static_cast<std::size_t>(k)] * kernel[static_cast<std::size_t>(j + reach)];
      }
      g[static_cast<std::size_t>(i)] = acc;
    }
    f = std::move(g);
  }
  const double pos = x / h + static_cast<double>(cells);
  const auto i0 = static_cast<long>(std::floor(pos));
  const double t = pos - static_cast<double>(i0);
  auto at = [&](long i) { return i >= 0 && i < static_cast<long>(size) ? f[static_cast<std::size_t>(i)] : 0.0; };
  return (1.0 - t) * at(i0) + t * at(i0 + 1);
}

// Area of the polygon Q_3 cap {<x,a> = r} from the plane's crossings with
// the twelve cube edges.
inline double cube_section_area(const Vec3& a, double r = 0.0) {
  std::vector<Vec3> pts;
  for (int axis = 0; axis < 3; ++axis) {
    const int u = (axis + 1) % 3;
    const int v = (axis + 2) % 3;
    for (double su : {-1.0, 1.0}) {
      for (double sv : {-1.0, 1.0}) {
        if (a[static_cast<std::size_t>(axis)] == 0.0) continue;
        Vec3 p{};
        p[static_cast<std::size_t>(u)] = su;
        p[static_cast<std::size_t>(v)] = sv;
        const double t = (r - a[static_cast<std::size_t>(u)] * su - a[static_cast<std::size_t>(v)] * sv) /
                         a[static_cast<std::size_t>(axis)];
        if (t < -1.0 - 1e-15 || t > 1.0 + 1e-15) continue;
        p[static_cast<std::size_t>(axis)] = t;
        pts.push_back(p);
      }
    }
  }
  if (pts.size() < 3) return 0.0;
  Vec3 c{};
  for (const auto& p : pts) {
    for (std::size_t i = 0; i < 3; ++i) c[i] += p[i] / static_cast<double>(pts.size());
  }
  const double len = std::sqrt(a[0] * a[0] + a[1] * a[1] + a[2] * a[2]);
  const Vec3 nrm{a[0] / len, a[1] / len, a[2] / len};
  const Vec3 ref{pts[0][0] - c[0], pts[0][1] - c[1], pts[0][2] - c[2]};
  const Vec3 ortho{nrm[1] * ref[2] - nrm[2] * ref[1], nrm[2] * ref[0] - nrm[0] * ref[2], nrm[0] * ref[1] - nrm[1] * ref[0]};
  auto angle = [&](const Vec3& p) {
    const Vec3 d{p[0] - c[0], p[1] - c[1], p[2] - c[2]};
    return std::atan2(d[0] * ortho[0] + d[1] * ortho[1] + d[2] * ortho[2], d[0] * ref[0] + d[1] * ref[1] + d[2] * ref[2]);
  };
  std::sort(pts.begin(), pts.end(), [&](const Vec3& p, const Vec3& q) { return angle(p) < angle(q); });
  Vec3 twice{};
  for (std::size_t i = 0; i < pts.size(); ++i) {
    const Vec3& p = pts[i];
    const Vec3& q = pts[(i + 1) % pts.size()];
    twice[0] += p[1] * q[2] - p[2] * q[1];
    twice[1] += p[2] * q[0] - p[0] * q[2];
    twice[2] += p[0] * q[1] - p[1] * q[0];
  }
  return 0.5 * std::abs(twice[0] * nrm[0] + twice[1] * nrm[1] + twice[2] * nrm[2]);
}

// Area of the triangle conv(0, S_k cap a^perp) in Q_3, S_k the facet x_k = 1.
inline double cube_cone_area(const Vec3& a, std::size_t k) {
  const std::size_t u = (k + 1) % 3;
  const std::size_t v = (k + 2) % 3;
  // Segment {x_k = 1, a_u x_u + a_v x_v = -a_k} clipped to the square.
  std::vector<Vec3> ends;
  for (std::size_t free : {u, v}) {
    const std::size_t fixed = free == u ? v : u;
    if (a[free] == 0.0) continue;
    for (double s : {-1.0, 1.0}) {
      const double t = (-a[k] - a[fixed] * s) / a[free];
      if (std::abs(t) > 1.0 + 1e-15) continue;
      Vec3 p{};
      p[k] = 1.0;
      p[fixed] = s;
      p[free] = t;
      if (std::none_of(ends.begin(), ends.end(), [&](const Vec3& q) {
            return std::abs(q[0] - p[0]) + std::abs(q[1] - p[1]) + std::abs(q[2] - p[2]) < 1e-14;
          })) {
        ends.push_back(p);
      }
    }
  }
  if (ends.size() < 2) return 0.0;
  const Vec3& p = ends[0];
  const Vec3& q = ends[1];
  const Vec3 x{p[1] * q[2] - p[2] * q[1], p[2] * q[0] - p[0] * q[2], p[0] * q[1] - p[1] * q[0]};
  return 0.5 * std::sqrt(x[0] * x[0] + x[1] * x[1] + x[2] * x[2]);
}

// Area of {x in [-1,1]^2 : lo <= b0 x0 + b1 x1 <= hi} by polygon clipping.
inline double square_strip_area(double b0, double b1, double lo, double hi) {
  std::vector<Vec2> poly{{-1, -1}, {1, -1}, {1, 1}, {-1, 1}};
  auto clip = [&](double s, double bound) {
    // keep s * (b.x) <= s * bound
    std::vector<Vec2> out;
    auto inside = [&](const Vec2& p) { return s * (b0 * p[0] + b1 * p[1]) <= s * bound; };
    for (std::size_t i = 0; i < poly.size(); ++i) {
      const Vec2& p = poly[i];
      const Vec2& q = poly[(i + 1) % poly.size()];
      const bool ip = inside(p);
      const bool iq = inside(q);
      if (ip) out.push_back(p);
      if (ip != iq) {
        const double fp = b0 * p[0] + b1 * p[1] - bound;
        const double fq = b0 * q[0] + b1 * q[1] - bound;
        const double t = fp / (fp - fq);
        out.push_back({p[0] + t * (q[0] - p[0]), p[1] + t * (q[1] - p[1])});
      }
    }
    poly = std::move(out);
  };
  clip(1.0, hi);
  clip(-1.0, lo);
  double twice = 0.0;
  for (std::size_t i = 0; i < poly.size(); ++i) {
    const Vec2& p = poly[i];
    const Vec2& q = poly[(i + 1) % poly.size()];
    twice += p[0] * q[1] - p[1] * q[0];
  }
  return 0.5 * std::abs(twice);
}

// Vol_3(Q_4 cap a^perp) for a with a[3] != 0: the section is the graph
// x_3 = -(a0 x0 + a1 x1 + a2 x2)/a3 over {|a0 x0 + a1 x1 + a2 x2| <= |a3|},
// so its volume is |a|/|a3| times that region's volume. The region's
// cross-sections in x2 are clipped squares whose area is piecewise quadratic
// in x2, integrated exactly by 3-point Gauss-Legendre between breakpoints.
inline double q4_central_section(const std::array<double, 4>& a) {
  const double a3 = std::abs(a[3]);
  auto area = [&](double x2) { return square_strip_area(a[0], a[1], -a3 - a[2] * x2, a3 - a[2] * x2); };
  std::vector<double> knots{-1.0, 1.0};
  if (a[2] != 0.0) {
    for (double s3 : {-1.0, 1.0}) {
      for (double s0 : {-1.0, 1.0}) {
        for (double s1 : {-1.0, 1.0}) {
          const double t = (s3 * a3 - s0 * a[0] - s1 * a[1]) / a[2];
          if (t > -1.0 && t < 1.0) knots.push_back(t);
        }
      }
    }
  }
  std::sort(knots.begin(), knots.end());
  const std::array<double, 3> node{-std::sqrt(0.6), 0.0, std::sqrt(0.6)};
  const std::array<double, 3> weight{5.0 / 9.0, 8.0 / 9.0, 5.0 / 9.0};
  double vol = 0.0;
  for (std::size_t i = 0; i + 1 < knots.size(); ++i) {
    const double m = 0.5 * (knots[i] + knots[i + 1]);
    const double h = 0.5 * (knots[i + 1] - knots[i]);
    for (std::size_t q = 0; q < 3; ++q) vol += h * weight[q] * area(m + h * node[q]);
  }
  const double len = std::sqrt(a[0] * a[0] + a[1] * a[1] + a[2] * a[2] + a[3] * a[3]);
  return vol * len / a3;
}

// Central finite-difference gradient.
inline std::vector<double> fd_gradient(const std::function<double(const std::vector<double>&)>& f,
                                       const std::vector<double>& x, double h) {
  std::vector<double> g(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    auto xp = x;
    auto xm = x;
    xp[i] += h;
    xm[i] -= h;
    g[i] = (f(xp) - f(xm)) / (2.0 * h);
  }
  return g;
}

// Roots of phi on (lo, hi) by sign changes on a grid and bisection.
inline std::vector<double> bisect_roots(const std::function<double(double)>& phi, double lo, double hi, int grid) {
  std::vector<double> roots;
  double x0 = lo;
  double f0 = phi(x0);
  for (int i = 1; i <= grid; ++i) {
    const double x1 = lo + (hi - lo) * i / grid;
    const double f1 = phi(x1);
    if (f0 == 0.0) {
      roots.push_back(x0);
    } else if (f0 * f1 < 0.0) {
      double l = x0;
      double r = x1;
      double fl = f0;
      for (int it = 0; it < 200 && r - l > 1e-16; ++it) {
        const double m = 0.5 * (l + r);
        const double fm = phi(m);
        if ((fm < 0.0) == (fl < 0.0)) {
          l = m;
          fl = fm;
        } else {
          r = m;
        }
      }
      roots.push_back(0.5 * (l + r));
    }
    x0 = x1;
    f0 = f1;
  }
  return roots;
}

// Uniform random unit vector with n coordinates.
inline std::vector<double> random_unit(std::mt19937_64& gen, std::size_t n) {
  std::normal_distribution<double> normal(0.0, 1.0);
  std::vector<double> v(n);
  double len = 0.0;
  while (len < 1e-3) {
    for (double& c : v) c = normal(gen);
    len = std::sqrt(std::inner_product(v.begin(), v.end(), v.begin(), 0.0));
  }
  for (double& c : v) c /= len;
  return v;
}

}  // namespace oracle
