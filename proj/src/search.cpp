#include "cubesect/search.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>

#include "cubesect/criticality.hpp"
#include "cubesect/density.hpp"
#include "cubesect/error.hpp"
#include "cubesect/parallel.hpp"
#include "cubesect/section.hpp"

namespace cubesect {

namespace {

constexpr double kZeroCut = 1e-7;
constexpr double kJacobianStep = 1e-7;
constexpr int kMaxHalvings = 30;
constexpr double kTieGap = 1e-5;
constexpr double kHessianStep = 1e-4;
// Above the finite-difference roundoff floor, about 16 eps sigma / h^2.
constexpr double kNearZeroEigenvalue = 1e-5;
constexpr double kGlobalTagTolerance = 1e-9;
constexpr double kZeroCoordinate = 1e-12;
constexpr std::array<double, 2> kProbeRadii{1e-2, 3e-3};
constexpr double kProbeThreshold = 1e-12;
constexpr int kRandomProbes = 48;

using Eigen::Index;
using Eigen::MatrixXd;
using Eigen::VectorXd;

WeightVector to_weights(const VectorXd& x) { return WeightVector(std::vector<double>(x.data(), x.data() + x.size())); }

// Coordinates tied in groups: x_i = c[group[i]].
struct Tying {
  std::vector<std::size_t> group;
  std::size_t groups = 0;

  static Tying identity(std::size_t m) {
    Tying t{std::vector<std::size_t>(m), m};
    for (std::size_t i = 0; i < m; ++i) t.group[i] = i;
    return t;
  }

  VectorXd expand(const VectorXd& c) const {
    VectorXd x(static_cast<Index>(group.size()));
    for (std::size_t i = 0; i < group.size(); ++i) x[static_cast<Index>(i)] = c[static_cast<Index>(group[i])];
    return x;
  }
};

// Lagrange system in z = (c, lambda): group means of dI/dx_i - lambda x_i,
// then (|x|^2 - 1) / 2.
VectorXd lagrange_system(const Tying& t, const VectorXd& z) {
  const auto g = static_cast<Index>(t.groups);
  const VectorXd x = t.expand(z.head(g));
  const std::vector<double> grad = grad_polya_integral(to_weights(x));
  const double lambda = z[g];
  VectorXd out = VectorXd::Zero(g + 1);
  VectorXd count = VectorXd::Zero(g);
  for (std::size_t i = 0; i < t.group.size(); ++i) {
    const auto k = static_cast<Index>(t.group[i]);
    out[k] += grad[i] - lambda * x[static_cast<Index>(i)];
    count[k] += 1.0;
  }
  out.head(g).array() /= count.array();
  out[g] = 0.5 * (x.squaredNorm() - 1.0);
  return out;
}

MatrixXd jacobian(const Tying& t, const VectorXd& z) {
  const auto dim = z.size();
  MatrixXd jac(dim, dim);
  for (Index j = 0; j < dim; ++j) {
    VectorXd zp = z;
    VectorXd zm = z;
    zp[j] += kJacobianStep;
    zm[j] -= kJacobianStep;
    jac.col(j) = (lagrange_system(t, zp) - lagrange_system(t, zm)) / (2.0 * kJacobianStep);
  }
  return jac;
}

enum class Outcome { converged, dropped, failed };

struct NewtonRun {
  VectorXd z;
  int iterations = 0;
  Outcome outcome = Outcome::failed;
};

// Damped Newton with folding to nonnegative coordinates. Stops with
// `dropped` as soon as a coordinate falls below kZeroCut.
NewtonRun damped_newton(const Tying& t, VectorXd z, const ScanConfig& cfg) {
  const auto g = static_cast<Index>(t.groups);
  NewtonRun run{z, 0, Outcome::failed};
  VectorXd res = lagrange_system(t, z);
  for (int it = 0; it < cfg.newton_max_iters; ++it) {
    if (res.lpNorm<Eigen::Infinity>() <= cfg.newton_tol) {
      run.z = z;
      run.outcome = Outcome::converged;
      return run;
    }
    const VectorXd step = jacobian(t, z).colPivHouseholderQr().solve(-res);
    if (!step.allFinite()) return run;
    const double current = res.norm();
    double scale = 1.0;
    bool accepted = false;
    for (int h = 0; h <= kMaxHalvings; ++h, scale *= 0.5) {
      VectorXd trial = z + scale * step;
      trial.head(g) = trial.head(g).cwiseAbs();
      if (trial.head(g).maxCoeff() <= 0.0) continue;
      const VectorXd rt = lagrange_system(t, trial);
      if (rt.allFinite() && rt.norm() < current) {
        z = trial;
        res = rt;
        accepted = true;
        break;
      }
    }
    if (!accepted) return run;
    ++run.iterations;
    const double radius = t.expand(z.head(g)).norm();
    if (radius < 0.5 || radius > 2.0) return run;
    if (z.head(g).minCoeff() < kZeroCut) {
      run.z = z;
      run.outcome = Outcome::dropped;
      return run;
    }
  }
  if (res.lpNorm<Eigen::Infinity>() <= cfg.newton_tol) {
    run.z = z;
    run.outcome = Outcome::converged;
  }
  return run;
}

// Largest tangential component of grad I at the unit vector x.
double tangential_residual(const VectorXd& x) {
  const std::vector<double> g = grad_polya_integral(to_weights(x));
  const VectorXd grad = Eigen::Map<const VectorXd>(g.data(), static_cast<Index>(g.size()));
  return (grad - grad.dot(x) * x).lpNorm<Eigen::Infinity>();
}

// At degenerate critical points Newton converges only linearly and stops a
// little off the symmetric point. Coordinates closer than kTieGap are tied
// and the system is re-solved in the tied variables.
std::optional<VectorXd> snap_ties(const VectorXd& v, const ScanConfig& cfg) {
  const auto m = static_cast<std::size_t>(v.size());
  std::vector<std::size_t> order(m);
  for (std::size_t i = 0; i < m; ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return v[Index(a)] < v[Index(b)]; });
  Tying t{std::vector<std::size_t>(m), 0};
  for (std::size_t r = 0; r < m; ++r) {
    if (r > 0 && v[Index(order[r])] - v[Index(order[r - 1])] > kTieGap) ++t.groups;
    t.group[order[r]] = t.groups;
  }
  ++t.groups;
  if (t.groups == m) return std::nullopt;

  const auto g = static_cast<Index>(t.groups);
  VectorXd z = VectorXd::Zero(g + 1);
  VectorXd count = VectorXd::Zero(g);
  for (std::size_t i = 0; i < m; ++i) {
    z[Index(t.group[i])] += v[Index(i)];
    count[Index(t.group[i])] += 1.0;
  }
  z.head(g).array() /= count.array();
  z.head(g) /= t.expand(z.head(g)).norm();
  z[g] = -polya_integral(to_weights(t.expand(z.head(g))));

  const NewtonRun run = damped_newton(t, z, cfg);
  if (run.outcome != Outcome::converged) return std::nullopt;
  VectorXd x = t.expand(run.z.head(g));
  x /= x.norm();
  if ((x - v).lpNorm<Eigen::Infinity>() > 10.0 * kTieGap) return std::nullopt;
  if (tangential_residual(x) > std::max(cfg.newton_tol, tangential_residual(v))) return std::nullopt;
  return x;
}

struct Located {
  std::vector<double> point;  // full dimension, nonnegative, unit
  int iterations = 0;
};

bool two_diagonal(const std::vector<double>& v) {
  return v.size() == 2 && std::abs(v[0] - v[1]) <= 1e-12 * std::max(v[0], v[1]);
}

std::optional<Located> locate(std::vector<double> x, const ScanConfig& cfg) {
  for (double& c : x) c = std::abs(c);
  int iterations = 0;
  for (;;) {
    std::vector<std::size_t> active;
    for (std::size_t i = 0; i < x.size(); ++i) {
      if (x[i] >= kZeroCut) active.push_back(i);
    }
    if (active.empty()) return std::nullopt;
    std::vector<double> v;
    for (std::size_t i : active) v.push_back(x[i]);
    const double len = euclidean_norm(v);
    for (double& c : v) c /= len;

    auto expand = [&](const std::vector<double>& reduced) {
      std::vector<double> full(x.size(), 0.0);
      for (std::size_t i = 0; i < active.size(); ++i) full[active[i]] = reduced[i];
      return full;
    };

    if (v.size() == 1) return Located{expand({1.0}), iterations};
    if (two_diagonal(v)) {
      const double h = std::numbers::sqrt2 / 2.0;
      return Located{expand({h, h}), iterations};
    }

    const auto m = static_cast<Index>(v.size());
    const Tying t = Tying::identity(v.size());
    VectorXd z(m + 1);
    for (Index i = 0; i < m; ++i) z[i] = v[static_cast<std::size_t>(i)];
    z[m] = -polya_integral(WeightVector(v));

    const NewtonRun run = damped_newton(t, z, cfg);
    iterations += run.iterations;
    if (run.outcome == Outcome::failed) return std::nullopt;
    if (run.outcome == Outcome::dropped) {
      for (std::size_t i = 0; i < active.size(); ++i) x[active[i]] = run.z[static_cast<Index>(i)];
      continue;
    }

    VectorXd found = run.z.head(m);
    found /= found.norm();
    if (const auto snapped = snap_ties(found, cfg)) found = *snapped;
    return Located{expand(std::vector<double>(found.data(), found.data() + m)), iterations};
  }
}

CriticalPoint make_point(const WeightVector& canonical) {
  return CriticalPoint{canonical, sigma(canonical), central_volume(canonical),
                       Classification::undetermined, 0, diagonal_order(canonical), {}, {}, 0};
}

void attach_classification(CriticalPoint& p) {
  p.classification = classify(p);
  if (p.classification != Classification::global_min && p.classification != Classification::global_max) {
    p.hessian_eigenvalues = tangent_hessian_eigenvalues(p.canonical);
  }
}

bool accepted_as_critical(const std::vector<double>& point) {
  return criticality_residuals(WeightVector(point)).verdict != Verdict::not_critical;
}

// Orthonormal basis (columns) of the orthogonal complement of the unit vector u.
MatrixXd tangent_basis(const VectorXd& u) {
  const auto n = u.size();
  const MatrixXd q = Eigen::HouseholderQR<MatrixXd>(u).householderQ();
  return q.rightCols(n - 1);
}

struct Spectrum {
  VectorXd values;   // ascending
  MatrixXd vectors;  // unit tangent vectors in R^n, one column per value
};

// Hessian of sigma restricted to the tangent space at the unit vector u.
// Along a zero coordinate j sigma is even, so the Hessian splits into the
// block of the face spanned by the nonzero coordinates (central differences
// with one Richardson step) and 2 pi (f(0) + f''(0)/3) per zero coordinate,
// f the density over the nonzero coordinates. Differencing across a zero
// coordinate would need densities with tiny weights, which lose precision.
Spectrum tangent_spectrum(const VectorXd& u) {
  const auto n = u.size();
  std::vector<Index> face;
  std::vector<Index> zeros;
  for (Index i = 0; i < n; ++i) (std::abs(u[i]) > kZeroCoordinate ? face : zeros).push_back(i);
  const auto s = static_cast<Index>(face.size());

  std::vector<std::pair<double, VectorXd>> pairs;
  if (s >= 2) {
    VectorXd uf(s);
    for (Index i = 0; i < s; ++i) uf[i] = u[face[static_cast<std::size_t>(i)]];
    uf /= uf.norm();
    const MatrixXd basis = tangent_basis(uf);
    const auto d = s - 1;
    auto phi = [&](const VectorXd& c) { return sigma(to_weights(uf + basis * c)); };
    const double f0 = phi(VectorXd::Zero(d));
    auto hessian = [&](double h) {
      MatrixXd hm(d, d);
      for (Index i = 0; i < d; ++i) {
        VectorXd ei = VectorXd::Zero(d);
        ei[i] = h;
        hm(i, i) = (phi(ei) - 2.0 * f0 + phi(-ei)) / (h * h);
        for (Index j = 0; j < i; ++j) {
          VectorXd ej = VectorXd::Zero(d);
          ej[j] = h;
          const double v = (phi(ei + ej) - phi(ei - ej) - phi(ej - ei) + phi(-ei - ej)) / (4.0 * h * h);
          hm(i, j) = v;
          hm(j, i) = v;
        }
      }
      return hm;
    };
    const MatrixXd coarse = hessian(kHessianStep);
    const MatrixXd fine = hessian(0.5 * kHessianStep);
    const Eigen::SelfAdjointEigenSolver<MatrixXd> solver((4.0 * fine - coarse) / 3.0);
    for (Index k = 0; k < d; ++k) {
      const VectorXd local = basis * solver.eigenvectors().col(k);
      VectorXd full = VectorXd::Zero(n);
      for (Index i = 0; i < s; ++i) full[face[static_cast<std::size_t>(i)]] = local[i];
      pairs.emplace_back(solver.eigenvalues()[k], full);
    }
  }
  if (!zeros.empty()) {
    std::vector<double> rest;
    for (Index i : face) rest.push_back(u[i]);
    const UniformSum sum(rest);
    const auto& f = sum.density();
    const double value = 2.0 * std::numbers::pi * (f.midpoint_value(0.0) + f.derivative(0.0, 2) / 3.0);
    for (Index j : zeros) {
      VectorXd e = VectorXd::Zero(n);
      e[j] = 1.0;
      pairs.emplace_back(value, e);
    }
  }
  std::sort(pairs.begin(), pairs.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
  Spectrum out{VectorXd(static_cast<Index>(pairs.size())), MatrixXd(n, static_cast<Index>(pairs.size()))};
  for (std::size_t k = 0; k < pairs.size(); ++k) {
    out.values[static_cast<Index>(k)] = pairs[k].first;
    out.vectors.col(static_cast<Index>(k)) = pairs[k].second;
  }
  return out;
}

enum class Sign { negative, positive, mixed, flat };

// Sign of sigma(u + rho v) - sigma(u) over unit directions v of the span of
// `directions`, at every probe radius.
Sign probe_sign(const VectorXd& u, const MatrixXd& directions) {
  const auto k = directions.cols();
  std::vector<VectorXd> probes;
  for (Index i = 0; i < k; ++i) {
    probes.push_back(directions.col(i));
    probes.push_back(-directions.col(i));
    for (Index j = 0; j < i; ++j) {
      for (double sj : {1.0, -1.0}) {
        probes.push_back(((directions.col(i) + sj * directions.col(j)) / std::numbers::sqrt2).eval());
        probes.push_back((-(directions.col(i) + sj * directions.col(j)) / std::numbers::sqrt2).eval());
      }
    }
  }
  if (k > 1) {
    std::mt19937_64 gen(0x5eed);
    std::normal_distribution<double> normal(0.0, 1.0);
    for (int r = 0; r < kRandomProbes; ++r) {
      VectorXd c(k);
      for (Index i = 0; i < k; ++i) c[i] = normal(gen);
      probes.push_back(directions * c.normalized());
    }
  }
  const double base = sigma(to_weights(u));
  bool always_pos = true;
  bool always_neg = true;
  bool mixed_everywhere = true;
  for (double rho : kProbeRadii) {
    bool pos = false;
    bool neg = false;
    for (const VectorXd& v : probes) {
      const double delta = sigma(to_weights(u + rho * v)) - base;
      if (delta > kProbeThreshold) pos = true;
      if (delta < -kProbeThreshold) neg = true;
      if (delta <= kProbeThreshold) always_pos = false;
      if (delta >= -kProbeThreshold) always_neg = false;
    }
    mixed_everywhere = mixed_everywhere && pos && neg;
  }
  if (mixed_everywhere) return Sign::mixed;
  if (always_pos) return Sign::positive;
  if (always_neg) return Sign::negative;
  return Sign::flat;
}

}  // namespace

const char* to_string(Classification c) {
  switch (c) {
    case Classification::global_min: return "global-min";
    case Classification::global_max: return "global-max";
    case Classification::local_max: return "local-max";
    case Classification::local_min: return "local-min";
    case Classification::saddle: return "saddle";
    case Classification::undetermined: return "undetermined";
  }
  return "?";
}

void ScanConfig::validate() const {
  if (dimension < 2) throw InvalidInput("scan needs dimension >= 2");
  if (seed_count < 1) throw InvalidInput("scan needs at least one seed");
  if (newton_max_iters < 1) throw InvalidInput("newton_max_iters must be positive");
  if (!(newton_tol > 0.0) || !(dedup_tol > 0.0)) throw InvalidInput("tolerances must be positive");
}

WeightVector canonicalize(const WeightVector& a) {
  std::vector<double> c(a.coords().begin(), a.coords().end());
  for (double& x : c) x = std::abs(x);
  std::sort(c.begin(), c.end());
  WeightVector sorted(std::move(c));
  if (std::abs(sorted.norm() - 1.0) <= 4 * std::numeric_limits<double>::epsilon()) return sorted;
  return sorted.normalized();
}

std::optional<std::size_t> diagonal_order(const WeightVector& canonical, double tol) {
  std::size_t k = 0;
  for (double x : canonical.coords()) {
    if (std::abs(x) > tol) ++k;
  }
  if (k == 0) return std::nullopt;
  const double expected = 1.0 / std::sqrt(static_cast<double>(k));
  const std::size_t n = canonical.dimension();
  for (std::size_t i = 0; i < n; ++i) {
    const double target = i + k >= n ? expected : 0.0;
    if (std::abs(canonical[i] - target) > tol) return std::nullopt;
  }
  return k;
}

std::optional<CriticalPoint> refine_critical(const WeightVector& seed, const ScanConfig& cfg) {
  cfg.validate();
  const WeightVector start = seed.normalized();
  auto found = locate({start.coords().begin(), start.coords().end()}, cfg);
  if (!found || !accepted_as_critical(found->point)) return std::nullopt;
  CriticalPoint p = make_point(canonicalize(WeightVector(found->point)));
  p.basin_count = 1;
  p.seeds = {0};
  p.iterations = found->iterations;
  attach_classification(p);
  return p;
}

std::vector<CriticalPoint> scan(const ScanConfig& cfg) {
  cfg.validate();
  const std::size_t n = cfg.dimension;
  const std::size_t total = cfg.seed_count + n;

  std::vector<std::optional<Located>> results(total);
  parallel_for(total, [&](std::size_t i) {
    std::vector<double> seed(n, 0.0);
    if (i < cfg.seed_count) {
      std::mt19937_64 gen(mix_seed(cfg.rng_seed, i));
      std::normal_distribution<double> normal(0.0, 1.0);
      double len = 0.0;
      while (len == 0.0) {
        for (double& c : seed) c = std::abs(normal(gen));
        len = euclidean_norm(seed);
      }
      for (double& c : seed) c /= len;
    } else {
      const WeightVector d = WeightVector::diagonal(i - cfg.seed_count + 1, n);
      seed.assign(d.coords().begin(), d.coords().end());
    }
    auto found = locate(seed, cfg);
    if (found && accepted_as_critical(found->point)) results[i] = std::move(found);
  });

  std::vector<CriticalPoint> points;
  for (std::size_t i = 0; i < total; ++i) {
    if (!results[i]) continue;
    const WeightVector c = canonicalize(WeightVector(results[i]->point));
    auto match = std::find_if(points.begin(), points.end(), [&](const CriticalPoint& p) {
      for (std::size_t j = 0; j < n; ++j) {
        if (std::abs(p.canonical[j] - c[j]) > cfg.dedup_tol) return false;
      }
      return true;
    });
    if (match == points.end()) {
      points.push_back(make_point(c));
      points.back().iterations = results[i]->iterations;
      match = points.end() - 1;
    }
    ++match->basin_count;
    match->seeds.push_back(i);
  }

  parallel_for(points.size(), [&](std::size_t i) { attach_classification(points[i]); });

  std::sort(points.begin(), points.end(), [](const CriticalPoint& a, const CriticalPoint& b) {
    if (a.sigma != b.sigma) return a.sigma < b.sigma;
    return std::lexicographical_compare(a.canonical.coords().begin(), a.canonical.coords().end(),
                                        b.canonical.coords().begin(), b.canonical.coords().end());
  });
  return points;
}

std::vector<double> tangent_hessian_eigenvalues(const WeightVector& a) {
  const WeightVector u = a.normalized();
  if (u.dimension() < 2) return {};
  const Spectrum s = tangent_spectrum(Eigen::Map<const VectorXd>(u.coords().data(), Index(u.dimension())));
  return {s.values.data(), s.values.data() + s.values.size()};
}

Classification classify(const CriticalPoint& p) {
  const double pi = std::numbers::pi;
  if (std::abs(p.sigma - pi) <= kGlobalTagTolerance * pi) return Classification::global_min;
  if (std::abs(p.sigma - std::numbers::sqrt2 * pi) <= kGlobalTagTolerance * pi) return Classification::global_max;
  const WeightVector w = p.canonical.normalized();
  if (w.dimension() < 2) return Classification::undetermined;
  const VectorXd u = Eigen::Map<const VectorXd>(w.coords().data(), Index(w.dimension()));
  const Spectrum s = tangent_spectrum(u);

  bool pos = false;
  bool neg = false;
  std::vector<Index> flat;
  for (Index k = 0; k < s.values.size(); ++k) {
    const double e = s.values[k];
    if (std::abs(e) <= kNearZeroEigenvalue) {
      flat.push_back(k);
    } else {
      (e > 0.0 ? pos : neg) = true;
    }
  }
  if (pos && neg) return Classification::saddle;
  if (flat.empty()) return pos ? Classification::local_min : Classification::local_max;

  // Degenerate directions: decide by the sign of sigma's change along them.
  MatrixXd null_space(u.size(), static_cast<Index>(flat.size()));
  for (std::size_t i = 0; i < flat.size(); ++i) null_space.col(Index(i)) = s.vectors.col(flat[i]);
  switch (probe_sign(u, null_space)) {
    case Sign::mixed: return Classification::saddle;
    case Sign::positive: return neg ? Classification::saddle : Classification::local_min;
    case Sign::negative: return pos ? Classification::saddle : Classification::local_max;
    case Sign::flat: return Classification::undetermined;
  }
  return Classification::undetermined;
}

}  // namespace cubesect
