#include "cubesect/density.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "cubesect/error.hpp"
#include "polynomial.hpp"

namespace cubesect {

using detail::Coeffs;
using detail::CompensatedSum;

namespace {

// Integral of a midpoint-local piece over [x1, x2].
double piece_integral(const Coeffs& c, double mid, double x1, double x2) {
  const Coeffs anti = detail::antiderivative(c);
  return detail::horner(anti, x2 - mid) - detail::horner(anti, x1 - mid);
}

// Force t_i = -t_{m-i} exactly; the densities built here are even.
void symmetrize(std::vector<double>& t) {
  const std::size_t b = t.size();
  for (std::size_t i = 0; i < b / 2; ++i) {
    const double half = 0.5 * (t[b - 1 - i] - t[i]);
    t[i] = -half;
    t[b - 1 - i] = half;
  }
  if (b % 2 == 1) t[b / 2] = 0.0;
}

PiecewisePolynomial uniform_box(double w) {
  return PiecewisePolynomial({-w, w}, {{1.0 / (2.0 * w)}});
}

// Nonzero magnitudes, without those below kNegligibleWeight * sum |a_i|. Such a
// weight shifts the density by O(w^2) away from kinks and O(w) at them, while
// its knot pairs would cancel in the truncated-power sum.
std::vector<double> effective_magnitudes(const WeightVector& a) {
  std::vector<double> w = a.nonzero_magnitudes();
  const double total = std::accumulate(w.begin(), w.end(), 0.0);
  std::erase_if(w, [&](double x) { return x < kNegligibleWeight * total; });
  std::sort(w.begin(), w.end());
  return w;
}

double binomial(unsigned n, unsigned k) {
  double r = 1.0;
  for (unsigned i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

}  // namespace

// ---------------------------------------------------------------------------
// PiecewisePolynomial

PiecewisePolynomial::PiecewisePolynomial(std::vector<double> breakpoints,
                                         std::vector<std::vector<double>> pieces)
    : breakpoints_(std::move(breakpoints)), pieces_(std::move(pieces)) {
  if (breakpoints_.size() < 2) throw InvalidInput("piecewise polynomial needs >= 2 breakpoints");
  if (pieces_.size() + 1 != breakpoints_.size()) {
    throw InvalidInput("piecewise polynomial needs exactly one piece per interval");
  }
  for (std::size_t i = 0; i + 1 < breakpoints_.size(); ++i) {
    if (!(breakpoints_[i] < breakpoints_[i + 1])) {
      throw InvalidInput("breakpoints must be strictly increasing");
    }
  }
  for (auto& p : pieces_) {
    if (p.empty()) p.push_back(0.0);
  }

  const std::size_t b = breakpoints_.size();
  from_zero_.assign(b, 0.0);
  // Walk outward from the origin so that cdf(0) is an exact split.
  std::size_t first_nonneg = static_cast<std::size_t>(
      std::lower_bound(breakpoints_.begin(), breakpoints_.end(), 0.0) - breakpoints_.begin());
  {
    CompensatedSum acc;
    for (std::size_t j = first_nonneg; j < b; ++j) {
      if (j > first_nonneg || (j > 0 && breakpoints_[j - 1] < 0.0 && breakpoints_[j] > 0.0)) {
        const std::size_t piece = j - 1;
        const double lo = std::max(breakpoints_[piece], 0.0);
        acc.add(piece_integral(pieces_[piece], midpoint(piece), lo, breakpoints_[j]));
      }
      from_zero_[j] = acc.value();
    }
  }
  {
    CompensatedSum acc;
    for (std::size_t j = first_nonneg; j-- > 0;) {
      if (j + 1 < b) {
        const double hi = std::min(breakpoints_[j + 1], 0.0);
        acc.add(-piece_integral(pieces_[j], midpoint(j), breakpoints_[j], hi));
      }
      from_zero_[j] = acc.value();
    }
  }

  bool mirrored = true;
  for (std::size_t i = 0; i < b && mirrored; ++i) mirrored = breakpoints_[i] == -breakpoints_[b - 1 - i];
  double scale = 0.0;
  for (const auto& p : pieces_) {
    for (double c : p) scale = std::max(scale, std::abs(c));
  }
  const std::size_t count = pieces_.size();
  for (std::size_t j = 0; j < count && mirrored; ++j) {
    const auto& p = pieces_[j];
    const auto& q = pieces_[count - 1 - j];
    if (p.size() != q.size()) {
      mirrored = false;
      break;
    }
    for (std::size_t k = 0; k < p.size(); ++k) {
      const double reflected = (k % 2 == 0) ? q[k] : -q[k];
      if (std::abs(p[k] - reflected) > 1e-12 * scale) {
        mirrored = false;
        break;
      }
    }
  }
  symmetric_probability_ = mirrored && std::abs(integral() - 1.0) <= 1e-12;
}

double PiecewisePolynomial::midpoint(std::size_t piece) const {
  return 0.5 * (breakpoints_[piece] + breakpoints_[piece + 1]);
}

std::ptrdiff_t PiecewisePolynomial::piece_right_of(double x) const {
  const auto idx =
      std::upper_bound(breakpoints_.begin(), breakpoints_.end(), x) - breakpoints_.begin() - 1;
  if (idx < 0 || idx >= static_cast<std::ptrdiff_t>(pieces_.size())) return -1;
  return idx;
}

std::ptrdiff_t PiecewisePolynomial::piece_left_of(double x) const {
  const auto idx =
      std::lower_bound(breakpoints_.begin(), breakpoints_.end(), x) - breakpoints_.begin() - 1;
  if (idx < 0 || idx >= static_cast<std::ptrdiff_t>(pieces_.size())) return -1;
  return idx;
}

double PiecewisePolynomial::right_limit(double x) const {
  const auto j = piece_right_of(x);
  if (j < 0) return 0.0;
  const auto sj = static_cast<std::size_t>(j);
  return detail::horner(pieces_[sj], x - midpoint(sj));
}

double PiecewisePolynomial::left_limit(double x) const {
  const auto j = piece_left_of(x);
  if (j < 0) return 0.0;
  const auto sj = static_cast<std::size_t>(j);
  return detail::horner(pieces_[sj], x - midpoint(sj));
}

double PiecewisePolynomial::midpoint_value(double x) const {
  return 0.5 * (left_limit(x) + right_limit(x));
}

double PiecewisePolynomial::derivative(double x, int k) const {
  const auto j = piece_right_of(x);
  if (j < 0) return 0.0;
  const auto sj = static_cast<std::size_t>(j);
  return detail::derivative_at(pieces_[sj], x - midpoint(sj), k);
}

double PiecewisePolynomial::integral_from_zero(double x) const {
  // Signed integral over [0, x]; x inside the support.
  const auto j = static_cast<std::size_t>(piece_right_of(x));
  const double lo = breakpoints_[j];
  const double hi = breakpoints_[j + 1];
  const double mid = midpoint(j);
  if (lo >= 0.0) return from_zero_[j] + piece_integral(pieces_[j], mid, lo, x);
  if (hi <= 0.0) return from_zero_[j + 1] - piece_integral(pieces_[j], mid, x, hi);
  return piece_integral(pieces_[j], mid, 0.0, x);
}

double PiecewisePolynomial::cdf(double x) const {
  if (x <= breakpoints_.front()) return 0.0;
  if (x >= breakpoints_.back()) return symmetric_probability_ ? 1.0 : integral();
  const double below_zero = symmetric_probability_ ? 0.5 : -from_zero_.front();
  const double value = below_zero + integral_from_zero(x);
  return symmetric_probability_ ? std::clamp(value, 0.0, 1.0) : value;
}

double PiecewisePolynomial::integral() const { return from_zero_.back() - from_zero_.front(); }

// ---------------------------------------------------------------------------
// Closed form: f(x) = sum_eps (prod eps_i) (x - t_eps)_+^{m-1} / ((m-1)! prod 2 w_i),
// t_eps = -sum eps_i w_i.

PiecewisePolynomial density_closed_form(const WeightVector& a) {
  const std::vector<double> w = effective_magnitudes(a);
  const std::size_t m = w.size();
  if (m > kMaxClosedFormWeights) {
    throw InvalidInput("truncated-power density supports at most " +
                       std::to_string(kMaxClosedFormWeights) + " nonzero weights, got " +
                       std::to_string(m));
  }
  if (m == 1) return uniform_box(w[0]);

  // Knots and coefficients carry extended precision: the signed sum cancels
  // heavily when some weights are small.
  using Wide = long double;
  struct Term {
    Wide t;
    int sign;
  };
  const std::size_t patterns = std::size_t{1} << m;
  std::vector<Term> terms;
  terms.reserve(patterns);
  for (std::size_t mask = 0; mask < patterns; ++mask) {
    Wide t = 0.0L;
    int sign = 1;
    for (std::size_t i = 0; i < m; ++i) {
      if (mask & (std::size_t{1} << i)) {
        t += w[i];
        sign = -sign;
      } else {
        t -= w[i];
      }
    }
    terms.push_back({t, sign});
  }
  std::sort(terms.begin(), terms.end(), [](const Term& x, const Term& y) { return x.t < y.t; });

  const Wide span = 2.0L * std::accumulate(w.begin(), w.end(), Wide{0});
  const Wide merge_tol = 1e-13L * span;

  std::vector<Wide> wide_knots;
  std::vector<long long> knot_weight;
  for (std::size_t i = 0; i < terms.size();) {
    std::size_t j = i;
    Wide sum_t = 0.0L;
    long long weight = 0;
    while (j < terms.size() && terms[j].t - terms[i].t <= merge_tol) {
      sum_t += terms[j].t;
      weight += terms[j].sign;
      ++j;
    }
    if (weight != 0) {
      wide_knots.push_back(sum_t / static_cast<Wide>(j - i));
      knot_weight.push_back(weight);
    }
    i = j;
  }
  std::vector<double> knots(wide_knots.begin(), wide_knots.end());
  symmetrize(knots);

  Wide norm = 1.0L;
  for (std::size_t i = 1; i < m; ++i) norm /= static_cast<Wide>(i);
  for (double wi : w) norm /= 2.0L * wi;

  const std::size_t degree = m - 1;
  const std::size_t piece_count = knots.size() - 1;
  std::vector<std::vector<double>> pieces(piece_count);

  // Each piece is summed from the knots on its own side of the origin (the
  // full signed sum vanishes identically), then mirrored.
  for (std::size_t j = 0; j < piece_count; ++j) {
    const std::size_t mirror = piece_count - 1 - j;
    if (mirror < j) break;
    const double mid = 0.5 * (knots[j] + knots[j + 1]);
    std::vector<Wide> acc(degree + 1, 0.0L);
    for (std::size_t g = 0; g <= j; ++g) {
      const Wide d = mid - wide_knots[g];
      Wide dpow = 1.0L;  // d^(degree - k), built from k = degree downwards
      for (std::size_t k = degree + 1; k-- > 0;) {
        acc[k] += static_cast<Wide>(knot_weight[g]) *
                  binomial(static_cast<unsigned>(degree), static_cast<unsigned>(k)) * dpow;
        dpow *= d;
      }
    }
    Coeffs c(degree + 1);
    for (std::size_t k = 0; k <= degree; ++k) c[k] = static_cast<double>(norm * acc[k]);
    if (mirror == j) {
      for (std::size_t k = 1; k <= degree; k += 2) c[k] = 0.0;
      pieces[j] = std::move(c);
    } else {
      Coeffs reflected(c);
      for (std::size_t k = 1; k <= degree; k += 2) reflected[k] = -reflected[k];
      pieces[j] = std::move(c);
      pieces[mirror] = std::move(reflected);
    }
  }
  return PiecewisePolynomial(std::move(knots), std::move(pieces));
}

// ---------------------------------------------------------------------------
// Convolution path: f_new(x) = (P(x + w) - P(x - w)) / (2w), P = antiderivative.

namespace {

PiecewisePolynomial convolve_with_box(const PiecewisePolynomial& f, double w) {
  const auto old_bp = f.breakpoints();
  const std::size_t old_pieces = f.piece_count();

  std::vector<Coeffs> anti(old_pieces);
  std::vector<double> cum(old_pieces + 1, 0.0);
  {
    CompensatedSum acc;
    for (std::size_t i = 0; i < old_pieces; ++i) {
      anti[i] = detail::antiderivative(f.pieces()[i]);
      const double mid = f.midpoint(i);
      // shift constant so anti[i](t_i - mid) == 0
      anti[i][0] -= detail::horner(anti[i], old_bp[i] - mid);
      acc.add(detail::horner(anti[i], old_bp[i + 1] - mid));
      cum[i + 1] = acc.value();
    }
  }
  const double total = cum.back();
  const std::size_t degree = f.pieces().front().size();  // new degree

  std::vector<double> cand;
  cand.reserve(2 * old_bp.size());
  for (double t : old_bp) {
    cand.push_back(t - w);
    cand.push_back(t + w);
  }
  std::sort(cand.begin(), cand.end());
  const double merge_tol = 1e-13 * (cand.back() - cand.front());
  std::vector<double> knots;
  for (std::size_t i = 0; i < cand.size();) {
    std::size_t j = i;
    double sum = 0.0;
    while (j < cand.size() && cand[j] - cand[i] <= merge_tol) sum += cand[j++];
    knots.push_back(sum / static_cast<double>(j - i));
    i = j;
  }
  symmetrize(knots);

  // P(y) for y = mid + shift + u, as coefficients in u.
  auto antiderivative_poly = [&](double y_mid) -> Coeffs {
    Coeffs out(degree + 1, 0.0);
    if (y_mid <= old_bp.front()) return out;
    if (y_mid >= old_bp.back()) {
      out[0] = total;
      return out;
    }
    const auto idx = static_cast<std::size_t>(
        std::upper_bound(old_bp.begin(), old_bp.end(), y_mid) - old_bp.begin() - 1);
    Coeffs shifted = detail::taylor_shift(anti[idx], y_mid - f.midpoint(idx));
    for (std::size_t k = 0; k < shifted.size(); ++k) out[k] = shifted[k];
    out[0] += cum[idx];
    return out;
  };

  std::vector<std::vector<double>> pieces;
  pieces.reserve(knots.size() - 1);
  for (std::size_t j = 0; j + 1 < knots.size(); ++j) {
    const double mid = 0.5 * (knots[j] + knots[j + 1]);
    const Coeffs hi = antiderivative_poly(mid + w);
    const Coeffs lo = antiderivative_poly(mid - w);
    Coeffs c(degree + 1);
    for (std::size_t k = 0; k <= degree; ++k) c[k] = (hi[k] - lo[k]) / (2.0 * w);
    pieces.push_back(std::move(c));
  }
  return PiecewisePolynomial(std::move(knots), std::move(pieces));
}

}  // namespace

PiecewisePolynomial density_by_convolution(const WeightVector& a) {
  const std::vector<double> w = effective_magnitudes(a);
  PiecewisePolynomial f = uniform_box(w[0]);
  for (std::size_t i = 1; i < w.size(); ++i) f = convolve_with_box(f, w[i]);
  return f;
}

double eval_density(const PiecewisePolynomial& f, double r) { return f(r); }

double eval_cdf(const PiecewisePolynomial& f, double r) { return f.cdf(r); }

double sinc(double x) {
  if (std::abs(x) < 1e-4) {
    const double x2 = x * x;
    return 1.0 - x2 / 6.0 * (1.0 - x2 / 20.0);
  }
  return std::sin(x) / x;
}

double characteristic_function(const WeightVector& a, double t) {
  double prod = 1.0;
  for (double ai : a.coords()) prod *= sinc(ai * t);
  return prod;
}

// ---------------------------------------------------------------------------

UniformSum::UniformSum(std::span<const double> weights) {
  const bool all_zero =
      std::all_of(weights.begin(), weights.end(), [](double x) { return x == 0.0; });
  if (!all_zero) {
    density_.emplace(density_closed_form(WeightVector({weights.begin(), weights.end()})));
  }
}

const PiecewisePolynomial& UniformSum::density() const {
  if (!density_) throw InvalidInput("the point mass at 0 has no density");
  return *density_;
}

double UniformSum::density_right(double x) const { return density_ ? density_->right_limit(x) : 0.0; }

double UniformSum::density_left(double x) const { return density_ ? density_->left_limit(x) : 0.0; }

double UniformSum::density_midpoint(double x) const {
  return density_ ? density_->midpoint_value(x) : 0.0;
}

double UniformSum::cdf(double x) const {
  if (density_) return density_->cdf(x);
  if (x < 0.0) return 0.0;
  return x == 0.0 ? 0.5 : 1.0;
}

}  // namespace cubesect
