#pragma once

#include <algorithm>
#include <cmath>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "errors.hpp"
#include "eulerian.hpp"
#include "kernel.hpp"
#include "point_seq.hpp"

namespace eulerspline {

/// Affine time change: the curve is t -> base(theta * t + tau).
struct Reparam {
  double theta = 1.0;
  double tau = 0.0;
  friend bool operator==(const Reparam&, const Reparam&) = default;
};

/// Degree-m piecewise polynomial on n uniform segments of [0, 1].
///
/// Segment i covers [i/n, (i+1)/n) in base time u and is
///   g_i(x) = sum_{k=0}^{m} a_{i,k} x^k / k!,   x = n u - i in [0, 1).
/// Coefficients use the factorial-normalized monomials so that a smoothing
/// spline stores (C^{m-k} * D^k * q)_i verbatim.
class PiecewiseSpline {
 public:
  PiecewiseSpline() = default;

  PiecewiseSpline(int n, int d, int degree, Boundary boundary, std::vector<double> coeffs,
                  std::optional<Reparam> reparam = std::nullopt)
      : n_(n), d_(d), degree_(degree), boundary_(boundary), coeffs_(std::move(coeffs)), reparam_(reparam) {
    if (n < 1 || d < 1 || degree < 0) throw DomainError("spline needs n >= 1, d >= 1, degree >= 0");
    if (coeffs_.size() != static_cast<std::size_t>(n) * static_cast<std::size_t>(degree + 1) * static_cast<std::size_t>(d))
      throw UsageError("spline coefficient array has the wrong size");
    if (reparam_ && !(reparam_->theta > 0.0))
      throw DomainError("reparameterization needs theta > 0");
  }

  int n() const { return n_; }
  int d() const { return d_; }
  int degree() const { return degree_; }
  Boundary boundary() const { return boundary_; }
  const std::optional<Reparam>& reparam() const { return reparam_; }
  const std::vector<double>& coeffs() const { return coeffs_; }

  std::span<const double> coeff(int segment, int k) const {
    return {coeffs_.data() + offset(segment, k), static_cast<std::size_t>(d_)};
  }
  std::span<double> coeff(int segment, int k) {
    return {coeffs_.data() + offset(segment, k), static_cast<std::size_t>(d_)};
  }

  /// Chain-rule factor per derivative: n, times theta under a reparam.
  double time_scale() const { return n_ * (reparam_ ? reparam_->theta : 1.0); }

  /// Base time u for outer time t.
  double base_time(double t) const { return reparam_ ? reparam_->theta * t + reparam_->tau : t; }

  /// Segment index and local coordinate for outer time t. t = 1 maps to the
  /// right end of the last segment.
  std::pair<int, double> locate(double t) const {
    const double x = n_ * base_time(t);
    int i = static_cast<int>(std::floor(x));
    i = std::clamp(i, 0, n_ - 1);
    return {i, x - i};
  }

  /// l-th derivative at t into out.
  void eval_into(double t, int l, std::span<double> out) const {
    const auto [i, x] = locate(t);
    eval_segment(i, x, l, out);
    if (l > 0) {
      const double s = std::pow(time_scale(), l);
      for (double& v : out) v *= s;
    }
  }
  void eval_into(double t, std::span<double> out) const { eval_into(t, 0, out); }

  std::vector<double> operator()(double t, int l = 0) const {
    std::vector<double> v(static_cast<std::size_t>(d_));
    eval_into(t, l, v);
    return v;
  }

  /// g_i^{(l)}(x) without the chain-rule factor, via Horner in the factorial basis.
  void eval_segment(int i, double x, int l, std::span<double> out) const {
    if (l > degree_) {
      std::fill(out.begin(), out.end(), 0.0);
      return;
    }
    for (int c = 0; c < d_; ++c) {
      double r = coeff(i, degree_)[static_cast<std::size_t>(c)];
      for (int k = degree_ - 1; k >= l; --k) r = coeff(i, k)[static_cast<std::size_t>(c)] + r * x / (k - l + 1);
      out[static_cast<std::size_t>(c)] = r;
    }
  }

  /// A piece of [0, 1] in outer time lying inside one segment.
  struct Piece {
    double t0;
    double t1;
    double length;
    int segment;
  };

  /// The segments met by outer times in [0, 1], in order.
  std::vector<Piece> pieces() const {
    std::vector<Piece> out;
    if (!reparam_) {
      out.reserve(static_cast<std::size_t>(n_));
      for (int i = 0; i < n_; ++i)
        out.push_back({static_cast<double>(i) / n_, static_cast<double>(i + 1) / n_, 1.0 / n_, i});
      return out;
    }
    const double th = reparam_->theta;
    const double ta = reparam_->tau;
    const int first = std::clamp(static_cast<int>(std::floor(n_ * ta)), 0, n_ - 1);
    const int last = std::clamp(static_cast<int>(std::ceil(n_ * (th + ta))) - 1, 0, n_ - 1);
    for (int j = first; j <= last; ++j) {
      const double t0 = std::max(0.0, (static_cast<double>(j) / n_ - ta) / th);
      const double t1 = std::min(1.0, (static_cast<double>(j + 1) / n_ - ta) / th);
      if (t1 > t0) out.push_back({t0, t1, t1 - t0, j});
    }
    return out;
  }

  /// Outer-time breakpoints including 0 and 1.
  std::vector<double> breakpoints() const {
    std::vector<double> b{0.0};
    for (const auto& p : pieces()) b.push_back(p.t1);
    b.back() = 1.0;
    return b;
  }

  PiecewiseSpline scaled(double c) const {
    PiecewiseSpline out = *this;
    for (double& v : out.coeffs_) v *= c;
    return out;
  }

  /// Adds v to the constant coefficient of every segment.
  PiecewiseSpline translated(std::span<const double> v) const {
    if (static_cast<int>(v.size()) != d_) throw UsageError("translation vector has the wrong dimension");
    PiecewiseSpline out = *this;
    for (int i = 0; i < n_; ++i)
      for (int c = 0; c < d_; ++c) out.coeff(i, 0)[static_cast<std::size_t>(c)] += v[static_cast<std::size_t>(c)];
    return out;
  }

 private:
  std::size_t offset(int segment, int k) const {
    return (static_cast<std::size_t>(segment) * static_cast<std::size_t>(degree_ + 1) + static_cast<std::size_t>(k)) *
           static_cast<std::size_t>(d_);
  }

  int n_ = 0;
  int d_ = 0;
  int degree_ = 0;
  Boundary boundary_ = Boundary::periodic;
  std::vector<double> coeffs_;
  std::optional<Reparam> reparam_;
};

/// Piecewise-constant discretization t -> p_{floor(nt)}.
inline PiecewiseSpline s0(const PointSeq& p) {
  return PiecewiseSpline(p.n(), p.d(), 0, p.boundary(), p.data());
}

/// Piecewise-linear interpolation through p_i at t = i/n. Periodic sequences
/// close the loop; open ones hold p_{n-1} on the final segment.
inline PiecewiseSpline s1(const PointSeq& p) {
  const int n = p.n();
  const int d = p.d();
  PiecewiseSpline f(n, d, 1, p.boundary(), std::vector<double>(static_cast<std::size_t>(2 * n * d), 0.0));
  for (int i = 0; i < n; ++i) {
    const auto cur = p[i];
    const bool hold = !p.periodic() && i == n - 1;
    const auto next = p[i + 1];
    for (int c = 0; c < d; ++c) {
      const auto cc = static_cast<std::size_t>(c);
      f.coeff(i, 0)[cc] = cur[cc];
      f.coeff(i, 1)[cc] = hold ? 0.0 : next[cc] - cur[cc];
    }
  }
  return f;
}

/// Shift used by the degree-m smoothing spline: sigma_shift(m) for m >= 1,
/// the identity for m = 0 (so the degree-0 spline is s0).
inline Kernel smoothing_shift(int m) {
  if (m == 0) return identity_kernel();
  return sigma_shift(m);
}

/// Exact kernels K_k = C^{m-k} * D^k (* shift), k = 0..m, producing the
/// segment coefficients a_{i,k} = (K_k * p)_i.
inline std::vector<Kernel> smoothing_coefficient_kernels(int m, bool apply_shift) {
  require_exact_degree(m);
  std::vector<Kernel> out;
  out.reserve(static_cast<std::size_t>(m + 1));
  const Kernel shift = apply_shift ? smoothing_shift(m) : identity_kernel();
  for (int k = 0; k <= m; ++k)
    out.push_back(compose(smoothing_kernel(m - k).kernel, delta_power(k), shift));
  return out;
}

inline int smoothing_min_points(int m) { return 2 * m + 3; }

/// Degree-m Eulerian smoothing spline f_q of a periodic sequence, with
/// q = sigma_m * p when apply_shift is set and q = p otherwise.
inline PiecewiseSpline smoothing_spline(const PointSeq& p, int m, bool apply_shift = true) {
  require_exact_degree(m);
  if (!p.periodic())
    throw UsageError("smoothing_spline needs a periodic sequence; use nonperiodic_smoothing for open ones");
  if (p.n() < smoothing_min_points(m))
    throw DomainError("n too small for degree: smoothing of degree " + std::to_string(m) + " needs n >= " +
                      std::to_string(smoothing_min_points(m)) + " (got n = " + std::to_string(p.n()) + ")");
  const int n = p.n();
  const int d = p.d();
  PiecewiseSpline f(n, d, m, Boundary::periodic,
                    std::vector<double>(static_cast<std::size_t>(n) * static_cast<std::size_t>(m + 1) * static_cast<std::size_t>(d)));
  const auto kernels = smoothing_coefficient_kernels(m, apply_shift);
  for (int k = 0; k <= m; ++k) {
    const PointSeq a = convolve(kernels[static_cast<std::size_t>(k)], p);
    for (int i = 0; i < n; ++i) std::copy(a[i].begin(), a[i].end(), f.coeff(i, k).begin());
  }
  return f;
}

/// Cardinal B-spline B^m(x) = (1/m!) sum_{k=0}^{m+1} (-1)^k binom(m+1,k) (x-k)_+^m,
/// supported on [0, m+1). Evaluated on the nearer half via the symmetry
/// B^m(x) = B^m(m+1-x) to limit cancellation.
inline double bspline_basis(int m, double x) {
  if (m < 0) throw DomainError("bspline_basis needs m >= 0");
  if (!(x >= 0.0) || !(x < m + 1.0)) return 0.0;
  if (m == 0) return 1.0;
  const double y = x > 0.5 * (m + 1) ? (m + 1.0) - x : x;
  double s = 0.0;
  double binom = 1.0;
  double fact = 1.0;
  for (int k = 2; k <= m; ++k) fact *= k;
  for (int k = 0; k <= m + 1 && y - k > 0.0; ++k) {
    const double term = binom * std::pow(y - k, m);
    s += (k % 2 ? -term : term);
    binom = binom * (m + 1 - k) / (k + 1);
  }
  return s / fact;
}

/// sum_i B^m(nt - i) p_i with periodic wrap: the B-spline form of the
/// unshifted smoothing spline f_p.
inline std::vector<double> eval_bspline_form(const PointSeq& p, int m, double t) {
  if (!p.periodic()) throw UsageError("eval_bspline_form needs a periodic sequence");
  if (p.n() < smoothing_min_points(m))
    throw DomainError("n too small for degree: B-spline form of degree " + std::to_string(m) + " needs n >= " +
                      std::to_string(smoothing_min_points(m)));
  const int n = p.n();
  const double x = n * t;
  const int seg = std::clamp(static_cast<int>(std::floor(x)), 0, n - 1);
  std::vector<double> out(static_cast<std::size_t>(p.d()), 0.0);
  for (int i = seg - m; i <= seg; ++i) {
    const double w = bspline_basis(m, x - i);
    if (w == 0.0) continue;
    const auto pi = p[i];
    for (int c = 0; c < p.d(); ++c) out[static_cast<std::size_t>(c)] += w * pi[static_cast<std::size_t>(c)];
  }
  return out;
}

/// f^{(l)} as a spline of degree m - l on the same knots.
inline PiecewiseSpline derivative_spline(const PiecewiseSpline& f, int l) {
  if (l < 0 || l > f.degree())
    throw DomainError("derivative order " + std::to_string(l) + " exceeds spline degree " + std::to_string(f.degree()));
  if (l == 0) return f;
  const int n = f.n();
  const int d = f.d();
  const int deg = f.degree() - l;
  const double s = std::pow(f.time_scale(), l);
  PiecewiseSpline g(n, d, deg, f.boundary(),
                    std::vector<double>(static_cast<std::size_t>(n) * static_cast<std::size_t>(deg + 1) * static_cast<std::size_t>(d)),
                    f.reparam());
  for (int i = 0; i < n; ++i)
    for (int k = 0; k <= deg; ++k)
      for (int c = 0; c < d; ++c) g.coeff(i, k)[static_cast<std::size_t>(c)] = s * f.coeff(i, k + l)[static_cast<std::size_t>(c)];
  return g;
}

/// Knots (segment boundaries) whose both sides are reached by outer times in
/// (0, 1): all n for periodic splines, 1..n-1 for open ones, and only those
/// strictly inside the image of the time change when one is attached.
inline std::vector<int> interior_knots(const PiecewiseSpline& f) {
  std::vector<int> knots;
  const int n = f.n();
  for (int j = 0; j < n; ++j) {
    if (j == 0 && f.boundary() != Boundary::periodic) continue;
    if (f.reparam()) {
      const double u = static_cast<double>(j) / n;
      const double lo = f.reparam()->tau;
      const double hi = lo + f.reparam()->theta;
      if (!(u > lo && u < hi)) continue;
    }
    knots.push_back(j);
  }
  return knots;
}

/// Largest ||left limit - right limit|| of f^{(l)} over interior knots.
inline double knot_continuity(const PiecewiseSpline& f, int l, VectorNorm inner = VectorNorm::euclidean) {
  if (l < 0 || l > f.degree())
    throw DomainError("continuity order " + std::to_string(l) + " exceeds spline degree " + std::to_string(f.degree()));
  const int n = f.n();
  const double s = std::pow(f.time_scale(), l);
  std::vector<double> left(static_cast<std::size_t>(f.d())), right(left.size()), diff(left.size());
  double worst = 0.0;
  for (int j : interior_knots(f)) {
    const int before = (j - 1 + n) % n;
    f.eval_segment(before, 1.0, l, left);
    f.eval_segment(j, 0.0, l, right);
    for (std::size_t c = 0; c < diff.size(); ++c) diff[c] = s * (left[c] - right[c]);
    worst = std::max(worst, vector_norm(diff, inner));
  }
  return worst;
}

/// Magnitude of f^{(l)} used to scale continuity tolerances:
/// time_scale^l * max_{i, k >= l} ||a_{i,k}||.
inline double derivative_scale(const PiecewiseSpline& f, int l, VectorNorm inner = VectorNorm::euclidean) {
  const double s = std::pow(f.time_scale(), l);
  double m = 0.0;
  for (int i = 0; i < f.n(); ++i)
    for (int k = l; k <= f.degree(); ++k) m = std::max(m, vector_norm(f.coeff(i, k), inner));
  return s * m;
}

/// Buffer constants of the open-boundary rescaling theta = 1 - a m / n,
/// tau = b m / n. The defaults are the ones the construction is proven with.
struct NonperiodicBuffer {
  double theta_factor = 20.0;
  double tau_factor = 10.0;
};

namespace detail {

inline int reflect_index(int i, int n) {
  if (n == 1) return 0;
  const int period = 2 * (n - 1);
  int r = ((i % period) + period) % period;
  return r < n ? r : period - r;
}

}  // namespace detail

/// Open-boundary smoothing t -> f_{sigma_m * p}(theta t + tau) with
/// theta = 1 - 20m/n and tau = 10m/n. The base spline uses the periodic
/// extension of p; segments reached by the time change never see the wrap,
/// which is re-checked against a reflected extension.
inline PiecewiseSpline nonperiodic_smoothing(const PointSeq& p, int m, NonperiodicBuffer buffer = {}) {
  require_exact_degree(m);
  if (m < 1) throw DomainError("open-boundary smoothing needs m >= 1");
  if (p.periodic()) throw UsageError("nonperiodic_smoothing needs an open sequence");
  const int n = p.n();
  const double theta = 1.0 - buffer.theta_factor * m / n;
  const double tau = buffer.tau_factor * m / n;
  const int min_n = static_cast<int>(std::floor(buffer.theta_factor * m)) + 1;
  if (!(theta > 0.0) || n < min_n)
    throw DomainError("n too small for open-boundary smoothing of degree " + std::to_string(m) + ": needs n >= " +
                      std::to_string(std::max(min_n, smoothing_min_points(m))) + " (got n = " + std::to_string(n) + ")");
  if (n < smoothing_min_points(m))
    throw DomainError("n too small for degree: smoothing of degree " + std::to_string(m) + " needs n >= " +
                      std::to_string(smoothing_min_points(m)));
  if (tau < 0.0 || theta + tau > 1.0 + 1e-15) throw DomainError("time change must map [0,1] into [0,1]");

  const PiecewiseSpline base = smoothing_spline(p.with_boundary(Boundary::periodic), m, true);
  PiecewiseSpline f(n, p.d(), m, Boundary::open, base.coeffs(), Reparam{theta, tau});

  // Guard: every segment the time change reaches has the same coefficients
  // under a reflected extension of p.
  const auto kernels = smoothing_coefficient_kernels(m, true);
  double scale = 0.0;
  for (double v : p.data()) scale = std::max(scale, std::abs(v));
  std::vector<double> acc(static_cast<std::size_t>(p.d()));
  for (const auto& piece : f.pieces()) {
    const int i = piece.segment;
    for (int k = 0; k <= m; ++k) {
      const Kernel& kk = kernels[static_cast<std::size_t>(k)];
      std::fill(acc.begin(), acc.end(), 0.0);
      for (std::size_t j = 0; j < kk.width(); ++j) {
        const double w = kk.coeffs()[j].to_double();
        const auto src = p[detail::reflect_index(i - (kk.lo() + static_cast<int>(j)), n)];
        for (std::size_t c = 0; c < acc.size(); ++c) acc[c] += w * src[c];
      }
      for (std::size_t c = 0; c < acc.size(); ++c) {
        const double diff = std::abs(acc[c] - f.coeff(i, k)[c]);
        if (diff > 1e-12 * std::max(1.0, scale) * std::pow(2.0, k))
          throw DomainError("time-change buffer too small: segment " + std::to_string(i) +
                            " depends on wrapped-around points");
      }
    }
  }
  return f;
}

}  // namespace eulerspline
