#pragma once

#include <cmath>
#include <optional>
#include <string>
#include <vector>

#include "curve.hpp"
#include "errors.hpp"
#include "kernel.hpp"
#include "point_seq.hpp"
#include "quadrature.hpp"
#include "spline.hpp"

namespace eulerspline {

/// Radii alpha_0..alpha_m of a Sobolev multiball on order-m derivatives in L^q.
struct MultiBallSpec {
  int m = 0;
  double q = 2.0;
  std::vector<double> alpha;
  Boundary boundary = Boundary::periodic;

  void validate() const {
    if (m < 0) throw DomainError("multiball order m must be >= 0");
    if (!(q >= 1.0) || !std::isfinite(q)) throw DomainError("multiball exponent q must be finite and >= 1");
    if (alpha.size() != static_cast<std::size_t>(m + 1))
      throw UsageError("multiball needs m + 1 = " + std::to_string(m + 1) + " radii (got " +
                       std::to_string(alpha.size()) + ")");
    for (std::size_t r = 0; r < alpha.size(); ++r)
      if (!(alpha[r] > 0.0) || !std::isfinite(alpha[r]))
        throw DomainError("multiball radius alpha_" + std::to_string(r) + " must be positive and finite");
  }
};

/// Relative slack accepted when comparing a measured norm against a radius.
inline constexpr double kMembershipSlack = 1e-12;

struct NormReport {
  std::vector<double> discrete;                  // n^r ||D^r * p||, r = 0..m
  std::optional<std::vector<double>> continuous;  // ||f^{(r)}||_{L^q} when a spline is attached
  std::vector<double> alpha;                     // empty when no radii were given
  std::vector<bool> member;
  std::vector<double> slack;                     // alpha_r - measured_r

  bool all_members() const {
    for (bool b : member)
      if (!b) return false;
    return !member.empty();
  }
};

/// n^r ||D^r * p||_{l^q}; open sequences sum only over i = r..n-1.
inline double discrete_seminorm(const PointSeq& p, int r, double q, VectorNorm inner = VectorNorm::euclidean) {
  if (r < 0) throw DomainError("semi-norm order must be >= 0");
  const int n = p.n();
  if (!p.periodic() && r >= n)
    throw DomainError("open-boundary semi-norm of order " + std::to_string(r) + " needs n > r (n = " +
                      std::to_string(n) + ")");
  if (p.periodic() && r + 1 > n)
    throw DomainError("difference order " + std::to_string(r) + " does not fit in n = " + std::to_string(n));
  const PointSeq diff = r == 0 ? p : convolve(delta_power(r), p);
  const double base = p.periodic() ? lq_norm(diff, q, inner) : lq_norm_partial(diff, IndexRange{r, n - 1}, q, inner);
  return std::pow(static_cast<double>(n), r) * base;
}

inline bool within_radius(double value, double alpha) { return value <= alpha * (1.0 + kMembershipSlack); }

/// Evaluates every order 0..spec.m of p against the radii.
inline NormReport membership(const PointSeq& p, const MultiBallSpec& spec, VectorNorm inner = VectorNorm::euclidean) {
  spec.validate();
  if (p.boundary() != spec.boundary)
    throw UsageError(std::string("boundary mismatch: points are ") + to_string(p.boundary()) + " but the ball is " +
                     to_string(spec.boundary));
  NormReport rep;
  rep.alpha = spec.alpha;
  for (int r = 0; r <= spec.m; ++r) {
    const double v = discrete_seminorm(p, r, spec.q, inner);
    rep.discrete.push_back(v);
    rep.member.push_back(within_radius(v, spec.alpha[static_cast<std::size_t>(r)]));
    rep.slack.push_back(spec.alpha[static_cast<std::size_t>(r)] - v);
  }
  return rep;
}

/// (int_0^1 ||f^{(l)}(t)||^q dt)^{1/q}, segment by segment. The top
/// derivative is piecewise constant and summed in closed form; polynomial
/// integrands (Euclidean norm, even integer q, low enough degree) use one
/// 16-point Gauss rule per piece; anything else is refined dyadically.
inline double continuous_seminorm(const PiecewiseSpline& f, int l, double q, VectorNorm inner = VectorNorm::euclidean) {
  if (l < 0 || l > f.degree())
    throw DomainError("semi-norm order " + std::to_string(l) + " exceeds spline degree " + std::to_string(f.degree()));
  if (!(q >= 1.0) || !std::isfinite(q)) throw DomainError("semi-norm exponent q must be finite and >= 1");
  const double scale = std::pow(f.time_scale(), l);
  const auto pieces = f.pieces();
  std::vector<double> buf(static_cast<std::size_t>(f.d()));
  double total = 0.0;

  if (l == f.degree()) {
    for (const auto& pc : pieces) {
      f.eval_segment(pc.segment, 0.0, l, buf);
      for (double& v : buf) v *= scale;
      total += pc.length * std::pow(vector_norm(buf, inner), q);
    }
    return std::pow(total, 1.0 / q);
  }

  const int poly_degree = (f.degree() - l) * static_cast<int>(q);
  const bool polynomial = inner == VectorNorm::euclidean && q == std::floor(q) && static_cast<int>(q) % 2 == 0 &&
                          poly_degree <= 2 * quadrature::kGaussNodes - 1;
  const double n = f.n();
  for (const auto& pc : pieces) {
    auto integrand = [&](double t) {
      const double x = n * f.base_time(t) - pc.segment;
      f.eval_segment(pc.segment, x, l, buf);
      for (double& v : buf) v *= scale;
      return std::pow(vector_norm(buf, inner), q);
    };
    total += polynomial ? quadrature::gauss16(integrand, pc.t0, pc.t1)
                        : quadrature::gauss16_dyadic(integrand, pc.t0, pc.t1, 1e-10, 10);
  }
  return std::pow(total, 1.0 / q);
}

/// ||f^{(r)}||_{L^q} of an analytic curve, on 64 equal pieces refined dyadically.
inline double curve_seminorm(const CurveSpec& f, int r, double q, VectorNorm inner = VectorNorm::euclidean) {
  if (r < 0) throw DomainError("semi-norm order must be >= 0");
  if (!(q >= 1.0) || !std::isfinite(q)) throw DomainError("semi-norm exponent q must be finite and >= 1");
  std::vector<double> buf(static_cast<std::size_t>(f.dim()));
  auto integrand = [&](double t) {
    f.eval_into(t, r, buf);
    return std::pow(vector_norm(buf, inner), q);
  };
  constexpr int pieces = 64;
  double total = 0.0;
  for (int j = 0; j < pieces; ++j)
    total += quadrature::gauss16_dyadic(integrand, static_cast<double>(j) / pieces, static_cast<double>(j + 1) / pieces,
                                        1e-13, 10);
  return std::pow(total, 1.0 / q);
}

/// Continuous semi-norms of a spline against the radii of a ball.
inline NormReport continuous_report(const PiecewiseSpline& f, const MultiBallSpec& spec,
                                    VectorNorm inner = VectorNorm::euclidean) {
  spec.validate();
  if (spec.m > f.degree())
    throw DomainError("ball order m = " + std::to_string(spec.m) + " exceeds spline degree " +
                      std::to_string(f.degree()));
  NormReport rep;
  rep.alpha = spec.alpha;
  std::vector<double> cont;
  for (int r = 0; r <= spec.m; ++r) {
    const double v = continuous_seminorm(f, r, spec.q, inner);
    cont.push_back(v);
    rep.member.push_back(within_radius(v, spec.alpha[static_cast<std::size_t>(r)]));
    rep.slack.push_back(spec.alpha[static_cast<std::size_t>(r)] - v);
  }
  rep.continuous = std::move(cont);
  return rep;
}

struct ScaledIntoBall {
  double delta = 1.0;
  PiecewiseSpline curve;
};

/// delta = min(1, min_r alpha_r / ||f^{(r)}||), skipping orders with zero
/// norm; returns delta and delta * f.
inline ScaledIntoBall scale_into_ball(const PiecewiseSpline& f, const MultiBallSpec& spec,
                                      VectorNorm inner = VectorNorm::euclidean) {
  spec.validate();
  if (spec.m > f.degree())
    throw DomainError("ball order m = " + std::to_string(spec.m) + " exceeds spline degree " +
                      std::to_string(f.degree()));
  double delta = 1.0;
  for (int r = 0; r <= spec.m; ++r) {
    const double v = continuous_seminorm(f, r, spec.q, inner);
    if (!std::isfinite(v)) throw DomainError("semi-norm of order " + std::to_string(r) + " is not finite");
    if (v > 0.0) delta = std::min(delta, spec.alpha[static_cast<std::size_t>(r)] / v);
  }
  return {delta, delta == 1.0 ? f : f.scaled(delta)};
}

}  // namespace eulerspline
