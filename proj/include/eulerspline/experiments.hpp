#pragma once

#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include "curve.hpp"
#include "errors.hpp"
#include "metrics.hpp"
#include "point_seq.hpp"
#include "sobolev.hpp"
#include "spline.hpp"

namespace eulerspline {

enum class Direction { forward, backward };
enum class SplineKind { s0, s1 };

inline const char* to_string(Direction d) { return d == Direction::forward ? "forward" : "backward"; }
inline const char* to_string(SplineKind k) { return k == SplineKind::s0 ? "s0" : "s1"; }

inline SplineKind parse_spline_kind(const std::string& s) {
  if (s == "s0") return SplineKind::s0;
  if (s == "s1") return SplineKind::s1;
  throw UsageError("unknown spline kind '" + s + "' (expected s0 or s1)");
}

inline PiecewiseSpline discretize(const PointSeq& p, SplineKind kind) { return kind == SplineKind::s0 ? s0(p) : s1(p); }

/// Least-squares fit of log(value) = slope * log(n) + intercept.
struct RateFit {
  double slope = std::numeric_limits<double>::quiet_NaN();
  double intercept = std::numeric_limits<double>::quiet_NaN();
  double residual = std::numeric_limits<double>::quiet_NaN();  // RMS of log residuals
  int points_used = 0;
  bool filtered = false;    // some non-positive values were dropped
  bool applicable = false;  // at least two positive values remained
};

inline RateFit fit_rate(const std::vector<int>& n_grid, const std::vector<double>& values) {
  if (n_grid.size() != values.size()) throw UsageError("rate fit needs one value per grid point");
  if (n_grid.size() < 3) throw DomainError("rate fit needs at least 3 grid points");
  std::vector<double> xs, ys;
  RateFit fit;
  for (std::size_t j = 0; j < values.size(); ++j) {
    if (n_grid[j] < 1) throw DomainError("rate fit grid points must be positive");
    if (!(values[j] > 0.0) || !std::isfinite(values[j])) {
      fit.filtered = true;
      continue;
    }
    xs.push_back(std::log(static_cast<double>(n_grid[j])));
    ys.push_back(std::log(values[j]));
  }
  fit.points_used = static_cast<int>(xs.size());
  if (xs.size() < 2) return fit;
  const double k = static_cast<double>(xs.size());
  double mx = 0.0, my = 0.0;
  for (std::size_t j = 0; j < xs.size(); ++j) {
    mx += xs[j];
    my += ys[j];
  }
  mx /= k;
  my /= k;
  double sxx = 0.0, sxy = 0.0;
  for (std::size_t j = 0; j < xs.size(); ++j) {
    sxx += (xs[j] - mx) * (xs[j] - mx);
    sxy += (xs[j] - mx) * (ys[j] - my);
  }
  if (sxx == 0.0) return fit;
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  double ss = 0.0;
  for (std::size_t j = 0; j < xs.size(); ++j) {
    const double e = ys[j] - (fit.slope * xs[j] + fit.intercept);
    ss += e * e;
  }
  fit.residual = std::sqrt(ss / k);
  fit.applicable = true;
  return fit;
}

/// "a:b" -> dyadic a, 2a, ..., up to b; "a,b,c" -> that list.
inline std::vector<int> parse_grid(const std::string& s) {
  std::vector<int> grid;
  try {
    const auto colon = s.find(':');
    if (colon != std::string::npos) {
      const int lo = std::stoi(s.substr(0, colon));
      const int hi = std::stoi(s.substr(colon + 1));
      if (lo < 1 || hi < lo) throw UsageError("grid range must satisfy 1 <= lo <= hi");
      for (long long n = lo; n <= hi; n *= 2) grid.push_back(static_cast<int>(n));
    } else {
      std::size_t pos = 0;
      while (pos <= s.size()) {
        const auto comma = s.find(',', pos);
        grid.push_back(std::stoi(s.substr(pos, comma - pos)));
        if (comma == std::string::npos) break;
        pos = comma + 1;
      }
    }
  } catch (const std::logic_error& e) {
    if (dynamic_cast<const UsageError*>(&e)) throw;
    throw UsageError("malformed grid '" + s + "' (expected lo:hi or a comma list)");
  }
  return grid;
}

/// Called after each grid point with (n, distance).
using ProgressFn = std::function<void(int, double)>;

struct RateReport {
  Direction direction = Direction::forward;
  SplineKind kind = SplineKind::s0;
  Boundary boundary = Boundary::periodic;
  int m = 0;
  std::vector<int> n_grid;
  std::vector<double> distances;
  std::vector<double> distance_errors;  // quadrature error estimates
  std::vector<double> bounds;           // explicit per-n bounds (forward only)
  std::vector<bool> members;            // sampled/generated p inside the discrete ball
  std::vector<double> norm_inflations;  // max_l ||f^{(l)}|| / alpha_l - 1 before rescaling (backward only)
  std::vector<double> deltas;           // rescaling factor (backward only)
  RateFit fit;
  RateFit inflation_fit;    // on positive inflations
  RateFit one_minus_delta;  // on positive 1 - delta
};

/// Checks f against every radius by integrating its analytic derivatives.
inline void validate_curve_in_ball(const CurveSpec& f, const MultiBallSpec& spec, VectorNorm inner) {
  spec.validate();
  if (f.boundary() != spec.boundary)
    throw UsageError(std::string("boundary mismatch: curve is ") + to_string(f.boundary()) + " but the ball is " +
                     to_string(spec.boundary));
  std::string violated;
  for (int r = 0; r <= spec.m; ++r) {
    const double v = curve_seminorm(f, r, spec.q, inner);
    const double a = spec.alpha[static_cast<std::size_t>(r)];
    if (v > a * (1.0 + 1e-9))
      violated += (violated.empty() ? "" : ", ") + ("order " + std::to_string(r) + " (" + std::to_string(v) + " > " +
                                                    std::to_string(a) + ")");
  }
  if (!violated.empty()) throw DomainError("curve is not in the Sobolev ball: violated " + violated);
}

/// Curve -> samples -> s0/s1: membership of the samples at every n, then d(f, s^kind(p)).
inline RateReport forward_rate(const CurveSpec& curve, const MultiBallSpec& spec, SplineKind kind,
                               const std::vector<int>& n_grid, VectorNorm inner = VectorNorm::euclidean,
                               double tol = kDefaultDistanceTol, const ProgressFn& progress = {}) {
  validate_curve_in_ball(curve, spec, inner);
  if (kind == SplineKind::s0 && spec.m < 1) throw DomainError("s0 rate needs m >= 1");
  if (kind == SplineKind::s1 && spec.m < 2) throw DomainError("s1 rate needs m >= 2");
  RateReport rep;
  rep.direction = Direction::forward;
  rep.kind = kind;
  rep.boundary = spec.boundary;
  rep.m = spec.m;
  rep.n_grid = n_grid;
  for (int n : n_grid) {
    const PointSeq p = sample_curve(curve, n);
    rep.members.push_back(membership(p, spec, inner).all_members());
    const auto dist = curve_distance(curve, discretize(p, kind), inner, tol);
    rep.distances.push_back(dist.value);
    rep.distance_errors.push_back(dist.quadrature_error_estimate);
    rep.bounds.push_back(kind == SplineKind::s0 ? spec.alpha[1] / n
                                                : spec.alpha[2] / (static_cast<double>(n) * n));
    if (progress) progress(n, dist.value);
  }
  if (n_grid.size() >= 3) rep.fit = fit_rate(n_grid, rep.distances);
  return rep;
}

/// Seeded generator of point families inside a discrete multiball.
///
/// Each coordinate is a random trigonometric series with frequencies
/// 1..ceil(n/8) and amplitudes N(0,1) / k^{m+2}; coefficient (c, k) depends
/// only on (seed, c, k), so growing n only appends frequencies. Open
/// families add a random linear drift so they are not periodic. The samples
/// are then scaled by one global factor so the tightest order sits on its
/// radius.
class BallPointGenerator {
 public:
  BallPointGenerator(std::uint64_t seed, int d = 2) : seed_(seed), d_(d) {
    if (d < 1) throw DomainError("generator dimension must be >= 1");
  }

  PointSeq generate(int n, const MultiBallSpec& spec, VectorNorm inner = VectorNorm::euclidean) const {
    spec.validate();
    if (n < spec.m + 1) throw DomainError("generator needs n > m");
    const int bandwidth = (n + 7) / 8;
    std::vector<double> data(static_cast<std::size_t>(n) * static_cast<std::size_t>(d_), 0.0);
    for (int c = 0; c < d_; ++c) {
      double drift = 0.0;
      if (spec.boundary == Boundary::open) drift = gaussian(c, 0, 0);
      for (int k = 1; k <= bandwidth; ++k) {
        const double decay = std::pow(static_cast<double>(k), -(spec.m + 2));
        const double a = gaussian(c, k, 0) * decay;
        const double b = gaussian(c, k, 1) * decay;
        for (int i = 0; i < n; ++i) {
          const double w = 2.0 * std::numbers::pi * k * i / n;
          data[static_cast<std::size_t>(i * d_ + c)] += a * std::cos(w) + b * std::sin(w);
        }
      }
      for (int i = 0; i < n; ++i) data[static_cast<std::size_t>(i * d_ + c)] += drift * i / n;
    }
    PointSeq p(n, d_, spec.boundary, std::move(data));
    double scale = std::numeric_limits<double>::infinity();
    for (int r = 0; r <= spec.m; ++r) {
      const double v = discrete_seminorm(p, r, spec.q, inner);
      if (v > 0.0) scale = std::min(scale, spec.alpha[static_cast<std::size_t>(r)] / v);
    }
    if (std::isfinite(scale)) p = p.scaled(scale);
    if (!membership(p, spec, inner).all_members())
      throw std::logic_error("generated point family fell outside the ball");
    return p;
  }

 private:
  // Standard normal from a stream keyed by (seed, coordinate, frequency, slot).
  double gaussian(int c, int k, int slot) const {
    std::seed_seq seq{static_cast<std::uint32_t>(seed_), static_cast<std::uint32_t>(seed_ >> 32),
                      static_cast<std::uint32_t>(c), static_cast<std::uint32_t>(k), static_cast<std::uint32_t>(slot)};
    std::mt19937_64 eng(seq);
    auto uniform = [&] { return (static_cast<double>(eng() >> 11) + 0.5) * 0x1.0p-53; };
    const double u1 = uniform();
    const double u2 = uniform();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
  }

  std::uint64_t seed_;
  int d_;
};

/// Smoothing witness for p: f_{sigma_m * p} (periodic) or its time-changed
/// open-boundary variant.
inline PiecewiseSpline smoothing_witness(const PointSeq& p, int m) {
  return p.periodic() ? smoothing_spline(p, m, true) : nonperiodic_smoothing(p, m);
}

/// Points in the ball -> smoothing witness -> rescaled into the ball ->
/// d(delta f, s^kind(p)), recording the inflation measured before rescaling.
inline RateReport backward_rate(const MultiBallSpec& spec, const BallPointGenerator& generator, SplineKind kind,
                                const std::vector<int>& n_grid, VectorNorm inner = VectorNorm::euclidean,
                                double tol = kDefaultDistanceTol, const ProgressFn& progress = {}) {
  spec.validate();
  if (spec.m < 1) throw DomainError("backward rate needs m >= 1");
  if (kind == SplineKind::s1 && spec.m < 2) throw DomainError("s1 rate needs m >= 2");
  RateReport rep;
  rep.direction = Direction::backward;
  rep.kind = kind;
  rep.boundary = spec.boundary;
  rep.m = spec.m;
  rep.n_grid = n_grid;
  std::vector<double> one_minus_delta;
  for (int n : n_grid) {
    const PointSeq p = generator.generate(n, spec, inner);
    rep.members.push_back(true);
    const PiecewiseSpline f = smoothing_witness(p, spec.m);
    double inflation = -std::numeric_limits<double>::infinity();
    for (int r = 0; r <= spec.m; ++r)
      inflation = std::max(inflation, continuous_seminorm(f, r, spec.q, inner) / spec.alpha[static_cast<std::size_t>(r)] - 1.0);
    const auto scaled = scale_into_ball(f, spec, inner);
    const auto dist = curve_distance(scaled.curve, discretize(p, kind), inner, tol);
    rep.distances.push_back(dist.value);
    rep.distance_errors.push_back(dist.quadrature_error_estimate);
    rep.norm_inflations.push_back(inflation);
    rep.deltas.push_back(scaled.delta);
    one_minus_delta.push_back(1.0 - scaled.delta);
    if (progress) progress(n, dist.value);
  }
  if (n_grid.size() >= 3) {
    rep.fit = fit_rate(n_grid, rep.distances);
    rep.inflation_fit = fit_rate(n_grid, rep.norm_inflations);
    rep.one_minus_delta = fit_rate(n_grid, one_minus_delta);
  }
  return rep;
}

}  // namespace eulerspline
