#pragma once

#include <algorithm>
#include <cmath>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "curve.hpp"
#include "errors.hpp"
#include "point_seq.hpp"
#include "quadrature.hpp"
#include "spline.hpp"

namespace eulerspline {

/// Anything with a dimension, eval_into(t, out) and outer-time breakpoints.
template <typename C>
concept TimeCurve = requires(const C& c, double t, std::span<double> out) {
  c.eval_into(t, out);
  { c.breakpoints() } -> std::convertible_to<std::vector<double>>;
};

/// Either representation, for callers that pick at run time.
using AnyCurve = std::variant<PiecewiseSpline, CurveSpec>;

inline int curve_dim(const PiecewiseSpline& f) { return f.d(); }
inline int curve_dim(const CurveSpec& f) { return f.dim(); }

struct DistanceResult {
  double value = 0.0;
  double quadrature_error_estimate = 0.0;
  int segments_used = 0;
  VectorNorm inner_norm = VectorNorm::euclidean;
};

inline constexpr double kDefaultDistanceTol = 1e-8;

namespace detail {

/// Union of breakpoints, with near-duplicates (closer than 1e-14) merged.
inline std::vector<double> merge_breakpoints(std::vector<double> a, const std::vector<double>& b) {
  a.insert(a.end(), b.begin(), b.end());
  a.push_back(0.0);
  a.push_back(1.0);
  for (double& x : a) x = std::clamp(x, 0.0, 1.0);
  std::sort(a.begin(), a.end());
  std::vector<double> out;
  for (double x : a)
    if (out.empty() || x - out.back() > 1e-14) out.push_back(x);
  out.back() = 1.0;
  return out;
}

}  // namespace detail

/// d(f, g) = int_0^1 ||f(t) - g(t)|| dt over the common breakpoint
/// refinement; each piece is bisected adaptively until halves and whole agree
/// within its share tol / pieces.
template <TimeCurve F, TimeCurve G>
DistanceResult curve_distance(const F& f, const G& g, VectorNorm inner = VectorNorm::euclidean,
                              double tol = kDefaultDistanceTol) {
  if (!(tol > 0.0)) throw DomainError("distance tolerance must be positive");
  const int d = curve_dim(f);
  if (d != curve_dim(g))
    throw UsageError("curves have different dimensions (" + std::to_string(d) + " vs " + std::to_string(curve_dim(g)) +
                     ")");
  const auto breaks = detail::merge_breakpoints(f.breakpoints(), g.breakpoints());
  const int pieces = static_cast<int>(breaks.size()) - 1;
  std::vector<double> fv(static_cast<std::size_t>(d)), gv(fv.size());
  auto integrand = [&](double t) {
    f.eval_into(t, fv);
    g.eval_into(t, gv);
    for (std::size_t c = 0; c < fv.size(); ++c) {
      fv[c] -= gv[c];
      if (!std::isfinite(fv[c]))
        throw NonFiniteError("non-finite curve value at t = " + std::to_string(t), t);
    }
    return vector_norm(fv, inner);
  };
  DistanceResult res;
  res.inner_norm = inner;
  const double share = tol / std::max(1, pieces);
  for (int j = 0; j < pieces; ++j) {
    const auto r = quadrature::gauss16_adaptive(integrand, breaks[static_cast<std::size_t>(j)],
                                                breaks[static_cast<std::size_t>(j + 1)], share);
    res.value += r.value;
    res.quadrature_error_estimate += r.error;
    res.segments_used += r.pieces;
  }
  res.value = std::max(0.0, res.value);
  return res;
}

inline DistanceResult curve_distance(const AnyCurve& f, const AnyCurve& g, VectorNorm inner = VectorNorm::euclidean,
                                     double tol = kDefaultDistanceTol) {
  return std::visit([&](const auto& a, const auto& b) { return curve_distance(a, b, inner, tol); }, f, g);
}

/// Upper bound on W^1 between the time-lifted pushforward measures, from the
/// coupling that pairs equal times. Same number as curve_distance, never tight
/// by claim.
template <typename F, typename G>
double w1_upper_bound(const F& f, const G& g, VectorNorm inner = VectorNorm::euclidean,
                      double tol = kDefaultDistanceTol) {
  return curve_distance(f, g, inner, tol).value;
}

}  // namespace eulerspline
