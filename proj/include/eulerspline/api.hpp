#pragma once

#include <cstdint>
#include <map>
#include <string>

#include "errors.hpp"
#include "experiments.hpp"
#include "io.hpp"
#include "metrics.hpp"
#include "sobolev.hpp"
#include "spline.hpp"

namespace eulerspline::api {

using io::json;

inline constexpr const char* kVersion = "1.0.0";
inline constexpr int kDefaultSamples = 256;
inline constexpr std::uint64_t kDefaultSeed = 42;

/// Degree-m smoothing of p: f_{sigma_m * p} (or f_p without the shift) for
/// periodic points, the time-changed variant for open ones, s0 for m = 0.
inline PiecewiseSpline smooth_points(const PointSeq& p, int m, bool shift = true) {
  require_exact_degree(m);
  if (p.periodic()) return smoothing_spline(p, m, shift);
  if (!shift) throw UsageError("the unshifted spline is only defined for periodic points");
  if (m == 0) return s0(p);
  return nonperiodic_smoothing(p, m);
}

/// Discrete norms of p and continuous norms of f for orders 0..m, with
/// membership against alpha when given.
inline NormReport smooth_norms(const PointSeq& p, const PiecewiseSpline& f, int m, double q,
                               const std::vector<double>& alpha, VectorNorm inner) {
  NormReport rep;
  if (!alpha.empty()) {
    rep = membership(p, MultiBallSpec{m, q, alpha, p.boundary()}, inner);
  } else {
    for (int r = 0; r <= m && (p.periodic() || r < p.n()); ++r) rep.discrete.push_back(discrete_seminorm(p, r, q, inner));
  }
  std::vector<double> cont;
  for (int r = 0; r <= m; ++r) cont.push_back(continuous_seminorm(f, r, q, inner));
  rep.continuous = std::move(cont);
  return rep;
}

inline VectorNorm inner_from(const json& body) {
  return parse_vector_norm(io::detail::get_or<std::string>(body, "inner", "euclidean"));
}

/// {points, m, samples?, shift?, q?, alpha?, inner?} ->
/// {curve, spline, norms, distance_s0, distance_s1, knot_continuity_order}.
inline json smooth(const json& body) {
  const PointSeq p = io::points_from_json(io::detail::field(body, "points"));
  const int m = io::detail::get_int(body, "m");
  const int samples = io::detail::get_or<int>(body, "samples", kDefaultSamples);
  if (samples < 2) throw DomainError("samples must be >= 2");
  const bool shift = io::detail::get_or<bool>(body, "shift", true);
  const double q = io::detail::get_or<double>(body, "q", 2.0);
  std::vector<double> alpha;
  if (body.contains("alpha") && !body.at("alpha").is_null()) alpha = io::detail::double_list(body.at("alpha"), "'alpha'");
  const VectorNorm inner = inner_from(body);
  const PiecewiseSpline f = smooth_points(p, m, shift);
  return {{"curve", io::sample_rows(f, samples)},
          {"spline", io::to_json(f)},
          {"norms", io::to_json(smooth_norms(p, f, m, q, alpha, inner))},
          {"distance_s0", curve_distance(f, s0(p), inner).value},
          {"distance_s1", curve_distance(f, s1(p), inner).value},
          {"knot_continuity_order", m - 1}};
}

/// {curve, n, kind, samples?} -> {points, spline, curve}.
inline json discretize(const json& body) {
  const CurveSpec c = io::curve_from_json(io::detail::field(body, "curve"));
  const int n = io::detail::get_int(body, "n");
  if (n < 1) throw DomainError("n must be >= 1");
  const SplineKind kind = parse_spline_kind(io::detail::get_or<std::string>(body, "kind", "s0"));
  const int samples = io::detail::get_or<int>(body, "samples", kDefaultSamples);
  const PointSeq p = sample_curve(c, n);
  const PiecewiseSpline s = eulerspline::discretize(p, kind);
  return {{"points", io::to_json(p)}, {"spline", io::to_json(s)}, {"curve", io::sample_rows(s, samples)}};
}

inline json kernel(int m, bool compose_sigma) { return io::kernel_json(m, compose_sigma); }

/// {m, q?, alpha, periodic?} plus either points (discrete report) or a spline (continuous).
inline json norms(const json& body) {
  const int m = io::detail::get_int(body, "m");
  const double q = io::detail::get_or<double>(body, "q", 2.0);
  const VectorNorm inner = inner_from(body);
  std::vector<double> alpha;
  if (body.contains("alpha") && !body.at("alpha").is_null()) alpha = io::detail::double_list(body.at("alpha"), "'alpha'");
  const PointSeq p = io::points_from_json(io::detail::field(body, "points"));
  NormReport rep;
  if (!alpha.empty()) {
    rep = membership(p, MultiBallSpec{m, q, alpha, p.boundary()}, inner);
  } else {
    if (m < 0) throw DomainError("m must be >= 0");
    for (int r = 0; r <= m; ++r) rep.discrete.push_back(discrete_seminorm(p, r, q, inner));
  }
  return io::to_json(rep);
}

inline json distance(const json& a, const json& b, double tol = kDefaultDistanceTol,
                     VectorNorm inner = VectorNorm::euclidean) {
  return io::to_json(curve_distance(io::any_curve_from_json(a), io::any_curve_from_json(b), inner, tol));
}

/// {direction, kind, grid, seed?, ball, curve?} -> RateReport. Forward runs
/// need the curve; backward runs generate points from the seed.
inline RateReport rates_report(const json& body, const ProgressFn& progress = {}) {
  const std::string dir = io::detail::get_or<std::string>(body, "direction", "fwd");
  const SplineKind kind = parse_spline_kind(io::detail::get_or<std::string>(body, "kind", "s0"));
  const auto grid_field = io::detail::field(body, "grid");
  std::vector<int> grid;
  if (grid_field.is_string()) {
    grid = parse_grid(grid_field.get<std::string>());
  } else if (grid_field.is_array()) {
    for (const auto& g : grid_field) {
      if (!g.is_number_integer()) throw UsageError("'grid' entries must be integers");
      grid.push_back(g.get<int>());
    }
  } else {
    throw UsageError("'grid' must be a string like \"16:1024\" or an array");
  }
  const VectorNorm inner = inner_from(body);
  const MultiBallSpec ball = io::ball_from_json(io::detail::field(body, "ball"));
  if (dir == "fwd" || dir == "forward")
    return forward_rate(io::curve_from_json(io::detail::field(body, "curve")), ball, kind, grid, inner,
                        kDefaultDistanceTol, progress);
  if (dir == "bwd" || dir == "backward") {
    const auto seed = io::detail::get_or<std::uint64_t>(body, "seed", kDefaultSeed);
    const int d = io::detail::get_or<int>(body, "d", 2);
    return backward_rate(ball, BallPointGenerator(seed, d), kind, grid, inner, kDefaultDistanceTol, progress);
  }
  throw UsageError("unknown direction '" + dir + "' (expected fwd or bwd)");
}

inline json rates(const json& body) { return io::to_json(rates_report(body)); }

inline json health() { return {{"status", "ok"}, {"version", kVersion}}; }

struct Response {
  int status = 200;
  json body;
};

/// Maps an exception to a status and an {"error": ...} body.
inline Response error_response(const std::exception& e) {
  if (dynamic_cast<const DomainError*>(&e) || dynamic_cast<const NonFiniteError*>(&e))
    return {422, {{"error", e.what()}, {"kind", "precondition"}}};
  if (dynamic_cast<const UsageError*>(&e)) return {400, {{"error", e.what()}, {"kind", "malformed"}}};
  return {500, {{"error", e.what()}, {"kind", "internal"}}};
}

/// Routes one request without any transport; the HTTP server is a thin shell
/// around this.
inline Response handle(const std::string& method, const std::string& path,
                       const std::map<std::string, std::string>& query, const std::string& body) {
  try {
    if (method == "GET" && path == "/api/health") return {200, health()};
    if (method == "GET" && path == "/api/kernel") {
      const auto it = query.find("m");
      if (it == query.end()) throw UsageError("missing query parameter 'm'");
      int m = 0;
      try {
        std::size_t used = 0;
        m = std::stoi(it->second, &used);
        if (used != it->second.size()) throw std::invalid_argument("trailing characters");
      } catch (const std::logic_error&) {
        throw UsageError("query parameter 'm' must be an integer");
      }
      const auto c = query.find("compose");
      const bool sigma = c != query.end() && c->second == "sigma";
      return {200, kernel(m, sigma)};
    }
    if (method == "POST") {
      if (path == "/api/smooth") return {200, smooth(io::parse(body, "request body"))};
      if (path == "/api/discretize") return {200, discretize(io::parse(body, "request body"))};
      if (path == "/api/rates") return {200, rates(io::parse(body, "request body"))};
      if (path == "/api/norms") return {200, norms(io::parse(body, "request body"))};
      if (path == "/api/distance") {
        const json j = io::parse(body, "request body");
        return {200, distance(io::detail::field(j, "a"), io::detail::field(j, "b"),
                              io::detail::get_or<double>(j, "tol", kDefaultDistanceTol), inner_from(j))};
      }
    }
    return {404, {{"error", "no route for " + method + " " + path}, {"kind", "not_found"}}};
  } catch (const std::exception& e) {
    return error_response(e);
  }
}

}  // namespace eulerspline::api
