#pragma once

#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "curve.hpp"
#include "errors.hpp"
#include "eulerian.hpp"
#include "experiments.hpp"
#include "kernel.hpp"
#include "metrics.hpp"
#include "point_seq.hpp"
#include "sobolev.hpp"
#include "spline.hpp"

namespace eulerspline::io {

using json = nlohmann::json;

/// Integers beyond int64 are written as decimal strings.
inline json big_int(int128 v) {
  if (v >= std::numeric_limits<std::int64_t>::min() && v <= std::numeric_limits<std::int64_t>::max())
    return static_cast<std::int64_t>(v);
  return to_string(v);
}

/// NaN and infinities become null.
inline json number(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

inline json parse(const std::string& text, const std::string& what = "input") {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw UsageError("malformed JSON in " + what + " at byte " + std::to_string(e.byte) + ": " + e.what());
  }
}

namespace detail {

inline const json& field(const json& j, const char* key) {
  if (!j.is_object()) throw UsageError("expected a JSON object");
  const auto it = j.find(key);
  if (it == j.end()) throw UsageError(std::string("missing field '") + key + "'");
  return *it;
}

template <typename T>
T get(const json& j, const char* key) {
  const json& v = field(j, key);
  try {
    return v.get<T>();
  } catch (const json::exception&) {
    throw UsageError(std::string("field '") + key + "' has the wrong type");
  }
}

template <typename T>
T get_or(const json& j, const char* key, T fallback) {
  if (!j.is_object() || !j.contains(key) || j.at(key).is_null()) return fallback;
  return get<T>(j, key);
}

inline int get_int(const json& j, const char* key) {
  const json& v = field(j, key);
  if (!v.is_number_integer()) throw UsageError(std::string("field '") + key + "' must be an integer");
  return v.get<int>();
}

inline double get_double(const json& v, const std::string& what) {
  if (!v.is_number()) throw UsageError(what + " must be a number");
  return v.get<double>();
}

inline std::vector<double> double_list(const json& v, const std::string& what) {
  if (!v.is_array()) throw UsageError(what + " must be an array of numbers");
  std::vector<double> out;
  out.reserve(v.size());
  for (const auto& x : v) out.push_back(get_double(x, what));
  return out;
}

}  // namespace detail

// ---- points ----------------------------------------------------------------

inline json to_json(const PointSeq& p) {
  json pts = json::array();
  for (int i = 0; i < p.n(); ++i) pts.push_back(std::vector<double>(p[i].begin(), p[i].end()));
  return {{"version", 1}, {"n", p.n()}, {"d", p.d()}, {"periodic", p.periodic()}, {"points", pts}};
}

/// Reads a points document; shapes must match n and d and values must be finite.
inline PointSeq points_from_json(const json& j) {
  const int version = detail::get_or<int>(j, "version", 1);
  if (version != 1) throw UsageError("unsupported points file version " + std::to_string(version));
  const json& pts = detail::field(j, "points");
  if (!pts.is_array() || pts.empty()) throw UsageError("'points' must be a non-empty array");
  const int n = j.contains("n") ? detail::get_int(j, "n") : static_cast<int>(pts.size());
  if (n != static_cast<int>(pts.size()))
    throw UsageError("'n' is " + std::to_string(n) + " but 'points' has " + std::to_string(pts.size()) + " rows");
  const int d = j.contains("d") ? detail::get_int(j, "d") : static_cast<int>(pts[0].is_array() ? pts[0].size() : 0);
  if (d < 1) throw UsageError("'d' must be >= 1");
  std::vector<double> data;
  data.reserve(static_cast<std::size_t>(n) * static_cast<std::size_t>(d));
  for (std::size_t i = 0; i < pts.size(); ++i) {
    const auto row = detail::double_list(pts[i], "point " + std::to_string(i));
    if (static_cast<int>(row.size()) != d)
      throw UsageError("point " + std::to_string(i) + " has " + std::to_string(row.size()) + " coordinates, expected " +
                       std::to_string(d));
    data.insert(data.end(), row.begin(), row.end());
  }
  const bool periodic = detail::get_or<bool>(j, "periodic", true);
  return PointSeq(n, d, periodic ? Boundary::periodic : Boundary::open, std::move(data));
}

// ---- splines ---------------------------------------------------------------

/// coefficients[i][k] is the d-vector a_{i,k} of segment i.
inline json to_json(const PiecewiseSpline& f) {
  json coeffs = json::array();
  for (int i = 0; i < f.n(); ++i) {
    json seg = json::array();
    for (int k = 0; k <= f.degree(); ++k) {
      const auto c = f.coeff(i, k);
      seg.push_back(std::vector<double>(c.begin(), c.end()));
    }
    coeffs.push_back(std::move(seg));
  }
  json reparam = nullptr;
  if (f.reparam()) reparam = {{"theta", f.reparam()->theta}, {"tau", f.reparam()->tau}};
  return {{"n", f.n()},
          {"d", f.d()},
          {"degree", f.degree()},
          {"boundary", to_string(f.boundary())},
          {"reparam", reparam},
          {"coefficients", coeffs}};
}

inline Boundary parse_boundary(const std::string& s) {
  if (s == "periodic") return Boundary::periodic;
  if (s == "open") return Boundary::open;
  throw UsageError("unknown boundary '" + s + "' (expected periodic or open)");
}

inline PiecewiseSpline spline_from_json(const json& j) {
  const int n = detail::get_int(j, "n");
  const int d = detail::get_int(j, "d");
  const int degree = detail::get_int(j, "degree");
  if (n < 1 || d < 1 || degree < 0) throw UsageError("spline needs n >= 1, d >= 1 and degree >= 0");
  const Boundary b = parse_boundary(detail::get_or<std::string>(j, "boundary", "periodic"));
  const json& cs = detail::field(j, "coefficients");
  if (!cs.is_array() || static_cast<int>(cs.size()) != n)
    throw UsageError("'coefficients' must have one entry per segment");
  std::vector<double> data;
  data.reserve(static_cast<std::size_t>(n) * static_cast<std::size_t>(degree + 1) * static_cast<std::size_t>(d));
  for (std::size_t i = 0; i < cs.size(); ++i) {
    if (!cs[i].is_array() || static_cast<int>(cs[i].size()) != degree + 1)
      throw UsageError("segment " + std::to_string(i) + " needs degree + 1 coefficient vectors");
    for (const auto& v : cs[i]) {
      const auto row = detail::double_list(v, "coefficient of segment " + std::to_string(i));
      if (static_cast<int>(row.size()) != d) throw UsageError("coefficient vectors must have d entries");
      for (double x : row)
        if (!std::isfinite(x)) throw DomainError("spline coefficients must be finite");
      data.insert(data.end(), row.begin(), row.end());
    }
  }
  std::optional<Reparam> reparam;
  if (j.contains("reparam") && !j.at("reparam").is_null()) {
    const json& r = j.at("reparam");
    reparam = Reparam{detail::get<double>(r, "theta"), detail::get<double>(r, "tau")};
  }
  return PiecewiseSpline(n, d, degree, b, std::move(data), reparam);
}

// ---- curves ----------------------------------------------------------------

inline json to_json(const CurveSpec& c) {
  switch (c.family()) {
    case CurveSpec::Family::trigonometric: {
      json dims = json::array();
      for (const auto& t : c.trig_dims()) dims.push_back({{"constant", t.constant}, {"cos", t.cos}, {"sin", t.sin}});
      return {{"type", "trigonometric"}, {"periodic", c.periodic()}, {"dims", dims}};
    }
    case CurveSpec::Family::polynomial:
      return {{"type", "polynomial"}, {"periodic", c.periodic()}, {"coefficients", c.poly_coefficients()}};
    default:
      throw UsageError("callable curves have no JSON form");
  }
}

/// {"type": "circle", "radius": r}, {"type": "trigonometric", "dims": [...]}
/// or {"type": "polynomial", "coefficients": [[...], ...]}.
inline CurveSpec curve_from_json(const json& j) {
  const auto type = detail::get<std::string>(j, "type");
  if (type == "circle") return CurveSpec::circle(detail::get_or<double>(j, "radius", 1.0));
  if (type == "trigonometric") {
    const json& dims = detail::field(j, "dims");
    if (!dims.is_array() || dims.empty()) throw UsageError("'dims' must be a non-empty array");
    std::vector<CurveSpec::TrigDim> out;
    for (const auto& dj : dims) {
      CurveSpec::TrigDim t;
      t.constant = detail::get_or<double>(dj, "constant", 0.0);
      if (dj.contains("cos")) t.cos = detail::double_list(dj.at("cos"), "'cos'");
      if (dj.contains("sin")) t.sin = detail::double_list(dj.at("sin"), "'sin'");
      out.push_back(std::move(t));
    }
    return CurveSpec::trigonometric(std::move(out), detail::get_or<bool>(j, "periodic", true));
  }
  if (type == "polynomial") {
    const json& cs = detail::field(j, "coefficients");
    if (!cs.is_array() || cs.empty()) throw UsageError("'coefficients' must be a non-empty array");
    std::vector<std::vector<double>> out;
    for (const auto& row : cs) out.push_back(detail::double_list(row, "polynomial coefficients"));
    return CurveSpec::polynomial(std::move(out), detail::get_or<bool>(j, "periodic", false));
  }
  throw UsageError("unknown curve type '" + type + "' (expected circle, trigonometric or polynomial)");
}

/// A spline dump, a document with a "spline" member, or a curve spec.
inline AnyCurve any_curve_from_json(const json& j) {
  if (!j.is_object()) throw UsageError("expected a JSON object describing a curve");
  if (j.contains("spline")) return spline_from_json(j.at("spline"));
  if (j.contains("coefficients") && j.contains("degree")) return spline_from_json(j);
  if (j.contains("type")) return curve_from_json(j);
  throw UsageError("document is neither a spline dump nor a curve spec");
}

// ---- balls and reports -----------------------------------------------------

inline json to_json(const MultiBallSpec& s) {
  return {{"m", s.m}, {"q", s.q}, {"alpha", s.alpha}, {"periodic", s.boundary == Boundary::periodic}};
}

inline MultiBallSpec ball_from_json(const json& j) {
  MultiBallSpec s;
  s.m = detail::get_int(j, "m");
  s.q = detail::get_or<double>(j, "q", 2.0);
  s.alpha = detail::double_list(detail::field(j, "alpha"), "'alpha'");
  s.boundary = detail::get_or<bool>(j, "periodic", true) ? Boundary::periodic : Boundary::open;
  s.validate();
  return s;
}

inline json to_json(const NormReport& r) {
  json j = {{"discrete", r.discrete}};
  j["continuous"] = r.continuous ? json(*r.continuous) : json(nullptr);
  if (!r.alpha.empty()) {
    j["alpha"] = r.alpha;
    j["member"] = r.member;
    j["slack"] = r.slack;
    j["all_members"] = r.all_members();
  }
  return j;
}

inline json to_json(const DistanceResult& d) {
  return {{"value", d.value},
          {"quadrature_error_estimate", d.quadrature_error_estimate},
          {"segments_used", d.segments_used},
          {"inner_norm", to_string(d.inner_norm)}};
}

inline json to_json(const RateFit& f) {
  return {{"slope", number(f.slope)},
          {"intercept", number(f.intercept)},
          {"residual", number(f.residual)},
          {"points_used", f.points_used},
          {"filtered", f.filtered},
          {"applicable", f.applicable}};
}

inline json to_json(const RateReport& r) {
  json j = {{"direction", to_string(r.direction)},
            {"spline_kind", to_string(r.kind)},
            {"boundary", to_string(r.boundary)},
            {"m", r.m},
            {"n_grid", r.n_grid},
            {"distances", r.distances},
            {"distance_errors", r.distance_errors},
            {"members", r.members},
            {"slope", number(r.fit.slope)},
            {"intercept", number(r.fit.intercept)},
            {"residual", number(r.fit.residual)},
            {"fit", to_json(r.fit)}};
  if (r.direction == Direction::forward) {
    j["bounds"] = r.bounds;
  } else {
    j["norm_inflations"] = r.norm_inflations;
    j["deltas"] = r.deltas;
    j["inflation_fit"] = to_json(r.inflation_fit);
    j["one_minus_delta_fit"] = to_json(r.one_minus_delta);
  }
  return j;
}

/// Columns n, distance, inflation, delta, slope; inflation and delta are
/// empty for forward runs.
inline std::string to_csv(const RateReport& r) {
  std::ostringstream os;
  os.precision(17);
  os << "n,distance,inflation,delta,slope\n";
  for (std::size_t j = 0; j < r.n_grid.size(); ++j) {
    os << r.n_grid[j] << ',' << r.distances[j] << ',';
    if (j < r.norm_inflations.size()) os << r.norm_inflations[j];
    os << ',';
    if (j < r.deltas.size()) os << r.deltas[j];
    os << ',';
    if (r.fit.applicable) os << r.fit.slope;
    os << '\n';
  }
  return os.str();
}

// ---- exact tables ----------------------------------------------------------

inline json eulerian_json(int m) {
  const auto row = eulerian_row(m);
  json vals = json::array();
  for (auto v : row.values) vals.push_back(big_int(v));
  return {{"m", m}, {"row", vals}};
}

/// Coefficients over a window that always contains index 0.
inline json kernel_json(const Kernel& k) {
  const int lo = std::min(0, k.lo());
  const int hi = std::max(0, k.hi());
  int128 den = 1;
  for (int i = lo; i <= hi; ++i) {
    const int128 b = k.at(i).den();
    den = eulerspline::detail::checked_mul(den / eulerspline::detail::gcd128(den, b), b);
  }
  json nums = json::array();
  json rationals = json::array();
  for (int i = lo; i <= hi; ++i) {
    const Rational c = k.at(i);
    nums.push_back(big_int(c.num() * (den / c.den())));
    rationals.push_back(c.str());
  }
  return {{"tag", k.tag()}, {"lo", lo}, {"hi", hi}, {"numerators", nums}, {"denominator", big_int(den)},
          {"coefficients", rationals}};
}

inline json kernel_json(int m, bool compose_sigma) {
  const auto sk = smoothing_kernel(m);
  if (!compose_sigma) {
    json j = kernel_json(sk.kernel);
    j["m"] = m;
    return j;
  }
  if (m < 1) throw DomainError("sigma composition needs m >= 1");
  json j = kernel_json(compose(sk.kernel, sigma_shift(m)).set_tag("C^" + std::to_string(m) + " * sigma_" +
                                                                   std::to_string(m)));
  j["m"] = m;
  return j;
}

// ---- sampling --------------------------------------------------------------

/// Rows [t, x_1..x_d] at t = j / (samples - 1), j = 0..samples-1.
template <TimeCurve C>
json sample_rows(const C& f, int samples) {
  if (samples < 2) throw DomainError("samples must be >= 2");
  const int d = curve_dim(f);
  std::vector<double> v(static_cast<std::size_t>(d));
  json rows = json::array();
  for (int j = 0; j < samples; ++j) {
    const double t = static_cast<double>(j) / (samples - 1);
    f.eval_into(t, v);
    std::vector<double> row{t};
    row.insert(row.end(), v.begin(), v.end());
    rows.push_back(std::move(row));
  }
  return rows;
}

inline std::string rows_to_csv(const json& rows) {
  std::ostringstream os;
  os.precision(17);
  if (!rows.empty()) {
    os << 't';
    for (std::size_t c = 1; c < rows[0].size(); ++c) os << ",x" << c;
    os << '\n';
  }
  for (const auto& r : rows) {
    for (std::size_t c = 0; c < r.size(); ++c) os << (c ? "," : "") << r[c].get<double>();
    os << '\n';
  }
  return os.str();
}

}  // namespace eulerspline::io
