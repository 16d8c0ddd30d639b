#include <cmath>
#include <numbers>
#include <string>

#include <gtest/gtest.h>

#include "eulerspline/api.hpp"

using namespace eulerspline;
using io::json;

namespace {

json square_points(bool periodic = true, int n = 9) {
  json pts = json::array();
  for (int i = 0; i < n; ++i) {
    const double a = 2 * std::numbers::pi * i / n;
    pts.push_back({std::cos(a), std::sin(2 * a)});
  }
  return {{"version", 1}, {"n", n}, {"d", 2}, {"periodic", periodic}, {"points", pts}};
}

}  // namespace

TEST(Io, BigIntegersBecomeStrings) {
  EXPECT_EQ(io::big_int(42), json(42));
  const int128 huge = static_cast<int128>(1) << 80;
  EXPECT_EQ(io::big_int(huge), json("1208925819614629174706176"));
  const auto k = io::kernel_json(30, false);
  EXPECT_TRUE(k["denominator"].is_string());
  EXPECT_EQ(k["denominator"], json(to_string(factorial(30))));
}

TEST(Io, EulerianAndKernelDocuments) {
  EXPECT_EQ(io::eulerian_json(4).dump(), R"({"m":4,"row":[1,11,11,1]})");
  const auto k = io::kernel_json(3, false);
  EXPECT_EQ(k["numerators"], json({0, 1, 4, 1}));
  EXPECT_EQ(k["denominator"], json(6));
  EXPECT_EQ(k["coefficients"], json({"0", "1/6", "2/3", "1/6"}));
  const auto ks = io::kernel_json(2, true);
  EXPECT_EQ(ks["lo"], json(-1));
  EXPECT_EQ(ks["numerators"], json({1, 2, 1}));
  EXPECT_EQ(ks["denominator"], json(4));
}

TEST(Io, PointsRoundTrip) {
  const auto p = io::points_from_json(square_points());
  const auto again = io::points_from_json(io::parse(io::to_json(p).dump()));
  EXPECT_EQ(p.data(), again.data());
  EXPECT_EQ(again.boundary(), Boundary::periodic);
}

TEST(Io, PointsValidation) {
  auto j = square_points();
  j["n"] = 4;
  EXPECT_THROW(io::points_from_json(j), UsageError);
  j = square_points();
  j["points"][2] = json({1.0});
  EXPECT_THROW(io::points_from_json(j), UsageError);
  j = square_points();
  j["version"] = 2;
  EXPECT_THROW(io::points_from_json(j), UsageError);
  EXPECT_THROW(io::parse("{\"points\": [1, 2"), UsageError);
}

TEST(Io, SplineRoundTripIsExact) {
  const auto p = io::points_from_json(square_points(false, 80));
  const auto f = nonperiodic_smoothing(p, 2);
  const auto g = io::spline_from_json(io::parse(io::to_json(f).dump()));
  EXPECT_EQ(f.coeffs(), g.coeffs());
  ASSERT_TRUE(g.reparam().has_value());
  EXPECT_EQ(*f.reparam(), *g.reparam());
  EXPECT_EQ(g.boundary(), Boundary::open);
}

TEST(Io, CurveRoundTrip) {
  const auto c = CurveSpec::trigonometric({{0.5, {1.0, 0.25}, {}}, {0.0, {}, {1.0}}}, true);
  const auto again = io::curve_from_json(io::parse(io::to_json(c).dump()));
  for (double t : {0.0, 0.3, 0.77}) EXPECT_EQ(c(t, 2), again(t, 2));
  EXPECT_THROW(io::curve_from_json(json{{"type", "spiral"}}), UsageError);
  const auto circle = io::curve_from_json(json{{"type", "circle"}, {"radius", 2.0}});
  EXPECT_NEAR(circle(0.25)[1], 2.0, 1e-15);
}

TEST(Io, RateReportCsv) {
  RateReport r;
  r.n_grid = {16, 32, 64};
  r.distances = {0.1, 0.05, 0.025};
  r.fit = fit_rate(r.n_grid, r.distances);
  const auto csv = io::to_csv(r);
  EXPECT_EQ(csv.substr(0, csv.find('\n')), "n,distance,inflation,delta,slope");
  EXPECT_NE(csv.find("16,0.10000000000000001,,,-1"), std::string::npos);
}

TEST(Api, SmoothResponseShape) {
  const auto res = api::smooth({{"points", square_points()}, {"m", 3}, {"samples", 11}, {"alpha", {1, 10, 100, 1000}}});
  EXPECT_EQ(res["curve"].size(), 11u);
  EXPECT_EQ(res["curve"][0].size(), 3u);
  EXPECT_EQ(res["spline"]["degree"], json(3));
  EXPECT_EQ(res["knot_continuity_order"], json(2));
  EXPECT_EQ(res["norms"]["discrete"].size(), 4u);
  EXPECT_EQ(res["norms"]["continuous"].size(), 4u);
  EXPECT_EQ(res["norms"]["member"].size(), 4u);
  EXPECT_GT(res["distance_s0"].get<double>(), 0.0);
}

TEST(Api, SmoothConstantPoints) {
  json pts = json::array();
  for (int i = 0; i < 12; ++i) pts.push_back({0.3, 0.6});
  const auto res = api::smooth({{"points", {{"points", pts}}}, {"m", 4}, {"samples", 40}});
  for (const auto& row : res["curve"]) {
    EXPECT_EQ(row[1], res["curve"][0][1]);
    EXPECT_EQ(row[2], res["curve"][0][2]);
  }
  for (int l = 1; l <= 4; ++l) {
    EXPECT_EQ(res["norms"]["discrete"][static_cast<std::size_t>(l)].get<double>(), 0.0);
    EXPECT_EQ(res["norms"]["continuous"][static_cast<std::size_t>(l)].get<double>(), 0.0);
  }
}

TEST(Api, SmoothIsDeterministic) {
  const json body = {{"points", square_points()}, {"m", 2}};
  EXPECT_EQ(api::smooth(body).dump(), api::smooth(body).dump());
}

TEST(Api, DegreeOneMatchesS1) {
  const json body = {{"points", square_points()}, {"m", 1}};
  EXPECT_LE(api::smooth(body)["distance_s1"].get<double>(), 1e-12);
}

TEST(Api, DistanceBetweenDocuments) {
  const auto sm = api::smooth({{"points", square_points()}, {"m", 1}});
  const auto p = io::points_from_json(square_points());
  const json s1doc = {{"spline", io::to_json(s1(p))}};
  EXPECT_LE(api::distance(sm, s1doc, 1e-12)["value"].get<double>(), 1e-12);
  const auto circ = api::distance(json{{"type", "circle"}}, json{{"type", "circle"}, {"radius", 2.0}});
  EXPECT_NEAR(circ["value"].get<double>(), 1.0, 1e-12);
}

TEST(Api, ErrorMapping) {
  const auto too_big = api::handle("POST", "/api/smooth", {}, json{{"points", square_points()}, {"m", 40}}.dump());
  EXPECT_EQ(too_big.status, 422);
  EXPECT_NE(too_big.body["error"].get<std::string>().find("degree exceeds exact range"), std::string::npos);
  const auto small = api::handle("POST", "/api/smooth", {}, json{{"points", square_points(true, 3)}, {"m", 2}}.dump());
  EXPECT_EQ(small.status, 422);
  EXPECT_NE(small.body["error"].get<std::string>().find("n too small"), std::string::npos);
  EXPECT_EQ(api::handle("POST", "/api/smooth", {}, "{not json").status, 400);
  EXPECT_EQ(api::handle("POST", "/api/smooth", {}, "{\"m\": 2}").status, 400);
  EXPECT_EQ(api::handle("GET", "/api/kernel", {{"m", "x"}}, "").status, 400);
  EXPECT_EQ(api::handle("GET", "/api/nothing", {}, "").status, 404);
}

TEST(Api, KernelAndHealth) {
  const auto k = api::handle("GET", "/api/kernel", {{"m", "3"}}, "");
  EXPECT_EQ(k.status, 200);
  EXPECT_EQ(k.body["numerators"], json({0, 1, 4, 1}));
  EXPECT_EQ(k.body["denominator"], json(6));
  EXPECT_EQ(api::handle("GET", "/api/kernel", {{"m", "33"}}, "").status, 422);
  const auto h = api::handle("GET", "/api/health", {}, "");
  EXPECT_EQ(h.body["version"], json(api::kVersion));
}

TEST(Api, RatesForwardAndBackward) {
  const json ball = {{"m", 2}, {"q", 2}, {"alpha", {1, 2 * std::numbers::pi, 4 * std::numbers::pi * std::numbers::pi}}};
  const auto fwd = api::rates({{"direction", "fwd"}, {"kind", "s1"}, {"grid", "16:128"}, {"ball", ball},
                               {"curve", {{"type", "circle"}}}});
  EXPECT_EQ(fwd["n_grid"], json({16, 32, 64, 128}));
  EXPECT_LE(fwd["slope"].get<double>(), -1.9);
  const auto bwd = api::rates({{"direction", "bwd"}, {"kind", "s0"}, {"grid", json({16, 32, 64})}, {"ball", ball},
                               {"seed", 9}});
  EXPECT_EQ(bwd["norm_inflations"].size(), 3u);
  EXPECT_TRUE(bwd["one_minus_delta_fit"]["slope"].is_null());
}

TEST(Api, OpenPointsSmooth) {
  const auto res = api::smooth({{"points", square_points(false, 60)}, {"m", 2}, {"samples", 5}});
  EXPECT_FALSE(res["spline"]["reparam"].is_null());
  EXPECT_EQ(api::handle("POST", "/api/smooth", {},
                        json{{"points", square_points(false, 60)}, {"m", 2}, {"shift", false}}.dump())
                .status,
            400);
}
