#include <cmath>
#include <limits>
#include <numbers>
#include <random>
#include <vector>

#include <gtest/gtest.h>

#include "eulerspline/metrics.hpp"
#include "eulerspline/quadrature.hpp"

using namespace eulerspline;

namespace {

PointSeq random_seq(int n, int d, Boundary b, std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  std::vector<double> data(static_cast<std::size_t>(n * d));
  for (auto& x : data) x = g(rng);
  return PointSeq(n, d, b, std::move(data));
}

PiecewiseSpline random_spline(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> pick_n(9, 23), pick_kind(0, 3);
  const int n = pick_n(rng);
  const auto p = random_seq(n, 2, Boundary::periodic, rng);
  switch (pick_kind(rng)) {
    case 0: return s0(p);
    case 1: return s1(p);
    case 2: return smoothing_spline(p, 2);
    default: return smoothing_spline(p, 3);
  }
}

template <typename F, typename G>
double brute_distance(const F& f, const G& g, int samples = 200000) {
  std::vector<double> a(2), b(2);
  double s = 0.0;
  for (int j = 0; j < samples; ++j) {
    const double t = (j + 0.5) / samples;
    f.eval_into(t, a);
    g.eval_into(t, b);
    s += std::hypot(a[0] - b[0], a[1] - b[1]);
  }
  return s / samples;
}

}  // namespace

TEST(Quadrature, GaussLegendreExactness) {
  const auto& rule = quadrature::gauss_legendre16();
  double wsum = 0.0;
  for (double w : rule.weights) wsum += w;
  EXPECT_NEAR(wsum, 2.0, 1e-15);
  for (int k = 0; k <= 31; ++k) {
    const double v = quadrature::gauss16([k](double x) { return std::pow(x, k); }, 0.0, 1.0);
    EXPECT_NEAR(v, 1.0 / (k + 1), 1e-15) << k;
  }
  const auto r = quadrature::gauss16_adaptive([](double x) { return std::sqrt(x); }, 0.0, 1.0, 1e-12);
  EXPECT_NEAR(r.value, 2.0 / 3.0, 1e-11);
  EXPECT_NEAR(quadrature::gauss16_dyadic([](double x) { return std::abs(x - 0.3); }, 0.0, 1.0), 0.29, 1e-9);
}

TEST(Distance, StepVersusRampPeriodicAndOpen) {
  const auto per = PointSeq::scalar({0, 1}, Boundary::periodic);
  EXPECT_NEAR(curve_distance(s0(per), s1(per)).value, 0.5, 1e-10);
  const auto open = PointSeq::scalar({0, 1}, Boundary::open);
  EXPECT_NEAR(curve_distance(s0(open), s1(open)).value, 0.25, 1e-10);
}

TEST(Distance, ConstantOffset) {
  const auto a = CurveSpec::constant({0.0, 0.0});
  const auto b = CurveSpec::constant({3.0, 4.0});
  EXPECT_NEAR(curve_distance(a, b).value, 5.0, 1e-14);
  EXPECT_NEAR(curve_distance(a, b, VectorNorm::l1).value, 7.0, 1e-14);
  EXPECT_NEAR(curve_distance(a, b, VectorNorm::linf).value, 4.0, 1e-14);
}

TEST(Distance, CircleVersusS0MatchesBruteForce) {
  const auto c = CurveSpec::circle();
  for (int n : {4, 16}) {
    const auto s = s0(sample_curve(c, n));
    // On each segment |f(t) - f(i/n)| = 2 sin(pi (t - i/n)), integrated exactly.
    const double exact = n * (1.0 - std::cos(std::numbers::pi / n)) * 2.0 / std::numbers::pi;
    EXPECT_NEAR(curve_distance(c, s, VectorNorm::euclidean, 1e-12).value, exact, 1e-11);
    EXPECT_NEAR(brute_distance(c, s), exact, 1e-8);
  }
}

TEST(Distance, SelfDistanceSymmetryTriangle) {
  std::mt19937_64 rng(2024);
  for (int trial = 0; trial < 100; ++trial) {
    const auto f = random_spline(rng);
    const auto g = random_spline(rng);
    const auto h = random_spline(rng);
    EXPECT_EQ(curve_distance(f, f).value, 0.0);
    const double fg = curve_distance(f, g).value;
    const double gf = curve_distance(g, f).value;
    EXPECT_NEAR(fg, gf, 1e-9 * std::max(1.0, fg));
    const double gh = curve_distance(g, h).value;
    const double fh = curve_distance(f, h).value;
    EXPECT_LE(fh, fg + gh + 3e-8);
  }
}

TEST(Distance, AnyCurveOverloadAndBound) {
  const AnyCurve a = CurveSpec::circle();
  const AnyCurve b = s1(sample_curve(CurveSpec::circle(), 32));
  const double d = curve_distance(a, b).value;
  EXPECT_GT(d, 0.0);
  EXPECT_LE(d, 4 * std::numbers::pi * std::numbers::pi / (32.0 * 32.0));
  EXPECT_DOUBLE_EQ(w1_upper_bound(std::get<CurveSpec>(a), std::get<PiecewiseSpline>(b)), d);
}

TEST(Distance, Errors) {
  const auto a = CurveSpec::constant({0.0});
  const auto b = CurveSpec::constant({0.0, 1.0});
  EXPECT_THROW(curve_distance(a, b), UsageError);
  EXPECT_THROW(curve_distance(a, a, VectorNorm::euclidean, 0.0), DomainError);
  const auto bad = CurveSpec::callable(
      1, [](double t, int, std::span<double> out) { out[0] = t > 0.5 ? std::numeric_limits<double>::quiet_NaN() : 0.0; },
      true);
  try {
    curve_distance(bad, a);
    FAIL() << "expected NonFiniteError";
  } catch (const NonFiniteError& e) {
    EXPECT_GT(e.where(), 0.5);
  }
}

TEST(Distance, ErrorEstimateIsReported) {
  const auto c = CurveSpec::circle();
  const auto r = curve_distance(c, s0(sample_curve(c, 8)), VectorNorm::euclidean, 1e-10);
  EXPECT_GE(r.segments_used, 8);
  EXPECT_LE(r.quadrature_error_estimate, 1e-10);
}
