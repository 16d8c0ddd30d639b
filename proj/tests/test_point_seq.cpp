#include <cmath>
#include <random>
#include <vector>

#include <gtest/gtest.h>

#include "eulerspline/kernel.hpp"
#include "eulerspline/point_seq.hpp"

using namespace eulerspline;

namespace {

PointSeq random_seq(int n, int d, Boundary b, unsigned seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> g;
  std::vector<double> data(static_cast<std::size_t>(n * d));
  for (auto& x : data) x = g(rng);
  return PointSeq(n, d, b, std::move(data));
}

}  // namespace

TEST(PointSeq, ShapeAndFiniteness) {
  EXPECT_THROW(PointSeq(3, 2, Boundary::periodic, std::vector<double>(5)), UsageError);
  EXPECT_THROW(PointSeq(1, 1, Boundary::periodic, {NAN}), DomainError);
  EXPECT_THROW(PointSeq::from_points({{1, 2}, {3}}, Boundary::open), UsageError);
  const auto p = PointSeq::from_points({{1, 2}, {3, 4}, {5, 6}}, Boundary::periodic);
  EXPECT_EQ(p.n(), 3);
  EXPECT_EQ(p.d(), 2);
  EXPECT_EQ(p[4][0], 3.0);
  EXPECT_EQ(p[-1][1], 6.0);
}

TEST(VectorNorms, Kinds) {
  const std::vector<double> v{3, -4};
  EXPECT_DOUBLE_EQ(vector_norm(v, VectorNorm::euclidean), 5.0);
  EXPECT_DOUBLE_EQ(vector_norm(v, VectorNorm::l1), 7.0);
  EXPECT_DOUBLE_EQ(vector_norm(v, VectorNorm::linf), 4.0);
  EXPECT_EQ(parse_vector_norm("l2"), VectorNorm::euclidean);
  EXPECT_THROW(parse_vector_norm("l3"), UsageError);
}

TEST(Convolve, MatchesDenseCircularSum) {
  const auto p = random_seq(11, 3, Boundary::periodic, 1);
  const Kernel k(-2, {Rational(1, 3), -2, Rational(5, 7), 1});
  const auto out = convolve(k, p);
  const auto dense = k.instantiate(11);
  for (int i = 0; i < 11; ++i)
    for (int c = 0; c < 3; ++c) {
      double s = 0.0;
      for (int j = 0; j < 11; ++j) s += dense[static_cast<std::size_t>(j)] * p[i - j][static_cast<std::size_t>(c)];
      EXPECT_NEAR(out[i][static_cast<std::size_t>(c)], s, 1e-13);
    }
}

TEST(Convolve, ZeroSumKernelsKillConstants) {
  const auto p = PointSeq::from_points(std::vector<std::vector<double>>(9, {0.1, 0.7}), Boundary::periodic);
  for (int m = 1; m <= 6; ++m) {
    const auto out = convolve(delta_power(m), p);
    for (double x : out.data()) EXPECT_EQ(x, 0.0);
  }
}

TEST(Convolve, OpenValidRange) {
  const auto p = random_seq(10, 1, Boundary::open, 2);
  const auto d2 = convolve(delta_power(2), p);
  EXPECT_EQ(d2.valid(), (IndexRange{2, 9}));
  const auto shifted = convolve(Kernel::impulse(-1), p);
  EXPECT_EQ(shifted.valid(), (IndexRange{0, 8}));
  EXPECT_EQ(shifted[3][0], p[4][0]);
}

TEST(LqNorm, Renormalized) {
  const auto p = PointSeq::scalar({1, -1, 2, 0}, Boundary::periodic);
  EXPECT_DOUBLE_EQ(lq_norm(p, 1.0), 1.0);
  EXPECT_DOUBLE_EQ(lq_norm(p, 2.0), std::sqrt(6.0 / 4.0));
  EXPECT_DOUBLE_EQ(lq_norm_partial(p, IndexRange{2, 3}, 2.0), std::sqrt(4.0 / 4.0));
  EXPECT_THROW(lq_norm(p, 0.5), DomainError);
}

TEST(LqNorm, YoungInequalityWithRenormalization) {
  // ||K * p|| <= n ||K||_{l1} ||p|| with the 1/n-renormalized l1 norm.
  for (unsigned seed = 0; seed < 20; ++seed) {
    const auto p = random_seq(16, 2, Boundary::periodic, seed);
    const Kernel k(-1, {Rational(1, 2), -3, Rational(2, 3)});
    for (double q : {1.0, 2.0, 3.5}) {
      const double lhs = lq_norm(convolve(k, p), q);
      const double rhs = 16 * k.l1_norm(16).to_double() * lq_norm(p, q);
      EXPECT_LE(lhs, rhs * (1 + 1e-12));
    }
  }
}

TEST(PointSeq, ScaleTranslate) {
  const auto p = PointSeq::from_points({{1, 2}, {3, 4}}, Boundary::open);
  const auto s = p.scaled(2.0);
  EXPECT_EQ(s[1][1], 8.0);
  const std::vector<double> v{1, -1};
  const auto t = p.translated(v);
  EXPECT_EQ(t[0][0], 2.0);
  EXPECT_EQ(t[0][1], 1.0);
  EXPECT_FALSE(p.with_boundary(Boundary::periodic).valid().empty());
}
