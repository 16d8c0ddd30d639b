#include <random>
#include <vector>

#include <gtest/gtest.h>

#include "eulerspline/eulerian.hpp"
#include "eulerspline/kernel.hpp"
#include "eulerspline/rational.hpp"

using namespace eulerspline;

TEST(Rational, NormalizesAndCompares) {
  EXPECT_EQ(Rational(2, 4), Rational(1, 2));
  EXPECT_EQ(Rational(3, -6), Rational(-1, 2));
  EXPECT_EQ(Rational(1, 2).den(), 2);
  EXPECT_LT(Rational(1, 3), Rational(1, 2));
  EXPECT_EQ(Rational(1, 2) + Rational(1, 3), Rational(5, 6));
  EXPECT_EQ(Rational(1, 2) - Rational(1, 3), Rational(1, 6));
  EXPECT_EQ(Rational(2, 3) * Rational(9, 4), Rational(3, 2));
  EXPECT_EQ(Rational(2, 3) / Rational(4, 9), Rational(3, 2));
  EXPECT_EQ(Rational(-7, 3).str(), "-7/3");
  EXPECT_EQ(Rational(4).str(), "4");
  EXPECT_DOUBLE_EQ(Rational(1, 3).to_double(), 1.0 / 3.0);
}

TEST(Rational, ZeroDenominatorAndOverflow) {
  EXPECT_THROW(Rational(1, 0), DomainError);
  const int128 big = static_cast<int128>(1) << 100;
  EXPECT_THROW(Rational(big) * Rational(big), OverflowError);
}

TEST(Kernel, DeltaPowers) {
  EXPECT_EQ(delta_power(0), identity_kernel());
  EXPECT_EQ(delta_power(1), Kernel(0, {1, -1}));
  EXPECT_EQ(delta_power(3), Kernel(0, {1, -3, 3, -1}));
  for (int m = 1; m <= 12; ++m) {
    EXPECT_EQ(delta_power(m), compose(delta_power(m - 1), delta_power(1)));
    EXPECT_TRUE(delta_power(m).sum().is_zero());
  }
}

TEST(Kernel, TrimsAndIndexes) {
  const Kernel k(-2, {0, 0, 1, 2, 0});
  EXPECT_EQ(k.lo(), 0);
  EXPECT_EQ(k.hi(), 1);
  EXPECT_EQ(k.at(1), Rational(2));
  EXPECT_EQ(k.at(5), Rational(0));
  EXPECT_TRUE(Kernel(3, {0, 0}).is_zero());
}

TEST(Kernel, ComposeIsAssociativeAndCommutative) {
  const Kernel a(-1, {1, Rational(1, 2)});
  const Kernel b(2, {3, -1, Rational(1, 3)});
  const Kernel c(0, {Rational(2, 5), 7});
  EXPECT_EQ(compose(compose(a, b), c), compose(a, compose(b, c)));
  EXPECT_EQ(compose(a, b), compose(b, a));
  EXPECT_EQ(compose(a, identity_kernel()), a);
}

TEST(Kernel, SigmaShift) {
  EXPECT_EQ(sigma_shift(1), Kernel::impulse(-1));
  EXPECT_EQ(sigma_shift(3), Kernel::impulse(-2));
  EXPECT_EQ(sigma_shift(2), Kernel(-2, {Rational(1, 2), Rational(1, 2)}));
  EXPECT_EQ(sigma_shift(4), Kernel(-3, {Rational(1, 2), Rational(1, 2)}));
  for (int m = 1; m <= 10; ++m) EXPECT_EQ(sigma_shift(m).sum(), Rational(1));
  EXPECT_THROW(sigma_shift(0), DomainError);
}

TEST(Kernel, SmoothingKernelSupportAndMass) {
  for (int m = 0; m <= kMaxExactDegree; ++m) {
    const auto k = smoothing_kernel(m).kernel;
    EXPECT_EQ(k.sum(), Rational(1));
    EXPECT_GE(k.lo(), 0);
    EXPECT_LE(k.hi(), m);
  }
}

TEST(Kernel, SmoothingKernelTimesShiftIsSymmetric) {
  for (int m = 1; m <= 10; ++m)
    EXPECT_TRUE(compose(smoothing_kernel(m).kernel, sigma_shift(m)).is_symmetric()) << "m=" << m;
  EXPECT_FALSE(smoothing_kernel(2).kernel.is_symmetric());
}

TEST(Kernel, DeltaInverseRoundTripAndNormBound) {
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<int> width(2, 9), lo(-6, 6), num(-20, 20), den(1, 12);
  for (int trial = 0; trial < 100; ++trial) {
    const int w = width(rng);
    std::vector<Rational> c;
    Rational sum;
    for (int j = 0; j + 1 < w; ++j) {
      c.emplace_back(num(rng), den(rng));
      sum += c.back();
    }
    c.push_back(-sum);
    const Kernel a(lo(rng), c);
    const Kernel b = delta_inverse(a);
    EXPECT_EQ(compose(delta_power(1), b), a);
    if (!a.is_zero()) {
      EXPECT_GE(b.lo(), a.lo());
      EXPECT_LE(b.hi(), a.hi() - 1);
    }
    EXPECT_LE(b.abs_sum(), Rational(a.alpha() + a.beta()) * a.abs_sum());
  }
}

TEST(Kernel, DeltaInverseNeedsZeroSum) { EXPECT_THROW(delta_inverse(Kernel(0, {1, 1})), DomainError); }

TEST(Kernel, SupportMustFitPeriod) {
  EXPECT_THROW(delta_power(4).require_fits(4), DomainError);
  EXPECT_NO_THROW(delta_power(4).require_fits(5));
  const auto v = Kernel(-1, {1, 2, 3}).instantiate(5);
  EXPECT_EQ(v, (std::vector<double>{2, 3, 0, 0, 1}));
}

TEST(Kernel, L1NormIsRenormalized) {
  EXPECT_EQ(sigma_shift(3).l1_norm(8), Rational(1, 8));
  EXPECT_EQ(delta_power(2).l1_norm(4), Rational(1));
}
