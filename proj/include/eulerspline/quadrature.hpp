#pragma once

#include <array>
#include <cmath>
#include <numbers>

namespace eulerspline::quadrature {

inline constexpr int kGaussNodes = 16;

struct GaussRule {
  std::array<double, kGaussNodes> nodes{};
  std::array<double, kGaussNodes> weights{};
};

/// 16-point Gauss-Legendre rule on [-1, 1], nodes from Newton iteration on P_16.
inline const GaussRule& gauss_legendre16() {
  static const GaussRule rule = [] {
    GaussRule r;
    constexpr int n = kGaussNodes;
    for (int i = 0; i < n / 2; ++i) {
      double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
      double dp = 0.0;
      for (int it = 0; it < 100; ++it) {
        double p0 = 1.0, p1 = x;
        for (int k = 2; k <= n; ++k) {
          const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
          p0 = p1;
          p1 = p2;
        }
        dp = n * (x * p1 - p0) / (x * x - 1.0);
        const double dx = p1 / dp;
        x -= dx;
        if (std::abs(dx) < 1e-16) break;
      }
      const double w = 2.0 / ((1.0 - x * x) * dp * dp);
      r.nodes[i] = -x;
      r.nodes[n - 1 - i] = x;
      r.weights[i] = w;
      r.weights[n - 1 - i] = w;
    }
    return r;
  }();
  return rule;
}

/// One application of the 16-point rule on [a, b].
template <typename F>
double gauss16(F&& f, double a, double b) {
  const auto& rule = gauss_legendre16();
  const double half = 0.5 * (b - a);
  const double mid = 0.5 * (a + b);
  double s = 0.0;
  for (int k = 0; k < kGaussNodes; ++k) s += rule.weights[k] * f(mid + half * rule.nodes[k]);
  return s * half;
}

/// Composite rule with 2^level equal pieces on [a, b].
template <typename F>
double gauss16_composite(F&& f, double a, double b, int level) {
  const int pieces = 1 << level;
  const double h = (b - a) / pieces;
  double s = 0.0;
  for (int j = 0; j < pieces; ++j) s += gauss16(f, a + j * h, a + (j + 1) * h);
  return s;
}

/// Uniform dyadic refinement on [a, b] until two successive levels agree to
/// `rel_tol` (relative, with an absolute floor), capped at 2^max_level pieces.
template <typename F>
double gauss16_dyadic(F&& f, double a, double b, double rel_tol = 1e-10, int max_level = 10) {
  double prev = gauss16(f, a, b);
  for (int level = 1; level <= max_level; ++level) {
    const double cur = gauss16_composite(f, a, b, level);
    if (std::abs(cur - prev) <= rel_tol * std::abs(cur) || std::abs(cur - prev) <= 1e-300) return cur;
    prev = cur;
  }
  return prev;
}

struct AdaptiveResult {
  double value = 0.0;
  double error = 0.0;
  int pieces = 0;
};

namespace detail {

template <typename F>
void adaptive_step(F& f, double a, double b, double whole, double tol, int depth, AdaptiveResult& out) {
  const double mid = 0.5 * (a + b);
  const double left = gauss16(f, a, mid);
  const double right = gauss16(f, mid, b);
  const double diff = std::abs(left + right - whole);
  if (diff <= tol || depth >= 40 || mid <= a || mid >= b) {
    out.value += left + right;
    out.error += diff;
    out.pieces += 2;
    return;
  }
  adaptive_step(f, a, mid, left, 0.5 * tol, depth + 1, out);
  adaptive_step(f, mid, b, right, 0.5 * tol, depth + 1, out);
}

}  // namespace detail

/// Locally adaptive bisection: a piece is accepted once its two halves agree
/// with the whole within the tolerance share of that piece.
template <typename F>
AdaptiveResult gauss16_adaptive(F&& f, double a, double b, double tol) {
  AdaptiveResult out;
  if (!(b > a)) return out;
  const double whole = gauss16(f, a, b);
  detail::adaptive_step(f, a, b, whole, tol, 0, out);
  return out;
}

}  // namespace eulerspline::quadrature
