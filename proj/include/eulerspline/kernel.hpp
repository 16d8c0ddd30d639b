#pragma once

#include <algorithm>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "errors.hpp"
#include "rational.hpp"

namespace eulerspline {

/// Exact convolution kernel stored relative to its support window.
///
/// Coefficient `coeffs()[j]` sits at index `lo() + j`. The window is kept
/// tight: both end coefficients are non-zero unless the kernel is zero, in
/// which case `coeffs()` is empty. Indices are plain integers here; the
/// periodic wrap `i mod n` only happens when a kernel meets a point sequence
/// of length n.
class Kernel {
 public:
  Kernel() = default;

  Kernel(int lo, std::vector<Rational> coeffs, std::string tag = {})
      : lo_(lo), coeffs_(std::move(coeffs)), tag_(std::move(tag)) {
    trim();
  }

  /// Single coefficient `value` at `index`.
  static Kernel impulse(int index, Rational value = 1, std::string tag = {}) {
    return Kernel(index, {value}, std::move(tag));
  }

  bool is_zero() const { return coeffs_.empty(); }
  int lo() const { return coeffs_.empty() ? 0 : lo_; }
  int hi() const { return coeffs_.empty() ? -1 : lo_ + static_cast<int>(coeffs_.size()) - 1; }
  std::size_t width() const { return coeffs_.size(); }
  const std::vector<Rational>& coeffs() const { return coeffs_; }
  const std::string& tag() const { return tag_; }
  Kernel& set_tag(std::string tag) {
    tag_ = std::move(tag);
    return *this;
  }

  /// Coefficient at integer index `i`; zero outside the window.
  Rational at(int i) const {
    if (coeffs_.empty() || i < lo_ || i > hi()) return Rational();
    return coeffs_[static_cast<std::size_t>(i - lo_)];
  }

  Rational sum() const {
    Rational s;
    for (const auto& c : coeffs_) s += c;
    return s;
  }

  /// Sum of |K_i|. The renormalized l1 norm of the kernel instantiated at
  /// length n is this value divided by n.
  Rational abs_sum() const {
    Rational s;
    for (const auto& c : coeffs_) s += c.abs();
    return s;
  }

  /// Renormalized l1 norm (1/n) sum |K_i| once instantiated at length n.
  Rational l1_norm(int n) const {
    require_fits(n);
    return abs_sum() * Rational(1, n);
  }

  /// Support in the `[-alpha, beta]` sense used for open sequences, with
  /// alpha, beta >= 0 (the window always contains index 0).
  int alpha() const { return coeffs_.empty() ? 0 : std::max(0, -lo()); }
  int beta() const { return coeffs_.empty() ? 0 : std::max(0, hi()); }

  /// Throws unless the window fits in a cyclic group of order n without
  /// two coefficients landing on the same residue.
  void require_fits(int n) const {
    if (n < 1) throw DomainError("kernel instantiation needs n >= 1");
    if (static_cast<int>(coeffs_.size()) > n)
      throw DomainError("kernel support of width " + std::to_string(coeffs_.size()) +
                        " does not fit in length n = " + std::to_string(n));
  }

  /// Dense length-n vector with periodic wrap, as floats.
  std::vector<double> instantiate(int n) const {
    require_fits(n);
    std::vector<double> out(static_cast<std::size_t>(n), 0.0);
    for (std::size_t j = 0; j < coeffs_.size(); ++j) {
      const int idx = ((lo_ + static_cast<int>(j)) % n + n) % n;
      out[static_cast<std::size_t>(idx)] = coeffs_[j].to_double();
    }
    return out;
  }

  /// Whether K_i == K_{-i} for all i.
  bool is_symmetric() const {
    if (coeffs_.empty()) return true;
    if (lo() != -hi()) return false;
    for (int i = 0; i <= hi(); ++i)
      if (at(i) != at(-i)) return false;
    return true;
  }

  friend bool operator==(const Kernel& a, const Kernel& b) {
    return a.lo() == b.lo() && a.coeffs_ == b.coeffs_;
  }

  friend Kernel operator+(const Kernel& a, const Kernel& b) {
    if (a.is_zero()) return b;
    if (b.is_zero()) return a;
    const int lo = std::min(a.lo(), b.lo());
    const int hi = std::max(a.hi(), b.hi());
    std::vector<Rational> c(static_cast<std::size_t>(hi - lo + 1));
    for (int i = lo; i <= hi; ++i) c[static_cast<std::size_t>(i - lo)] = a.at(i) + b.at(i);
    return Kernel(lo, std::move(c));
  }

  friend Kernel operator-(const Kernel& a, const Kernel& b) { return a + b * Rational(-1); }

  friend Kernel operator*(const Kernel& a, const Rational& s) {
    std::vector<Rational> c = a.coeffs_;
    for (auto& x : c) x *= s;
    return Kernel(a.lo(), std::move(c), a.tag_);
  }

  std::string str() const {
    std::string s = "{";
    for (std::size_t j = 0; j < coeffs_.size(); ++j) {
      if (coeffs_[j].is_zero()) continue;
      if (s.size() > 1) s += ", ";
      s += std::to_string(lo_ + static_cast<int>(j)) + ": " + coeffs_[j].str();
    }
    return s + "}";
  }

 private:
  void trim() {
    std::size_t first = 0;
    while (first < coeffs_.size() && coeffs_[first].is_zero()) ++first;
    if (first == coeffs_.size()) {
      coeffs_.clear();
      lo_ = 0;
      return;
    }
    std::size_t last = coeffs_.size();
    while (coeffs_[last - 1].is_zero()) --last;
    coeffs_ = std::vector<Rational>(coeffs_.begin() + static_cast<std::ptrdiff_t>(first),
                                    coeffs_.begin() + static_cast<std::ptrdiff_t>(last));
    lo_ += static_cast<int>(first);
  }

  int lo_ = 0;
  std::vector<Rational> coeffs_;
  std::string tag_;
};

/// Convolution identity.
inline Kernel identity_kernel() { return Kernel::impulse(0, 1, "1"); }

/// T: (T*p)_i = p_{i-1}.
inline Kernel shift_kernel() { return Kernel::impulse(1, 1, "T"); }

/// Exact convolution of two kernels; the window is the interval sum.
inline Kernel compose(const Kernel& a, const Kernel& b) {
  if (a.is_zero() || b.is_zero()) return Kernel();
  std::vector<Rational> c(a.width() + b.width() - 1);
  for (std::size_t i = 0; i < a.width(); ++i) {
    if (a.coeffs()[i].is_zero()) continue;
    for (std::size_t j = 0; j < b.width(); ++j) c[i + j] += a.coeffs()[i] * b.coeffs()[j];
  }
  std::string tag;
  if (!a.tag().empty() && !b.tag().empty()) tag = a.tag() + "*" + b.tag();
  return Kernel(a.lo() + b.lo(), std::move(c), std::move(tag));
}

template <typename... Rest>
Kernel compose(const Kernel& a, const Kernel& b, const Rest&... rest) {
  return compose(compose(a, b), rest...);
}

inline int128 binomial(int n, int k) {
  if (k < 0 || n < 0 || k > n) return 0;
  k = std::min(k, n - k);
  int128 r = 1;
  for (int i = 1; i <= k; ++i) r = detail::checked_mul(r, n - k + i) / i;
  return r;
}

/// m-th order backward difference, coefficient (-1)^i binom(m, i) at i.
inline Kernel delta_power(int m) {
  if (m < 0) throw DomainError("delta_power needs m >= 0");
  std::vector<Rational> c(static_cast<std::size_t>(m + 1));
  for (int i = 0; i <= m; ++i) c[static_cast<std::size_t>(i)] = (i % 2 ? -1 : 1) * binomial(m, i);
  return Kernel(0, std::move(c), m == 1 ? "D" : "D^" + std::to_string(m));
}

/// Shift that aligns a degree-m smoothing spline with its control points.
/// Odd m: (s*p)_i = p_{i+(m+1)/2}. Even m: (s*p)_i = (p_{i+m/2} + p_{i+m/2+1})/2.
inline Kernel sigma_shift(int m) {
  if (m < 1) throw DomainError("sigma_shift needs m >= 1");
  const std::string tag = "sigma_" + std::to_string(m);
  if (m % 2 == 1) return Kernel::impulse(-(m + 1) / 2, 1, tag);
  return Kernel(-(m / 2 + 1), {Rational(1, 2), Rational(1, 2)}, tag);
}

/// Discrete antiderivative of a zero-sum kernel: D * delta_inverse(A) == A,
/// support shrinks from [lo, hi] to [lo, hi - 1].
inline Kernel delta_inverse(const Kernel& a) {
  if (!a.sum().is_zero())
    throw DomainError("delta_inverse needs a kernel whose coefficients sum to 0 (sum = " + a.sum().str() +
                      ")");
  if (a.is_zero()) return Kernel();
  std::vector<Rational> c(a.width() - 1);
  Rational running;
  for (std::size_t j = 0; j + 1 < a.width(); ++j) {
    running += a.coeffs()[j];
    c[j] = running;
  }
  return Kernel(a.lo(), std::move(c), a.tag().empty() ? std::string() : "Dinv(" + a.tag() + ")");
}

}  // namespace eulerspline
