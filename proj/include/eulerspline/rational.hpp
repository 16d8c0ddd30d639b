#pragma once

#include <compare>
#include <cstdint>
#include <limits>
#include <string>

#include "errors.hpp"

namespace eulerspline {

using int128 = __int128;

inline std::string to_string(int128 v) {
  if (v == 0) return "0";
  const bool neg = v < 0;
  // Work in the negative range so that the minimum value prints correctly.
  std::string digits;
  int128 x = neg ? v : -v;
  while (x != 0) {
    digits.insert(digits.begin(), static_cast<char>('0' - static_cast<int>(x % 10)));
    x /= 10;
  }
  return neg ? "-" + digits : digits;
}

namespace detail {

inline int128 checked_mul(int128 a, int128 b) {
  int128 r;
  if (__builtin_mul_overflow(a, b, &r)) throw OverflowError("128-bit multiplication overflow");
  return r;
}

inline int128 checked_add(int128 a, int128 b) {
  int128 r;
  if (__builtin_add_overflow(a, b, &r)) throw OverflowError("128-bit addition overflow");
  return r;
}

inline int128 checked_sub(int128 a, int128 b) {
  int128 r;
  if (__builtin_sub_overflow(a, b, &r)) throw OverflowError("128-bit subtraction overflow");
  return r;
}

inline int128 abs128(int128 a) { return a < 0 ? -a : a; }

inline int128 gcd128(int128 a, int128 b) {
  a = abs128(a);
  b = abs128(b);
  while (b != 0) {
    int128 t = a % b;
    a = b;
    b = t;
  }
  return a;
}

}  // namespace detail

/// Exact rational number with 128-bit numerator and denominator, always kept
/// in lowest terms with a positive denominator. Every operation is overflow
/// checked and throws OverflowError instead of wrapping.
class Rational {
 public:
  constexpr Rational() = default;
  constexpr Rational(int128 n) : num_(n), den_(1) {}  // NOLINT: implicit from integers is intended
  Rational(int128 n, int128 d) : num_(n), den_(d) {
    if (d == 0) throw DomainError("rational with zero denominator");
    normalize();
  }

  int128 num() const { return num_; }
  int128 den() const { return den_; }

  bool is_zero() const { return num_ == 0; }

  double to_double() const {
    return static_cast<double>(static_cast<long double>(num_) / static_cast<long double>(den_));
  }

  Rational operator-() const { return Rational(detail::checked_sub(0, num_), den_, Raw{}); }

  friend Rational operator+(const Rational& a, const Rational& b) {
    if (a.den_ == b.den_) return Rational(detail::checked_add(a.num_, b.num_), a.den_);
    const int128 g = detail::gcd128(a.den_, b.den_);
    const int128 da = a.den_ / g;
    const int128 db = b.den_ / g;
    const int128 n = detail::checked_add(detail::checked_mul(a.num_, db), detail::checked_mul(b.num_, da));
    return Rational(n, detail::checked_mul(a.den_, db));
  }

  friend Rational operator-(const Rational& a, const Rational& b) { return a + (-b); }

  friend Rational operator*(const Rational& a, const Rational& b) {
    if (a.num_ == 0 || b.num_ == 0) return Rational();
    // Cross-reduce first to keep intermediates small.
    const int128 g1 = detail::gcd128(a.num_, b.den_);
    const int128 g2 = detail::gcd128(b.num_, a.den_);
    const int128 n = detail::checked_mul(a.num_ / g1, b.num_ / g2);
    const int128 d = detail::checked_mul(a.den_ / g2, b.den_ / g1);
    return Rational(n, d, Raw{});
  }

  friend Rational operator/(const Rational& a, const Rational& b) {
    if (b.num_ == 0) throw DomainError("rational division by zero");
    const int128 sign = b.num_ < 0 ? -1 : 1;
    return a * Rational(sign * b.den_, sign * b.num_, Raw{});
  }

  Rational& operator+=(const Rational& o) { return *this = *this + o; }
  Rational& operator-=(const Rational& o) { return *this = *this - o; }
  Rational& operator*=(const Rational& o) { return *this = *this * o; }

  friend bool operator==(const Rational& a, const Rational& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }

  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
    const int128 lhs = detail::checked_mul(a.num_, b.den_);
    const int128 rhs = detail::checked_mul(b.num_, a.den_);
    if (lhs < rhs) return std::strong_ordering::less;
    if (lhs > rhs) return std::strong_ordering::greater;
    return std::strong_ordering::equal;
  }

  Rational abs() const { return num_ < 0 ? -*this : *this; }

  std::string str() const {
    return den_ == 1 ? to_string(num_) : to_string(num_) + "/" + to_string(den_);
  }

 private:
  struct Raw {};
  // Already reduced; skip normalization.
  Rational(int128 n, int128 d, Raw) : num_(n), den_(d) {}

  void normalize() {
    if (den_ < 0) {
      num_ = detail::checked_sub(0, num_);
      den_ = detail::checked_sub(0, den_);
    }
    const int128 g = detail::gcd128(num_, den_);
    if (g > 1) {
      num_ /= g;
      den_ /= g;
    }
    if (num_ == 0) den_ = 1;
  }

  int128 num_ = 0;
  int128 den_ = 1;
};

}  // namespace eulerspline
