#pragma once

#include <string>
#include <vector>

#include "errors.hpp"
#include "kernel.hpp"
#include "rational.hpp"

namespace eulerspline {

/// Largest degree whose Eulerian numbers and m! fit in signed 128-bit.
inline constexpr int kMaxExactDegree = 32;

inline void require_exact_degree(int m) {
  if (m < 0) throw DomainError("degree must be non-negative (got " + std::to_string(m) + ")");
  if (m > kMaxExactDegree)
    throw OverflowError("degree exceeds exact range (m = " + std::to_string(m) + " > " +
                        std::to_string(kMaxExactDegree) + ")");
}

inline int128 factorial(int m) {
  int128 f = 1;
  for (int k = 2; k <= m; ++k) f = detail::checked_mul(f, k);
  return f;
}

/// Row m of the Eulerian triangle: values[k-1] = number of permutations of m
/// elements with k-1 descents, k = 1..m. Empty for m = 0.
struct EulerianRow {
  int m = 0;
  std::vector<int128> values;

  /// E^m_i with the kernel index convention: non-zero for i = 1..m, and
  /// E^0 is the unit impulse at i = 0.
  int128 at(int i) const {
    if (m == 0) return i == 0 ? 1 : 0;
    if (i < 1 || i > m) return 0;
    return values[static_cast<std::size_t>(i - 1)];
  }
};

/// Computed with the two-term recurrence E^m_k = (m-k+1) E^{m-1}_{k-1} + k E^{m-1}_k.
inline EulerianRow eulerian_row(int m) {
  require_exact_degree(m);
  EulerianRow row{m, {}};
  if (m == 0) return row;
  std::vector<int128> prev{1};
  for (int s = 2; s <= m; ++s) {
    std::vector<int128> cur(static_cast<std::size_t>(s));
    for (int k = 1; k <= s; ++k) {
      const int128 left = k >= 2 ? prev[static_cast<std::size_t>(k - 2)] : 0;
      const int128 right = k <= s - 1 ? prev[static_cast<std::size_t>(k - 1)] : 0;
      cur[static_cast<std::size_t>(k - 1)] =
          detail::checked_add(detail::checked_mul(s - k + 1, left), detail::checked_mul(k, right));
    }
    prev = std::move(cur);
  }
  row.values = std::move(prev);
  return row;
}

/// Alternating-binomial closed form sum_{k=0}^{i} (-1)^k binom(s+1, k) (i-k)^s,
/// which equals s! C^s_i for every integer index i. Templated on the integer
/// type so callers can evaluate it beyond the 128-bit range.
template <typename Int>
Int eulerian_closed_form(int s, int i) {
  if (i < 0) return Int(0);
  Int total = 0;
  Int binom = 1;  // binom(s+1, k)
  for (int k = 0; k <= i && k <= s + 1; ++k) {
    Int power = 1;
    for (int e = 0; e < s; ++e) power *= Int(i - k);
    if (k % 2 == 0)
      total += binom * power;
    else
      total -= binom * power;
    binom = binom * Int(s + 1 - k) / Int(k + 1);
  }
  return total;
}

/// Degree-m smoothing kernel C^m with common denominator m!.
struct SmoothingKernel {
  int m = 0;
  Kernel kernel;

  /// Numerators m! C^m_i for i = 0..m.
  std::vector<int128> numerators() const {
    const int128 d = denominator();
    std::vector<int128> out(static_cast<std::size_t>(m + 1));
    for (int i = 0; i <= m; ++i) {
      const Rational c = kernel.at(i);
      out[static_cast<std::size_t>(i)] = c.num() * (d / c.den());
    }
    return out;
  }
  int128 denominator() const { return factorial(m); }
};

namespace detail {

/// C^0..C^kMaxExactDegree built once from the continuity recursion
/// C^s = sum_{k=1}^{s} (1/k!) T * C^{s-k} * D^{k-1}.
inline const std::vector<Kernel>& smoothing_kernel_table() {
  static const std::vector<Kernel> table = [] {
    std::vector<Kernel> c;
    c.reserve(kMaxExactDegree + 1);
    c.push_back(identity_kernel());
    std::vector<Kernel> deltas;
    for (int k = 0; k < kMaxExactDegree; ++k) deltas.push_back(delta_power(k));
    const Kernel t = shift_kernel();
    for (int s = 1; s <= kMaxExactDegree; ++s) {
      Kernel acc;
      int128 kfact = 1;
      for (int k = 1; k <= s; ++k) {
        kfact *= k;
        acc = acc + compose(t, c[static_cast<std::size_t>(s - k)], deltas[static_cast<std::size_t>(k - 1)]) *
                        Rational(1, kfact);
      }
      c.push_back(std::move(acc));
    }
    return c;
  }();
  return table;
}

}  // namespace detail

/// C^m from the continuity recursion; non-zero entries at indices 1..m equal
/// eulerian_row(m)[i-1] / m!, and C^0 is the identity.
inline SmoothingKernel smoothing_kernel(int m) {
  require_exact_degree(m);
  Kernel k = detail::smoothing_kernel_table()[static_cast<std::size_t>(m)];
  k.set_tag(m == 0 ? "1" : "C^" + std::to_string(m));
  return SmoothingKernel{m, std::move(k)};
}

namespace detail {

inline void require_recurrence_range(int m) {
  if (m < 1 || m > 20) throw DomainError("recurrence checks need 1 <= m <= 20 (got " + std::to_string(m) + ")");
}

/// binom(n, k) extended with binom(-1, k) = 0 for every k; only n = -1 occurs.
inline int128 binomial_ext(int n, int k) { return n < 0 ? 0 : binomial(n, k); }

}  // namespace detail

/// E^m_i = sum_{k=1}^{m} binom(m,k) sum_{l=0}^{k-1} (-1)^l binom(k-1,l) E^{m-k}_{i-1-l}
/// for every index i in [-1, m+2], with the kernel index convention on both sides.
inline bool check_recurrence_rec1(int m) {
  detail::require_recurrence_range(m);
  std::vector<EulerianRow> rows;
  for (int s = 0; s <= m; ++s) rows.push_back(eulerian_row(s));
  for (int i = -1; i <= m + 2; ++i) {
    int128 rhs = 0;
    for (int k = 1; k <= m; ++k) {
      int128 inner = 0;
      for (int l = 0; l <= k - 1; ++l) {
        const int128 term = binomial(k - 1, l) * rows[static_cast<std::size_t>(m - k)].at(i - 1 - l);
        inner += (l % 2 ? -term : term);
      }
      rhs = detail::checked_add(rhs, detail::checked_mul(binomial(m, k), inner));
    }
    if (rhs != rows[static_cast<std::size_t>(m)].at(i)) return false;
  }
  return true;
}

/// E^m_{i-1} = sum_{k=0}^{m} binom(m,k) sum_{l=0}^{k} (-1)^{l-1} binom(k-1,l-1) E^{m-k}_{i-l}
/// for every i in [-1, m+2]. The left side is indexed as in C^m_i = E^m_{i-1}/m!
/// (so it reads m! C^m_i), the right side in the closed-form convention, and
/// binom(-1, -1) = 0. This is the only reading under which the identity holds.
inline bool check_recurrence_rec2(int m) {
  detail::require_recurrence_range(m);
  std::vector<EulerianRow> rows;
  for (int s = 0; s <= m; ++s) rows.push_back(eulerian_row(s));
  for (int i = -1; i <= m + 2; ++i) {
    int128 rhs = 0;
    for (int k = 0; k <= m; ++k) {
      int128 inner = 0;
      for (int l = 0; l <= k; ++l) {
        const int128 term = detail::binomial_ext(k - 1, l - 1) * rows[static_cast<std::size_t>(m - k)].at(i - l);
        inner += ((l - 1) % 2 != 0 ? -term : term);
      }
      rhs = detail::checked_add(rhs, detail::checked_mul(binomial(m, k), inner));
    }
    // Left side E^m_{i-1} in the C^r_i = E^r_{i-1}/r! indexing, i.e. m! C^m_i.
    if (rhs != rows[static_cast<std::size_t>(m)].at(i)) return false;
  }
  return true;
}

}  // namespace eulerspline
