#pragma once

#include <cmath>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "errors.hpp"
#include "kernel.hpp"

namespace eulerspline {

enum class Boundary { periodic, open };

inline const char* to_string(Boundary b) { return b == Boundary::periodic ? "periodic" : "open"; }

/// Norm used on R^d. The theory works with any norm; Euclidean is the default.
enum class VectorNorm { euclidean, l1, linf };

inline const char* to_string(VectorNorm v) {
  switch (v) {
    case VectorNorm::l1: return "l1";
    case VectorNorm::linf: return "linf";
    default: return "euclidean";
  }
}

inline VectorNorm parse_vector_norm(const std::string& s) {
  if (s == "euclidean" || s == "l2") return VectorNorm::euclidean;
  if (s == "l1") return VectorNorm::l1;
  if (s == "linf") return VectorNorm::linf;
  throw UsageError("unknown vector norm '" + s + "' (expected euclidean, l1 or linf)");
}

inline double vector_norm(std::span<const double> v, VectorNorm kind = VectorNorm::euclidean) {
  double r = 0.0;
  switch (kind) {
    case VectorNorm::euclidean:
      for (double x : v) r += x * x;
      return std::sqrt(r);
    case VectorNorm::l1:
      for (double x : v) r += std::abs(x);
      return r;
    case VectorNorm::linf:
      for (double x : v) r = std::max(r, std::abs(x));
      return r;
  }
  return r;
}

/// Closed index interval [first, last]; empty when last < first.
struct IndexRange {
  int first = 0;
  int last = -1;
  bool empty() const { return last < first; }
  int size() const { return empty() ? 0 : last - first + 1; }
  bool contains(int i) const { return i >= first && i <= last; }
  friend bool operator==(const IndexRange&, const IndexRange&) = default;
};

/// n points in R^d, row-major. Open sequences carry the index range on which
/// their values are meaningful; convolving shrinks it by the kernel support.
class PointSeq {
 public:
  PointSeq() = default;

  PointSeq(int n, int d, Boundary boundary, std::vector<double> data)
      : n_(n), d_(d), boundary_(boundary), data_(std::move(data)), valid_{0, n - 1} {
    if (n < 1 || d < 1) throw DomainError("point sequence needs n >= 1 and d >= 1");
    if (data_.size() != static_cast<std::size_t>(n) * static_cast<std::size_t>(d))
      throw UsageError("point data has " + std::to_string(data_.size()) + " values, expected n*d = " +
                       std::to_string(n * d));
    for (std::size_t k = 0; k < data_.size(); ++k)
      if (!std::isfinite(data_[k]))
        throw DomainError("point " + std::to_string(k / static_cast<std::size_t>(d)) + " has a non-finite coordinate");
  }

  /// From a list of points (each of the same dimension).
  static PointSeq from_points(const std::vector<std::vector<double>>& pts, Boundary boundary) {
    if (pts.empty()) throw DomainError("point sequence needs n >= 1");
    const std::size_t d = pts.front().size();
    std::vector<double> data;
    data.reserve(pts.size() * d);
    for (const auto& p : pts) {
      if (p.size() != d) throw UsageError("points have inconsistent dimensions");
      data.insert(data.end(), p.begin(), p.end());
    }
    return PointSeq(static_cast<int>(pts.size()), static_cast<int>(d), boundary, std::move(data));
  }

  /// One-dimensional sequence.
  static PointSeq scalar(const std::vector<double>& values, Boundary boundary) {
    return PointSeq(static_cast<int>(values.size()), 1, boundary, values);
  }

  int n() const { return n_; }
  int d() const { return d_; }
  Boundary boundary() const { return boundary_; }
  bool periodic() const { return boundary_ == Boundary::periodic; }
  const std::vector<double>& data() const { return data_; }
  std::vector<double>& data() { return data_; }

  /// Meaningful indices; always [0, n-1] for periodic sequences.
  IndexRange valid() const { return valid_; }
  void set_valid(IndexRange r) { valid_ = r; }

  /// Point i, with periodic index wrap for any integer i.
  std::span<const double> operator[](int i) const {
    const int w = ((i % n_) + n_) % n_;
    return {data_.data() + static_cast<std::size_t>(w) * static_cast<std::size_t>(d_), static_cast<std::size_t>(d_)};
  }
  std::span<double> at(int i) {
    const int w = ((i % n_) + n_) % n_;
    return {data_.data() + static_cast<std::size_t>(w) * static_cast<std::size_t>(d_), static_cast<std::size_t>(d_)};
  }

  PointSeq scaled(double c) const {
    PointSeq out = *this;
    for (double& x : out.data_) x *= c;
    return out;
  }

  PointSeq translated(std::span<const double> v) const {
    if (static_cast<int>(v.size()) != d_) throw UsageError("translation vector has the wrong dimension");
    PointSeq out = *this;
    for (int i = 0; i < n_; ++i)
      for (int k = 0; k < d_; ++k) out.at(i)[static_cast<std::size_t>(k)] += v[static_cast<std::size_t>(k)];
    return out;
  }

  PointSeq with_boundary(Boundary b) const {
    PointSeq out = *this;
    out.boundary_ = b;
    out.valid_ = {0, n_ - 1};
    return out;
  }

 private:
  int n_ = 0;
  int d_ = 0;
  Boundary boundary_ = Boundary::periodic;
  std::vector<double> data_;
  IndexRange valid_{};
};

/// (K*p)_i = sum_j K_j p_{i-j}, indices mod n. For open p the result keeps
/// the periodic-wrap values everywhere but marks as valid only the indices
/// whose sum never touches a point outside p's valid range.
inline PointSeq convolve(const Kernel& k, const PointSeq& p) {
  const int n = p.n();
  const int d = p.d();
  k.require_fits(n);
  std::vector<double> out(p.data().size(), 0.0);
  std::vector<double> kf;
  kf.reserve(k.width());
  for (const auto& c : k.coeffs()) kf.push_back(c.to_double());
  // Kernels of mass 0 or 1 act on differences against one reference point,
  // so constant sequences map exactly to zero or to themselves.
  const Rational mass = k.is_zero() ? Rational(0) : k.sum();
  const bool centered = mass == Rational(0) || mass == Rational(1);
  const bool add_ref = !k.is_zero() && mass == Rational(1);
  for (int i = 0; i < n; ++i) {
    double* dst = out.data() + static_cast<std::size_t>(i) * static_cast<std::size_t>(d);
    const auto ref = p[i - k.lo()];
    for (std::size_t j = 0; j < kf.size(); ++j) {
      if (kf[j] == 0.0) continue;
      const auto src = p[i - (k.lo() + static_cast<int>(j))];
      for (int c = 0; c < d; ++c) {
        const auto cc = static_cast<std::size_t>(c);
        dst[c] += kf[j] * (centered ? src[cc] - ref[cc] : src[cc]);
      }
    }
    if (add_ref)
      for (int c = 0; c < d; ++c) dst[c] += ref[static_cast<std::size_t>(c)];
  }
  PointSeq result(n, d, p.boundary(), std::move(out));
  if (!p.periodic()) {
    const IndexRange in = p.valid();
    if (k.is_zero()) {
      result.set_valid(in);
    } else {
      IndexRange r{std::max({in.first + k.hi(), 0}), std::min({in.last + k.lo(), n - 1})};
      result.set_valid(r);
    }
  }
  return result;
}

/// Renormalized l^q norm ((1/n) sum_i ||p_i||^q)^{1/q} over all n points.
inline double lq_norm(const PointSeq& p, double q, VectorNorm inner = VectorNorm::euclidean) {
  if (!(q >= 1.0) || !std::isfinite(q)) throw DomainError("l^q norm needs finite q >= 1");
  double acc = 0.0;
  for (int i = 0; i < p.n(); ++i) acc += std::pow(vector_norm(p[i], inner), q);
  return std::pow(acc / p.n(), 1.0 / q);
}

/// Same normalization (1/n) but summing only over `range`.
inline double lq_norm_partial(const PointSeq& p, IndexRange range, double q, VectorNorm inner = VectorNorm::euclidean) {
  if (!(q >= 1.0) || !std::isfinite(q)) throw DomainError("l^q norm needs finite q >= 1");
  double acc = 0.0;
  for (int i = range.first; i <= range.last; ++i) acc += std::pow(vector_norm(p[i], inner), q);
  return std::pow(acc / p.n(), 1.0 / q);
}

}  // namespace eulerspline
