#pragma once

#include <cmath>
#include <functional>
#include <numbers>
#include <span>
#include <string>
#include <vector>

#include "errors.hpp"
#include "point_seq.hpp"

namespace eulerspline {

/// Analytic test curve on [0, 1] with derivatives of any order.
///
/// trigonometric: x_c(t) = constant + sum_k cos[k-1] cos(2 pi k t) + sin[k-1] sin(2 pi k t)
/// polynomial:    x_c(t) = sum_j coefficients[j] t^j
/// callable:      user-supplied f(t, order, out)
class CurveSpec {
 public:
  enum class Family { trigonometric, polynomial, callable };

  struct TrigDim {
    double constant = 0.0;
    std::vector<double> cos;
    std::vector<double> sin;
  };

  using Callable = std::function<void(double t, int order, std::span<double> out)>;

  static CurveSpec trigonometric(std::vector<TrigDim> dims, bool periodic = true) {
    if (dims.empty()) throw DomainError("curve needs at least one dimension");
    CurveSpec c;
    c.family_ = Family::trigonometric;
    c.trig_ = std::move(dims);
    c.periodic_ = periodic;
    return c;
  }

  static CurveSpec polynomial(std::vector<std::vector<double>> coefficients, bool periodic = false) {
    if (coefficients.empty()) throw DomainError("curve needs at least one dimension");
    CurveSpec c;
    c.family_ = Family::polynomial;
    c.poly_ = std::move(coefficients);
    c.periodic_ = periodic;
    return c;
  }

  static CurveSpec callable(int d, Callable f, bool periodic) {
    if (d < 1) throw DomainError("curve needs at least one dimension");
    CurveSpec c;
    c.family_ = Family::callable;
    c.callable_ = std::move(f);
    c.dim_ = d;
    c.periodic_ = periodic;
    return c;
  }

  /// Unit-speed-in-angle circle t -> r (cos 2 pi t, sin 2 pi t).
  static CurveSpec circle(double radius = 1.0) {
    return trigonometric({TrigDim{0.0, {radius}, {}}, TrigDim{0.0, {}, {radius}}}, true);
  }

  static CurveSpec constant(std::vector<double> value) {
    std::vector<TrigDim> dims;
    for (double v : value) dims.push_back(TrigDim{v, {}, {}});
    return trigonometric(std::move(dims), true);
  }

  Family family() const { return family_; }
  bool periodic() const { return periodic_; }
  Boundary boundary() const { return periodic_ ? Boundary::periodic : Boundary::open; }
  int dim() const {
    switch (family_) {
      case Family::trigonometric: return static_cast<int>(trig_.size());
      case Family::polynomial: return static_cast<int>(poly_.size());
      default: return dim_;
    }
  }
  const std::vector<TrigDim>& trig_dims() const { return trig_; }
  const std::vector<std::vector<double>>& poly_coefficients() const { return poly_; }

  /// Derivative of the given order at t, written into out (size dim()).
  void eval_into(double t, int order, std::span<double> out) const {
    switch (family_) {
      case Family::trigonometric: {
        const double w = 2.0 * std::numbers::pi;
        for (std::size_t c = 0; c < trig_.size(); ++c) {
          const auto& td = trig_[c];
          double s = order == 0 ? td.constant : 0.0;
          const std::size_t kmax = std::max(td.cos.size(), td.sin.size());
          for (std::size_t k = 1; k <= kmax; ++k) {
            const double a = k <= td.cos.size() ? td.cos[k - 1] : 0.0;
            const double b = k <= td.sin.size() ? td.sin[k - 1] : 0.0;
            if (a == 0.0 && b == 0.0) continue;
            const double wk = w * static_cast<double>(k);
            const double phase = wk * t + order * std::numbers::pi / 2.0;
            s += std::pow(wk, order) * (a * std::cos(phase) + b * std::sin(phase));
          }
          out[c] = s;
        }
        return;
      }
      case Family::polynomial: {
        for (std::size_t c = 0; c < poly_.size(); ++c) {
          const auto& co = poly_[c];
          double s = 0.0;
          for (std::size_t j = co.size(); j-- > static_cast<std::size_t>(order);) {
            double falling = 1.0;
            for (int r = 0; r < order; ++r) falling *= static_cast<double>(j - static_cast<std::size_t>(r));
            s = s * t + co[j] * falling;
          }
          out[c] = s;
        }
        return;
      }
      case Family::callable:
        callable_(t, order, out);
        return;
    }
  }

  void eval_into(double t, std::span<double> out) const { eval_into(t, 0, out); }

  std::vector<double> operator()(double t, int order = 0) const {
    std::vector<double> v(static_cast<std::size_t>(dim()));
    eval_into(t, order, v);
    return v;
  }

  /// Smooth on [0, 1]: no interior breakpoints.
  std::vector<double> breakpoints() const { return {0.0, 1.0}; }

 private:
  Family family_ = Family::trigonometric;
  std::vector<TrigDim> trig_;
  std::vector<std::vector<double>> poly_;
  Callable callable_;
  int dim_ = 0;
  bool periodic_ = true;
};

/// p_i = f(i/n), i = 0..n-1; periodic iff the curve is.
inline PointSeq sample_curve(const CurveSpec& f, int n) {
  if (n < 1) throw DomainError("sample_curve needs n >= 1");
  const int d = f.dim();
  std::vector<double> data(static_cast<std::size_t>(n) * static_cast<std::size_t>(d));
  for (int i = 0; i < n; ++i)
    f.eval_into(static_cast<double>(i) / n,
                std::span<double>(data.data() + static_cast<std::size_t>(i) * static_cast<std::size_t>(d),
                                  static_cast<std::size_t>(d)));
  return PointSeq(n, d, f.boundary(), std::move(data));
}

}  // namespace eulerspline
