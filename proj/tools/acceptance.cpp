// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "eulerspline/eulerian.hpp"
#include "eulerspline/experiments.hpp"
#include "eulerspline/kernel.hpp"
#include "eulerspline/metrics.hpp"
#include "eulerspline/sobolev.hpp"
#include "eulerspline/spline.hpp"

using namespace eulerspline;

namespace {

constexpr double kPi = std::numbers::pi;

constexpr double kKnotJumpRel = 1e-9;
constexpr double kTopDerivativeRel = 1e-9;
constexpr double kBSplineFormRel = 1e-10;
constexpr double kDeBoorAbs = 1e-12;
constexpr double kUnityAbs = 1e-12;
constexpr double kCollapseAbs = 1e-12;
constexpr double kForwardAbs = 1e-8;
constexpr double kNormEqualityRel = 1e-12;
constexpr double kRadiusSlack = 1e-12;
constexpr double kDistanceExampleAbs = 1e-10;
constexpr double kSlopeFirst = -0.95;
constexpr double kSlopeSecond = -1.9;
constexpr std::uint64_t kSeed = 42;

struct Outcome {
  bool pass = true;
  std::string detail;
};

struct Criterion {
  int id;
  const char* name;
  double time_limit;
  std::function<Outcome()> run;
};

PointSeq random_seq(int n, int d, std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  std::vector<double> data(static_cast<std::size_t>(n * d));
  for (auto& x : data) x = g(rng);
  return PointSeq(n, d, Boundary::periodic, std::move(data));
}

double de_boor(int m, double x) {
  if (m == 0) return (x >= 0.0 && x < 1.0) ? 1.0 : 0.0;
  return (x * de_boor(m - 1, x) + (m + 1 - x) * de_boor(m - 1, x - 1)) / m;
}

std::string fmt(const char* f, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, v);
  return buf;
}

// Slope check for a sequence that is either <= floor everywhere (bound with
// kappa = 0, floor absorbs rounding) or fits the target slope on its positive values.
bool decays_or_vanishes(const std::vector<int>& grid, const std::vector<double>& values, double target,
                        std::string& note, double floor = 0.0) {
  bool all_nonpositive = true;
  for (double v : values) all_nonpositive = all_nonpositive && v <= floor;
  if (all_nonpositive) {
    note = floor > 0.0 ? "<= " + fmt("%.0e", floor) + " at every n" : "<= 0 at every n";
    return true;
  }
  const auto fit = fit_rate(grid, values);
  note = "slope " + fmt("%.3f", fit.slope) + (fit.filtered ? " (non-positive values filtered)" : "");
  return fit.applicable && fit.slope <= target;
}

Outcome eulerian_exactness() {
  for (int m = 1; m <= 12; ++m) {
    const auto row = eulerian_row(m);
    int128 sum = 0;
    for (int i = 1; i <= m; ++i) {
      if (row.at(i) <= 0) return {false, "non-positive entry at m=" + std::to_string(m)};
      if (row.at(i) != row.at(m + 1 - i)) return {false, "asymmetric row m=" + std::to_string(m)};
      sum += row.at(i);
    }
    if (sum != factorial(m)) return {false, "row sum != m! at m=" + std::to_string(m)};
    for (int i = -1; i <= m + 2; ++i)
      if (eulerian_closed_form<int128>(m, i) != row.at(i))
        return {false, "closed form disagrees at m=" + std::to_string(m) + " i=" + std::to_string(i)};
  }
  return {true, "m<=12 symmetric, positive, sum m!, closed form == recurrence"};
}

Outcome recurrences() {
  for (int m = 1; m <= 10; ++m) {
    if (!check_recurrence_rec1(m)) return {false, "rec1 fails at m=" + std::to_string(m)};
    if (!check_recurrence_rec2(m)) return {false, "rec2 fails at m=" + std::to_string(m)};
  }
  return {true, "rec1, rec2 exact for m<=10"};
}

Outcome kernel_identities() {
  for (int m = 0; m <= kMaxExactDegree; ++m) {
    const auto k = smoothing_kernel(m).kernel;
    if (k.sum() != Rational(1)) return {false, "sum C^m != 1 at m=" + std::to_string(m)};
    if (k.lo() < 0 || k.hi() > m) return {false, "support of C^m outside [0,m] at m=" + std::to_string(m)};
  }
  for (int m = 1; m <= 10; ++m)
    if (!compose(smoothing_kernel(m).kernel, sigma_shift(m)).is_symmetric())
      return {false, "C^m * sigma_m not symmetric at m=" + std::to_string(m)};
  std::mt19937_64 rng(kSeed);
  std::uniform_int_distribution<int> width(2, 10), lo(-8, 8), num(-30, 30), den(1, 16);
  for (int trial = 0; trial < 100; ++trial) {
    std::vector<Rational> c;
    Rational sum;
    const int w = width(rng);
    for (int j = 0; j + 1 < w; ++j) {
      c.emplace_back(num(rng), den(rng));
      sum += c.back();
    }
    c.push_back(-sum);
    const Kernel a(lo(rng), c);
    const Kernel b = delta_inverse(a);
    if (compose(delta_power(1), b) != a) return {false, "D * Dinv(A) != A in trial " + std::to_string(trial)};
    if (b.abs_sum() > Rational(a.alpha() + a.beta()) * a.abs_sum())
      return {false, "norm bound violated in trial " + std::to_string(trial)};
  }
  return {true, "sum 1, support [0,m] (m<=32), symmetric (m<=10), 100 random Dinv round trips"};
}

Outcome spline_structure() {
  std::mt19937_64 rng(kSeed);
  constexpr int n = 64;
  double worst_jump = 0.0, worst_top = 0.0;
  for (int trial = 0; trial < 20; ++trial) {
    const auto p = random_seq(n, 2, rng);
    for (int m = 1; m <= 6; ++m) {
      const auto f = smoothing_spline(p, m);
      for (int l = 0; l < m; ++l) {
        const double rel = knot_continuity(f, l) / derivative_scale(f, l);
        worst_jump = std::max(worst_jump, rel);
      }
      // Oracle: sigma_m first, then m plain backward differences.
      const auto q = convolve(sigma_shift(m), p);
      std::vector<double> diff = q.data();
      for (int r = 0; r < m; ++r) {
        std::vector<double> next(diff.size());
        for (int i = 0; i < n; ++i)
          for (int c = 0; c < 2; ++c)
            next[static_cast<std::size_t>(2 * i + c)] =
                diff[static_cast<std::size_t>(2 * i + c)] - diff[static_cast<std::size_t>(2 * ((i + n - 1) % n) + c)];
        diff = std::move(next);
      }
      double mag = 0.0;
      for (double v : diff) mag = std::max(mag, std::abs(v));
      const double nm = std::pow(static_cast<double>(n), m);
      for (int i = 0; i < n; ++i) {
        const auto v = f((i + 0.5) / n, m);
        for (int c = 0; c < 2; ++c) {
          const double ref = nm * diff[static_cast<std::size_t>(2 * i + c)];
          worst_top = std::max(worst_top, std::abs(v[static_cast<std::size_t>(c)] - ref) / (nm * mag));
        }
      }
    }
  }
  const bool ok = worst_jump <= kKnotJumpRel && worst_top <= kTopDerivativeRel;
  return {ok, "max knot jump/scale " + fmt("%.2e", worst_jump) + ", max top-derivative rel err " +
                  fmt("%.2e", worst_top)};
}

Outcome bspline_equivalence() {
  std::mt19937_64 rng(kSeed);
  double worst_form = 0.0, worst_boor = 0.0, worst_unity = 0.0;
  for (int n : {16, 64})
    for (int m = 1; m <= 5; ++m) {
      const auto p = random_seq(n, 2, rng);
      const auto f = smoothing_spline(p, m, false);
      double mag = 0.0;
      for (double v : p.data()) mag = std::max(mag, std::abs(v));
      for (int j = 0; j < 1000; ++j) {
        const double t = (j + 0.5) / 1000.0;
        const auto a = f(t);
        const auto b = eval_bspline_form(p, m, t);
        for (std::size_t c = 0; c < a.size(); ++c) worst_form = std::max(worst_form, std::abs(a[c] - b[c]) / mag);
      }
    }
  for (int m = 0; m <= 5; ++m) {
    for (int j = 0; j <= 1000; ++j) {
      const double x = -0.25 + (m + 1.5) * j / 1000.0;
      worst_boor = std::max(worst_boor, std::abs(bspline_basis(m, x) - de_boor(m, x)));
    }
    for (int j = 0; j < 1000; ++j) {
      const double x = j / 1000.0;
      double s = 0.0;
      for (int i = 0; i <= m; ++i) s += bspline_basis(m, x + i);
      worst_unity = std::max(worst_unity, std::abs(s - 1.0));
    }
  }
  const bool ok = worst_form <= kBSplineFormRel && worst_boor <= kDeBoorAbs && worst_unity <= kUnityAbs;
  return {ok, "form rel " + fmt("%.2e", worst_form) + ", de Boor " + fmt("%.2e", worst_boor) + ", unity " +
                  fmt("%.2e", worst_unity)};
}

Outcome collapse_m1() {
  std::mt19937_64 rng(kSeed);
  double worst = 0.0;
  for (int trial = 0; trial < 20; ++trial) {
    const auto p = random_seq(32, 2, rng);
    const auto f = smoothing_spline(p, 1);
    const auto g = s1(p);
    for (int j = 0; j < 1000; ++j) {
      const double t = j / 1000.0;
      const auto a = f(t);
      const auto b = g(t);
      for (std::size_t c = 0; c < a.size(); ++c) worst = std::max(worst, std::abs(a[c] - b[c]));
    }
  }
  return {worst <= kCollapseAbs, "max |f_{sigma_1 p} - s1(p)| = " + fmt("%.2e", worst)};
}

Outcome forward_bounds() {
  const MultiBallSpec spec{2, 2.0, {1.0, 2 * kPi, 4 * kPi * kPi}, Boundary::periodic};
  const auto grid = parse_grid("16:1024");
  const auto circle = CurveSpec::circle();
  const auto r0 = forward_rate(circle, spec, SplineKind::s0, grid);
  const auto r1 = forward_rate(circle, spec, SplineKind::s1, grid);
  bool ok = true;
  for (std::size_t j = 0; j < grid.size(); ++j) {
    ok = ok && r0.members[j] && r1.members[j];
    ok = ok && r0.distances[j] <= 2 * kPi / grid[j] + kForwardAbs;
    ok = ok && r1.distances[j] <= 4 * kPi * kPi / (static_cast<double>(grid[j]) * grid[j]) + kForwardAbs;
  }
  ok = ok && r0.fit.slope <= kSlopeFirst && r1.fit.slope <= kSlopeSecond;
  return {ok, "s0 slope " + fmt("%.3f", r0.fit.slope) + ", s1 slope " + fmt("%.3f", r1.fit.slope) +
                  ", per-n bounds and membership " + (ok ? "hold" : "checked")};
}

Outcome norm_equivalence() {
  const auto grid = parse_grid("16:1024");
  const BallPointGenerator gen(kSeed);
  bool ok = true;
  std::string notes;
  double worst_eq = 0.0;
  for (int m : {2, 3}) {
    std::vector<double> alpha;
    for (int r = 0; r <= m; ++r) alpha.push_back(std::pow(2 * kPi, r));
    const MultiBallSpec spec{m, 2.0, alpha, Boundary::periodic};
    std::vector<double> inflation;
    for (int n : grid) {
      const auto p = gen.generate(n, spec);
      const auto f = smoothing_spline(p, m);
      const double disc = discrete_seminorm(convolve(sigma_shift(m), p), m, 2.0);
      const double cont = continuous_seminorm(f, m, 2.0);
      worst_eq = std::max(worst_eq, std::abs(cont - disc) / disc);
      double infl = -1e300;
      for (int l = 0; l <= m; ++l) {
        const double v = continuous_seminorm(f, l, 2.0);
        if (l >= m - 1 && v > alpha[static_cast<std::size_t>(l)] * (1 + kRadiusSlack)) ok = false;
        infl = std::max(infl, v / alpha[static_cast<std::size_t>(l)] - 1.0);
      }
      inflation.push_back(infl);
    }
    std::string note;
    ok = decays_or_vanishes(grid, inflation, kSlopeSecond, note, kRadiusSlack) && ok;
    notes += ", m=" + std::to_string(m) + " inflation " + note;
  }
  ok = ok && worst_eq <= kNormEqualityRel;
  return {ok, "top-order rel diff " + fmt("%.2e", worst_eq) + notes};
}

Outcome backward_rates() {
  const MultiBallSpec per{2, 2.0, {1.0, 2 * kPi, 4 * kPi * kPi}, Boundary::periodic};
  const MultiBallSpec open{2, 2.0, {1.0, 2 * kPi, 4 * kPi * kPi}, Boundary::open};
  const auto grid = parse_grid("16:1024");
  const auto open_grid = parse_grid("64:2048");
  const BallPointGenerator gen(kSeed);
  const auto p0 = backward_rate(per, gen, SplineKind::s0, grid);
  const auto p1 = backward_rate(per, gen, SplineKind::s1, grid);
  const auto o0 = backward_rate(open, gen, SplineKind::s0, open_grid);
  const auto o1 = backward_rate(open, gen, SplineKind::s1, open_grid);
  std::vector<double> omd;
  for (double d : p0.deltas) omd.push_back(1.0 - d);
  std::string note;
  const bool delta_ok = decays_or_vanishes(grid, omd, kSlopeSecond, note);
  const bool ok = p0.fit.slope <= kSlopeFirst && p1.fit.slope <= kSlopeSecond && o0.fit.slope <= kSlopeFirst &&
                  o1.fit.slope <= kSlopeFirst && delta_ok;
  return {ok, "periodic s0 " + fmt("%.3f", p0.fit.slope) + ", s1 " + fmt("%.3f", p1.fit.slope) + "; open s0 " +
                  fmt("%.3f", o0.fit.slope) + ", s1 " + fmt("%.3f", o1.fit.slope) + "; periodic 1-delta " + note +
                  " (open 1-delta slope " + fmt("%.3f", o0.one_minus_delta.slope) + ", informational)"};
}

Outcome distance_oracle() {
  const auto per = PointSeq::scalar({0, 1}, Boundary::periodic);
  const auto opn = PointSeq::scalar({0, 1}, Boundary::open);
  const double dp = curve_distance(s0(per), s1(per)).value;
  const double dopen = curve_distance(s0(opn), s1(opn)).value;
  bool ok = std::abs(dp - 0.5) <= kDistanceExampleAbs && std::abs(dopen - 0.25) <= kDistanceExampleAbs;
  std::mt19937_64 rng(kSeed);
  std::uniform_int_distribution<int> pick_n(9, 40), pick_kind(0, 3);
  auto random_spline = [&] {
    const auto p = random_seq(pick_n(rng), 2, rng);
    switch (pick_kind(rng)) {
      case 0: return s0(p);
      case 1: return s1(p);
      case 2: return smoothing_spline(p, 2);
      default: return smoothing_spline(p, 3);
    }
  };
  int sym_fail = 0, tri_fail = 0;
  for (int trial = 0; trial < 100; ++trial) {
    const auto f = random_spline();
    const auto g = random_spline();
    const auto h = random_spline();
    const auto fg = curve_distance(f, g);
    const auto gf = curve_distance(g, f);
    const auto gh = curve_distance(g, h);
    const auto fh = curve_distance(f, h);
    if (std::abs(fg.value - gf.value) > fg.quadrature_error_estimate + gf.quadrature_error_estimate + 1e-12) ++sym_fail;
    const double slack = fg.quadrature_error_estimate + gh.quadrature_error_estimate + fh.quadrature_error_estimate;
    if (fh.value > fg.value + gh.value + slack + 1e-12) ++tri_fail;
    if (curve_distance(f, f).value != 0.0) ++sym_fail;
  }
  ok = ok && sym_fail == 0 && tri_fail == 0;
  return {ok, "periodic " + fmt("%.12f", dp) + " (1/2), open " + fmt("%.12f", dopen) + " (1/4), symmetry failures " +
                  std::to_string(sym_fail) + ", triangle failures " + std::to_string(tri_fail)};
}

}  // namespace

int main() {
  const std::vector<Criterion> criteria{
      {1, "eulerian exactness", 1.0, eulerian_exactness},
      {2, "eulerian recurrences", 1.0, recurrences},
      {3, "kernel identities", 5.0, kernel_identities},
      {4, "spline structure", 10.0, spline_structure},
      {5, "b-spline equivalence", 10.0, bspline_equivalence},
      {6, "degree-1 collapse", 2.0, collapse_m1},
      {7, "forward bounds", 60.0, forward_bounds},
      {8, "norm equivalence", 60.0, norm_equivalence},
      {9, "backward rates", 120.0, backward_rates},
      {10, "distance oracle", 30.0, distance_oracle},
  };
  int failures = 0;
  for (const auto& c : criteria) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome out;
    try {
      out = c.run();
    } catch (const std::exception& e) {
      out = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    const bool in_time = secs < c.time_limit;
    const bool pass = out.pass && in_time;
    failures += !pass;
    std::printf("%s [%d] %s: %s; %.2fs (limit %.0fs)%s\n", pass ? "PASS" : "FAIL", c.id, c.name, out.detail.c_str(),
                secs, c.time_limit, in_time ? "" : " TIMEOUT");
    std::fflush(stdout);
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failures, criteria.size());
  return failures == 0 ? 0 : 1;
}
