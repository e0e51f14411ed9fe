#include <cmath>
#include <functional>
#include <numbers>

#include "doctest.h"
#include "qcval/errors.hpp"
#include "qcval/fixtures.hpp"
#include "qcval/level_measures.hpp"

using namespace qcval;
using std::numbers::pi;

namespace {

ConvexBody square(double a, double b) { return ConvexBody::box({a, a}, {b, b}); }
QCFunction example() { return QCFunction::simple({1, 2}, {square(0, 1), square(0.25, 0.75)}); }

// Adaptive Simpson quadrature.
double simpson(const std::function<double(double)>& g, double a, double b, double fa, double fm, double fb,
               double whole, double tol, int depth) {
  const double m = 0.5 * (a + b), lm = 0.5 * (a + m), rm = 0.5 * (m + b);
  const double flm = g(lm), frm = g(rm);
  const double left = (m - a) / 6 * (fa + 4 * flm + fm), right = (b - m) / 6 * (fm + 4 * frm + fb);
  if (depth <= 0 || std::abs(left + right - whole) <= 15 * tol) return left + right + (left + right - whole) / 15;
  return simpson(g, a, m, fa, flm, fm, left, tol / 2, depth - 1) + simpson(g, m, b, fm, frm, fb, right, tol / 2, depth - 1);
}

double integrate(const std::function<double(double)>& g, double a, double b, double tol = 1e-12) {
  const double fa = g(a), fb = g(b), fm = g(0.5 * (a + b));
  return simpson(g, a, b, fa, fm, fb, (b - a) / 6 * (fa + 4 * fm + fb), tol, 50);
}

}  // namespace

TEST_CASE("profiles") {
  const QCFunction ind = QCFunction::indicator(2, square(0, 2));
  const double grid[] = {0.1, 1.0, 2.0};
  for (double v : profile(ind, 1, grid).values) CHECK(v == doctest::Approx(4.0));

  const QCFunction cone = QCFunction::cone({0, 0}, 1, 1);
  const double g2[] = {0.25, 0.5, 0.75};
  const ProfileTable p = profile(cone, 2, g2);
  CHECK(p.values[0] == doctest::Approx(pi * 0.5625));
  CHECK(p.values[1] == doctest::Approx(pi * 0.25));
  CHECK(p.values[2] == doctest::Approx(pi * 0.0625));

  const double above[] = {1.5, 3.0};
  for (double v : profile(cone, 2, above).values) CHECK(v == 0.0);
  for (double v : profile(example(), 0, above).values) CHECK(v == (v == 0.0 ? 0.0 : 1.0));
}

TEST_CASE("S_k of simple functions") {
  const LevelMeasure m = sk_measure(example(), 2);
  REQUIRE(m.atomic_part().atoms.size() == 2);
  CHECK(m.atomic_part().atoms[0].location == 1.0);
  CHECK(m.atomic_part().atoms[0].mass == doctest::Approx(0.75));
  CHECK(m.atomic_part().atoms[1].location == 2.0);
  CHECK(m.atomic_part().atoms[1].mass == doctest::Approx(0.25));

  const QCFunction ind = QCFunction::indicator(3, ConvexBody::ball({0, 0, 0}, 1));
  const LevelMeasure s3 = sk_measure(ind, 3);
  REQUIRE(s3.atomic_part().atoms.size() == 1);
  CHECK(s3.atomic_part().atoms[0].location == 3.0);
  CHECK(s3.atomic_part().atoms[0].mass == doctest::Approx(4 * pi / 3));

  for (const QCFunction& f : {example(), ind, QCFunction::cone({0, 0}, 2, 1)}) {
    const LevelMeasure s0 = sk_measure(f, 0);
    REQUIRE(s0.atomic_part().atoms.size() == 1);
    CHECK(s0.atomic_part().atoms[0].location == max_value(f));
    CHECK(s0.atomic_part().atoms[0].mass == 1.0);
  }
  CHECK(sk_measure(QCFunction::zero(2), 2).is_zero());
  CHECK_THROWS_AS(sk_measure(example(), 3), InvalidArgument);
}

TEST_CASE("mass-profile duality and support on random simple functions") {
  for (const QCFunction& f : random_polygon_functions(10, 17, 5)) {
    const SimpleFunction s = f.as_simple();
    for (int k = 0; k <= 2; ++k) {
      const LevelMeasure m = sk_measure(f, k);
      for (const Atom& a : m.atomic_part().atoms) {
        CHECK(a.location > 0.0);
        CHECK(a.location <= max_value(f));
      }
      // (a, b] with no atom at a or b: both strictly between levels.
      for (std::size_t i = 0; i + 1 < s.levels.size(); ++i) {
        const double a = 0.5 * (s.levels[i] + (i ? s.levels[i - 1] : 0.0));
        const double b = 0.5 * (s.levels[i] + s.levels[i + 1]);
        const double ua = intrinsic_volume(level_set(f, a), k), ub = intrinsic_volume(level_set(f, b), k);
        CHECK(m.mass_between(a, b) == doctest::Approx(ua - ub).epsilon(1e-12));
      }
    }
  }
}

TEST_CASE("integration against measures") {
  const LevelMeasure m = LevelMeasure::atomic({{1, 0.75}, {2, 0.25}});
  CHECK(integrate_against(ScalarFunction::constant(1), m) == doctest::Approx(1.0));
  CHECK(integrate_against(ScalarFunction::power(1), m) == doctest::Approx(1.25));
  CHECK(integrate_against(ScalarFunction::zero(), m) == 0.0);
  const LevelMeasure d = LevelMeasure::uniform(1, 3, 2.0);
  // Midpoint rule is exact for linear phi on each cell.
  CHECK(integrate_against(ScalarFunction::power(1), d) == doctest::Approx(8.0));
  CHECK_THROWS_AS(integrate_against(ScalarFunction::power(1), LevelMeasure::density({1}, {1})), NonFinite);
  CHECK_THROWS_AS(LevelMeasure::atomic({{0.0, 1.0}}), InvalidArgument);
  CHECK_THROWS_AS(LevelMeasure::atomic({{2.0, 1.0}, {1.0, 1.0}}), InvalidArgument);
}

TEST_CASE("dyadic refinement converges monotonically to the quadrature limit") {
  const QCFunction cone = QCFunction::cone({0, 0}, 1, 1);
  const ScalarFunction phi = ScalarFunction::power(2.0);
  for (int k : {1, 2}) {
    // int phi dS_k(f) = int_0^1 V_k(L_t f) phi'(t) dt, with V_k of the disk of radius 1 - t.
    const double limit = integrate([&](double t) { return pi * std::pow(1 - t, k) * 2 * t; }, 0.0, 1.0);
    double prev = -1.0;
    for (int i = 1; i <= 16; ++i) {
      const double v = integrate_against(phi, sk_measure(cone, k, i));
      CHECK(v >= prev);
      prev = v;
    }
    CHECK(std::abs(prev - limit) < 1e-4);
  }
}
