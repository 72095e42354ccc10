#include <cmath>
#include <limits>

#include "aph/indicatrix.hpp"
#include "doctest.h"
#include "oracles.hpp"

using namespace aph;
using oracle::kPi;
using oracle::kTwoPi;

namespace {

// r = 1 + a cos 2 theta in closed form, independent of the library.
struct Cos2Body {
  double a;
  double r(double t) const { return 1.0 + a * std::cos(2 * t); }
  double r1(double t) const { return -2 * a * std::sin(2 * t); }
  double r2(double t) const { return -4 * a * std::cos(2 * t); }
  double margin(double t) const { return r(t) * r(t) + 2 * r1(t) * r1(t) - r(t) * r2(t); }
  double h(double t) const { return 1.0 / r(t); }
  double q(double t) const {
    // h + h'' = margin / r^3, h^3 = 1 / r^3.
    return margin(t) / std::pow(r(t), 6);
  }
};

IndicatrixSpec cos2(double a) { return {1.0, {{2, a, 0.0}}}; }

IndicatrixError::Code rejection(const IndicatrixSpec& spec, std::size_t grid = 4096) {
  try {
    (void)Indicatrix::build(spec, grid);
  } catch (const IndicatrixError& e) {
    return e.code();
  }
  FAIL("spec was accepted");
  return IndicatrixError::Code::kBadGrid;
}

double dense_min(const oracle::Scalar& f, int n = 100000) {
  double m = std::numeric_limits<double>::infinity();
  for (int i = 0; i < n; ++i) m = std::min(m, f(kTwoPi * i / n));
  return m;
}

}  // namespace

TEST_CASE("Euclidean unit circle") {
  const auto ind = Indicatrix::euclidean();
  CHECK(ind.is_isotropic());
  for (double t : {0.0, 0.4, 2.0, 5.5}) {
    CHECK(ind.radial(t).value == 1.0);
    CHECK(ind.support_h(t, 0) == 1.0);
    CHECK(ind.support_h(t, 1) == 0.0);
    CHECK(ind.support_h(t, 2) == 0.0);
    CHECK(ind.anisotropy_q(t) == doctest::Approx(1.0));
  }
  CHECK(ind.q_star() == doctest::Approx(1.0));
  CHECK(ind.area_isoperimetrix() == doctest::Approx(kPi).epsilon(1e-14));
}

TEST_CASE("odd harmonic is rejected") {
  CHECK(rejection({1.0, {{3, 0.1, 0.0}}}) == IndicatrixError::Code::kOddHarmonic);
  CHECK(rejection({1.0, {{0, 0.1, 0.0}}}) == IndicatrixError::Code::kOddHarmonic);
}

TEST_CASE("non-positive radius and bad grids are rejected") {
  CHECK(rejection({1.0, {{2, 1.5, 0.0}}}) == IndicatrixError::Code::kNonPositiveRadius);
  CHECK(rejection({-1.0, {}}) == IndicatrixError::Code::kNonPositiveRadius);
  CHECK(rejection(IndicatrixSpec::euclidean(), 32) == IndicatrixError::Code::kBadGrid);
}

TEST_CASE("convexity verdict agrees with a dense sign scan of the polar curvature") {
  for (double a : {0.05, 0.1, 0.19, 0.2, 0.21, 0.3, 0.45}) {
    CAPTURE(a);
    const Cos2Body body{a};
    const bool convex = dense_min([&](double t) { return body.margin(t); }) > 0.0;
    bool accepted = true;
    try {
      (void)Indicatrix::build(cos2(a));
    } catch (const IndicatrixError& e) {
      accepted = false;
      CHECK(e.code() == IndicatrixError::Code::kNonConvex);
    }
    CHECK(accepted == convex);
  }
}

TEST_CASE("r = 1 + 0.2 cos 2 theta sits exactly on the convexity boundary") {
  // margin(pi/2) = (1 - a)(1 - 5a) vanishes at a = 0.2, so strict convexity fails.
  const Cos2Body body{0.2};
  CHECK(std::abs(body.margin(kPi / 2)) < 1e-15);
  CHECK(rejection(cos2(0.2)) == IndicatrixError::Code::kNonConvex);
}

TEST_CASE("support function values and derivatives") {
  SUBCASE("direct substitution at theta = 0") {
    const auto ind = Indicatrix::build(cos2(0.1));
    CHECK(ind.support_h(0.0, 0) == doctest::Approx(1.0 / 1.1).epsilon(1e-15));
    CHECK(ind.support_h(0.0, 1) == doctest::Approx(0.0));
  }
  SUBCASE("finite differences of 1/r") {
    for (double a : {0.1, 0.19}) {
      CAPTURE(a);
      const auto ind = Indicatrix::build(cos2(a));
      const Cos2Body body{a};
      const oracle::Scalar h = [&](double t) { return body.h(t); };
      for (double t : {0.7, 1.9, 4.0}) {
        CHECK(ind.support_h(t, 1) == doctest::Approx(oracle::d1(h, t)).epsilon(1e-6));
        CHECK(ind.support_h(t, 2) == doctest::Approx(oracle::d2(h, t)).epsilon(1e-6));
      }
    }
  }
  SUBCASE("orders outside 0..2 are rejected") {
    CHECK_THROWS_AS((void)Indicatrix::euclidean().support_h(0.0, 3), DomainError);
  }
}

TEST_CASE("support_along agrees with support at the direction's angle") {
  const auto ind = Indicatrix::build({1.0, {{2, 0.08, -0.03}, {4, 0.01, 0.005}}});
  for (double t : {0.0, 0.3, 1.7, 3.14, 5.0, -2.0}) {
    const auto a = ind.support(t);
    const auto b = ind.support_along({std::cos(t), std::sin(t)});
    CHECK(b.value == doctest::Approx(a.value).epsilon(1e-14));
    CHECK(b.d1 == doctest::Approx(a.d1).epsilon(1e-12));
    CHECK(b.d2 == doctest::Approx(a.d2).epsilon(1e-12));
  }
}

TEST_CASE("isoperimetrix points") {
  SUBCASE("Euclidean circle at theta = 0") {
    const auto p = Indicatrix::euclidean().isoperimetrix_point(0.0);
    CHECK(p.x == doctest::Approx(0.0));
    CHECK(p.y == doctest::Approx(1.0));
  }
  SUBCASE("constant radius rho gives a circle of radius 1/rho") {
    const auto ind = Indicatrix::build(IndicatrixSpec::circle(2.5));
    for (double t : {0.0, 1.0, 2.0, 4.0}) CHECK(norm(ind.isoperimetrix_point(t)) == doctest::Approx(0.4));
  }
  SUBCASE("curvature of the traced curve is 1 / (h + h'')") {
    const auto ind = Indicatrix::build(cos2(0.1));
    const double t = kPi / 4;
    const oracle::Scalar x = [&](double s) { return ind.isoperimetrix_point(s).x; };
    const oracle::Scalar y = [&](double s) { return ind.isoperimetrix_point(s).y; };
    const double x1 = oracle::d1(x, t), y1 = oracle::d1(y, t);
    const double x2 = oracle::d2(x, t), y2 = oracle::d2(y, t);
    const double k = std::abs(x1 * y2 - y1 * x2) / std::pow(x1 * x1 + y1 * y1, 1.5);
    const double expected = 1.0 / (ind.support_h(t, 0) + ind.support_h(t, 2));
    CHECK(k == doctest::Approx(expected).epsilon(1e-5));
  }
}

TEST_CASE("isoperimetrix area") {
  CHECK(Indicatrix::euclidean().area_isoperimetrix() == doctest::Approx(kPi).epsilon(1e-14));
  CHECK(Indicatrix::build(IndicatrixSpec::circle(2.0)).area_isoperimetrix() ==
        doctest::Approx(kPi / 4).epsilon(1e-14));

  SUBCASE("agrees with the shoelace area of a dense polygon") {
    for (double a : {0.1, 0.19}) {
      const auto ind = Indicatrix::build(cos2(a));
      const auto poly = oracle::sample([&](double t) { return ind.isoperimetrix_point(t); }, 100000);
      CHECK(ind.area_isoperimetrix() == doctest::Approx(oracle::shoelace(poly)).epsilon(1e-6));
    }
  }
  SUBCASE("integration by parts agrees at grid >= 1024") {
    for (std::size_t grid : {1024u, 4096u}) {
      const auto ind = Indicatrix::build({1.0, {{2, 0.15, 0.02}, {4, -0.01, 0.0}}}, grid);
      CHECK(ind.area_isoperimetrix_by_parts() ==
            doctest::Approx(ind.area_isoperimetrix()).epsilon(1e-10));
    }
  }
}

TEST_CASE("anisotropy factor Q and its minimum") {
  CHECK(Indicatrix::build(IndicatrixSpec::circle(2.0)).anisotropy_q(0.3) ==
        doctest::Approx(1.0 / 16));
  CHECK(Indicatrix::build(IndicatrixSpec::circle(0.5)).q_star() == doctest::Approx(16.0));

  for (double a : {0.1, 0.19}) {
    CAPTURE(a);
    const auto ind = Indicatrix::build(cos2(a));
    const Cos2Body body{a};
    for (double t : {0.2, 1.1, 2.9}) CHECK(ind.anisotropy_q(t) == doctest::Approx(body.q(t)).epsilon(1e-13));
    const double scan = dense_min([&](double t) { return body.q(t); });
    CHECK(ind.q_star() <= scan * (1 + 1e-14));
    CHECK(ind.q_star() == doctest::Approx(scan).epsilon(1e-8));
    double scan_max = 0.0;
    for (int i = 0; i < 100000; ++i) scan_max = std::max(scan_max, body.q(kTwoPi * i / 100000));
    CHECK(ind.q_max() == doctest::Approx(scan_max).epsilon(1e-8));
  }
}

TEST_CASE("Q >= Q_star > 0 on every grid sample") {
  const auto ind = Indicatrix::build({1.2, {{2, 0.1, 0.07}, {6, 0.004, -0.002}}}, 2048);
  CHECK(ind.q_star() > 0.0);
  for (int i = 0; i < 2048; ++i) CHECK(ind.anisotropy_q(kTwoPi * i / 2048) >= ind.q_star());
}

TEST_CASE("rotating the body leaves its constants unchanged") {
  const IndicatrixSpec spec{1.0, {{2, 0.12, 0.03}, {4, 0.01, -0.02}}};
  const auto base = Indicatrix::build(spec);
  for (double phi : {0.1, 0.77, 2.0, 3.0}) {
    CAPTURE(phi);
    const auto rot = Indicatrix::build(spec.rotated(phi));
    CHECK(rot.radial(1.3 + phi).value == doctest::Approx(base.radial(1.3).value).epsilon(1e-14));
    CHECK(rot.area_isoperimetrix() == doctest::Approx(base.area_isoperimetrix()).epsilon(1e-10));
    CHECK(rot.q_star() == doctest::Approx(base.q_star()).epsilon(1e-10));
  }
}

TEST_CASE("constant radius degenerates to the Euclidean picture") {
  const double rho = 1.7;
  const auto ind = Indicatrix::build(IndicatrixSpec::circle(rho));
  for (double t : {0.0, 2.2}) {
    CHECK(ind.support_h(t, 1) == 0.0);
    CHECK(ind.support_h(t, 2) == 0.0);
  }
  // Quadrature over the full grid; 1/rho is inexact in binary, so allow summation rounding.
  CHECK(ind.area_isoperimetrix() == doctest::Approx(kPi / (rho * rho)).epsilon(1e-12));
}
