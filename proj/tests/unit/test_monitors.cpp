#include <cmath>
#include <utility>
#include <vector>

#include "aph/monitors.hpp"
#include "doctest.h"
#include "oracles.hpp"

using namespace aph;
using oracle::kPi;
using oracle::kTwoPi;

namespace {

CurveState polar(const oracle::PolarCurve& c, std::size_t m, double scale = 1.0) {
  return CurveState(oracle::sample([&](double u) { return scale * c.point(u); }, m));
}

Indicatrix anisotropic() { return Indicatrix::build({1.0, {{2, 0.1, 0.04}, {4, 0.01, 0.0}}}); }

// Euclidean monitors of a polar curve by dense trapezoid quadrature of the
// closed-form curvature.
struct DenseMonitors {
  double L, kappa_bar, kosc, diss1;
};

DenseMonitors dense_monitors(const oracle::PolarCurve& c, std::size_t n = 100000) {
  const double length = oracle::periodic_integral([&](double u) { return c.speed(u); }, kTwoPi, n);
  const double total = oracle::periodic_integral([&](double u) { return c.curvature(u) * c.speed(u); }, kTwoPi, n);
  const double bar = total / length;
  const double spread = oracle::periodic_integral(
      [&](double u) {
        const double d = c.curvature(u) - bar;
        return d * d * c.speed(u);
      },
      kTwoPi, n);
  const oracle::Scalar k = [&](double u) { return c.curvature(u); };
  const double diss = oracle::periodic_integral(
      [&](double u) {
        const double ks = oracle::d1(k, u) / c.speed(u);
        return ks * ks * c.speed(u);
      },
      kTwoPi, n);
  return {length, bar, length * spread, diss};
}

std::vector<std::pair<double, double>> series(int n, double t_end, const std::function<double(double)>& f) {
  std::vector<std::pair<double, double>> out;
  for (int i = 0; i < n; ++i) {
    const double t = t_end * i / (n - 1);
    out.emplace_back(t, f(t));
  }
  return out;
}

}  // namespace

TEST_CASE("unit circle, Euclidean") {
  const auto r = compute_monitors(polar(oracle::cosine_bump(0.0, 1), 64), Indicatrix::euclidean(), 1);
  CHECK(r.L == doctest::Approx(kTwoPi).epsilon(1e-14));
  CHECK(r.A == doctest::Approx(kPi).epsilon(1e-14));
  CHECK(r.kappa_bar == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(r.total_kappa == doctest::Approx(kTwoPi).epsilon(1e-14));
  CHECK(r.kosc < 1e-20);
  CHECK(r.iso_ratio == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(r.diss_norm < 1e-20);
  CHECK(r.kappa_l2 == doctest::Approx(kTwoPi).epsilon(1e-14));
  CHECK(r.convex);
}

TEST_CASE("rescaled isoperimetrix") {
  for (const auto& ind : {anisotropic(), Indicatrix::build(IndicatrixSpec::circle(2)),
                          Indicatrix::build({1.0, {{2, 0.19, 0.0}}})}) {
    const CurveState iso(rescaled_isoperimetrix(ind, 1.7, {1, 1}, 256));
    for (int p : {1, 2}) {
      const auto r = compute_monitors(iso, ind, p);
      CHECK(r.kosc <= 1e-10);
      CHECK(r.iso_ratio == doctest::Approx(1.0).epsilon(1e-8));
      CHECK(r.convex);
      CHECK(r.kappa_bar == doctest::Approx(2 * ind.area_isoperimetrix() / r.L).epsilon(1e-10));
    }
  }
}

TEST_CASE("perturbed circle against dense quadrature") {
  const auto c = oracle::cosine_bump(0.05, 2);
  const auto ref = dense_monitors(c);
  const auto r = compute_monitors(polar(c, 256), Indicatrix::euclidean(), 1);
  CHECK(r.L == doctest::Approx(ref.L).epsilon(1e-10));
  CHECK(r.kappa_bar == doctest::Approx(ref.kappa_bar).epsilon(1e-10));
  CHECK(r.kosc == doctest::Approx(ref.kosc).epsilon(1e-6));
  CHECK(r.diss_norm == doctest::Approx(ref.diss1).epsilon(1e-6));
  CHECK(r.iso_ratio > 1.0);
}

TEST_CASE("convexity flag") {
  CHECK(compute_monitors(polar(oracle::cosine_bump(0.02, 5), 128), Indicatrix::euclidean(), 1).convex);
  CHECK_FALSE(compute_monitors(polar(oracle::cosine_bump(0.06, 5), 128), Indicatrix::euclidean(), 1).convex);
}

TEST_CASE("Kosc identity L int kappa^2 - (int kappa)^2") {
  for (const auto& ind : {Indicatrix::euclidean(), anisotropic()}) {
    for (const auto& c : {oracle::cosine_bump(0.05, 2), oracle::cosine_bump(0.06, 5), oracle::cosine_bump(0.1, 3)}) {
      const auto r = compute_monitors(polar(c, 256), ind, 1);
      const double identity = r.L * r.kappa_l2 - r.total_kappa * r.total_kappa;
      CHECK(std::abs(r.kosc - identity) <= 1e-8 * r.L * r.kappa_l2);
      // With total curvature 2 A_iso the identity takes its closed form.
      const double a = ind.area_isoperimetrix();
      CHECK(std::abs(r.kosc - (r.L * r.kappa_l2 - 4 * a * a)) <= 1e-8 * r.L * r.kappa_l2);
    }
  }
}

TEST_CASE("Kosc is invariant under homothety") {
  const auto ind = anisotropic();
  const auto c = oracle::cosine_bump(0.08, 3);
  const auto base = compute_monitors(polar(c, 256), ind, 1);
  for (double lambda : {0.1, 3.0, 17.0}) {
    const auto r = compute_monitors(polar(c, 256, lambda), ind, 1);
    CHECK(r.L == doctest::Approx(lambda * base.L).epsilon(1e-12));
    CHECK(r.kosc == doctest::Approx(base.kosc).epsilon(1e-8));
    CHECK(r.iso_ratio == doctest::Approx(base.iso_ratio).epsilon(1e-10));
  }
}

TEST_CASE("Kosc vanishes exactly when kappa is constant on the grid") {
  const auto ind = anisotropic();
  auto spread = [&](const CurveState& s) {
    const auto f = compute_frame(s, ind);
    const auto [lo, hi] = std::minmax_element(f.kappa.begin(), f.kappa.end());
    return *hi - *lo;
  };
  std::vector<CurveState> curves{CurveState(rescaled_isoperimetrix(ind, 1.0, {}, 128)),
                                 CurveState(rescaled_isoperimetrix(ind, 5.0, {2, 0}, 256)),
                                 polar(oracle::cosine_bump(1e-3, 2), 128), polar(oracle::cosine_bump(0.05, 3), 128)};
  for (const auto& s : curves) {
    const auto r = compute_monitors(s, ind, 1);
    const bool small = r.kosc <= 1e-12;
    const bool flat = spread(s) <= 1e-5 * std::abs(r.kappa_bar);
    CHECK(small == flat);
  }
}

TEST_CASE("a-priori Kosc bound") {
  MonitorRecord initial;
  initial.L = kTwoPi;
  initial.kosc = 0.01;
  const auto ind = Indicatrix::euclidean();
  CHECK(kosc_apriori_bound(initial, initial, ind) == doctest::Approx(0.01));
  MonitorRecord later = initial;
  later.L = kTwoPi * 0.99;
  CHECK(kosc_apriori_bound(later, initial, ind) ==
        doctest::Approx(0.01 + 8 * kPi * kPi * std::log(1 / 0.99)).epsilon(1e-14));
}

TEST_CASE("waiting-time bound") {
  CHECK(waiting_time_bound(1, kPi, kPi, 1.0) == 0.0);
  CHECK(waiting_time_bound(1, kPi, kPi, 1.1) == doctest::Approx(0.84).epsilon(1e-13));
  CHECK(waiting_time_bound(2, kPi, kPi, 1.1) == doctest::Approx(8.0 / 3.0 * 0.331).epsilon(1e-13));
  CHECK(waiting_time_bound(2, kPi, kPi, 1.1) == doctest::Approx(0.8827).epsilon(1e-4));
  double previous = 0.0;
  for (double i0 = 1.0; i0 < 2.0; i0 += 0.05) {
    const double b = waiting_time_bound(3, 2.0, 0.7, i0);
    CHECK(b >= previous);
    previous = b;
  }
  CHECK_THROWS_AS((void)waiting_time_bound(1, kPi, kPi, 0.99), DomainError);
  CHECK_THROWS_AS((void)waiting_time_bound(0, kPi, kPi, 1.1), DomainError);
  CHECK_THROWS_AS((void)waiting_time_bound(1, -1.0, kPi, 1.1), DomainError);
}

TEST_CASE("decay-rate floor") {
  CHECK(decay_rate_floor(Indicatrix::euclidean(), 1, kTwoPi) == doctest::Approx(1.0));
  CHECK(decay_rate_floor(Indicatrix::euclidean(), 2, kPi) == doctest::Approx(64.0));
  const auto ind = Indicatrix::build(IndicatrixSpec::circle(0.5));
  CHECK(decay_rate_floor(ind, 1, kTwoPi) == doctest::Approx(16.0));
}

TEST_CASE("decay-rate fit") {
  SUBCASE("exact exponential") {
    const auto s = series(40, 5.0, [](double t) { return std::exp(-3 * t); });
    const auto fit = decay_rate_fit(s);
    CHECK(fit.rate == doctest::Approx(3.0).epsilon(1e-9));
    CHECK(fit.r_squared == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(fit.samples == 40);
  }
  SUBCASE("perturbed exponential") {
    const auto s = series(60, 20.0, [](double t) { return 5 * std::exp(-0.7 * t) * (1 + 0.01 * std::sin(t)); });
    CHECK(std::abs(decay_rate_fit(s).rate - 0.7) <= 0.02);
  }
  SUBCASE("samples at the noise floor are ignored") {
    auto s = series(12, 1.0, [](double t) { return std::exp(-2 * t); });
    s.emplace_back(2.0, 1e-14);
    s.emplace_back(3.0, 0.0);
    const auto fit = decay_rate_fit(s);
    CHECK(fit.samples == 12);
    CHECK(fit.rate == doctest::Approx(2.0));
  }
  SUBCASE("too few samples") {
    const auto s = series(9, 1.0, [](double t) { return std::exp(-t); });
    CHECK_THROWS_AS((void)decay_rate_fit(s), InsufficientData);
  }
}
