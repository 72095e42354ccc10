#include "aph/indicatrix.hpp"

#include <boost/math/tools/minima.hpp>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

namespace aph {
namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

// Refines a grid extremum of f with Brent's method on the bracketing cells.
template <class F>
double polish_minimum(F&& f, double theta_best, double cell, double grid_value) {
  const auto [x, fx] = boost::math::tools::brent_find_minima(
      f, theta_best - cell, theta_best + cell, std::numeric_limits<double>::digits / 2 + 8);
  (void)x;
  return std::min(fx, grid_value);
}

}  // namespace

IndicatrixSpec IndicatrixSpec::rotated(double phi) const {
  // cos k(t - phi) = cos kt cos k phi + sin kt sin k phi, etc.
  IndicatrixSpec out{constant_term, {}};
  for (const auto& h : harmonics) {
    const double c = std::cos(h.k * phi);
    const double s = std::sin(h.k * phi);
    out.harmonics.push_back({h.k, h.cos_amp * c - h.sin_amp * s, h.cos_amp * s + h.sin_amp * c});
  }
  return out;
}

Indicatrix Indicatrix::build(const IndicatrixSpec& spec, std::size_t grid_resolution) {
  using Code = IndicatrixError::Code;
  if (grid_resolution < 64) {
    throw IndicatrixError(Code::kBadGrid, "indicatrix grid_resolution must be >= 64");
  }
  for (const auto& h : spec.harmonics) {
    if (h.k < 2 || h.k % 2 != 0) {
      std::ostringstream msg;
      msg << "indicatrix harmonic k=" << h.k
          << " breaks central symmetry (harmonics must be even and >= 2)";
      throw IndicatrixError(Code::kOddHarmonic, msg.str());
    }
  }

  Indicatrix ind;
  ind.spec_ = spec;
  ind.grid_ = grid_resolution;
  ind.by_order_ = spec.harmonics;
  std::stable_sort(ind.by_order_.begin(), ind.by_order_.end(),
                   [](const Harmonic& a, const Harmonic& b) { return a.k < b.k; });

  const double cell = kTwoPi / static_cast<double>(grid_resolution);
  double min_r = std::numeric_limits<double>::infinity();
  double min_margin = std::numeric_limits<double>::infinity();
  double margin_theta = 0.0;
  double r_theta = 0.0;
  for (std::size_t i = 0; i < grid_resolution; ++i) {
    const double theta = cell * static_cast<double>(i);
    const AngleJet r = ind.radial(theta);
    if (r.value < min_r) {
      min_r = r.value;
      r_theta = theta;
    }
    const double margin = r.value * r.value + 2.0 * r.d1 * r.d1 - r.value * r.d2;
    if (margin < min_margin) {
      min_margin = margin;
      margin_theta = theta;
    }
  }
  if (min_r <= 0.0) {
    std::ostringstream msg;
    msg << "indicatrix radius is non-positive near theta=" << r_theta << " (r=" << min_r << ")";
    throw IndicatrixError(Code::kNonPositiveRadius, msg.str());
  }
  if (min_margin <= 0.0) {
    std::ostringstream msg;
    msg << "indicatrix is not strictly convex near theta=" << margin_theta
        << " (r^2 + 2r'^2 - r r'' = " << min_margin << ")";
    throw IndicatrixError(Code::kNonConvex, msg.str());
  }
  ind.min_radius_ = min_r;
  ind.convexity_margin_ = min_margin;

  double area_sum = 0.0;
  double q_lo = std::numeric_limits<double>::infinity();
  double q_hi = -q_lo;
  double theta_lo = 0.0;
  double theta_hi = 0.0;
  for (std::size_t i = 0; i < grid_resolution; ++i) {
    const double theta = cell * static_cast<double>(i);
    const AngleJet h = ind.support(theta);
    area_sum += h.value * (h.value + h.d2);
    const double q = h.value * h.value * h.value * (h.value + h.d2);
    if (q < q_lo) {
      q_lo = q;
      theta_lo = theta;
    }
    if (q > q_hi) {
      q_hi = q;
      theta_hi = theta;
    }
  }
  ind.area_iso_ = 0.5 * area_sum * cell;

  if (ind.is_isotropic()) {
    ind.q_star_ = q_lo;
    ind.q_max_ = q_hi;
  } else {
    // Polishing makes Q_star independent of where the grid happens to fall.
    ind.q_star_ = polish_minimum([&](double t) { return ind.anisotropy_q(t); }, theta_lo, cell,
                                 q_lo);
    ind.q_max_ = -polish_minimum([&](double t) { return -ind.anisotropy_q(t); }, theta_hi, cell,
                                 -q_hi);
  }
  return ind;
}

AngleJet Indicatrix::radial(double theta) const {
  AngleJet r{spec_.constant_term, 0.0, 0.0};
  for (const auto& h : spec_.harmonics) {
    const double k = h.k;
    const double c = std::cos(k * theta);
    const double s = std::sin(k * theta);
    r.value += h.cos_amp * c + h.sin_amp * s;
    r.d1 += k * (-h.cos_amp * s + h.sin_amp * c);
    r.d2 += -k * k * (h.cos_amp * c + h.sin_amp * s);
  }
  return r;
}

namespace {

AngleJet support_from_radial(const AngleJet& r) {
  const double inv = 1.0 / r.value;
  return {inv, -r.d1 * inv * inv, (2.0 * r.d1 * r.d1 - r.value * r.d2) * inv * inv * inv};
}

}  // namespace

AngleJet Indicatrix::support_along(const Vec2& direction) const {
  AngleJet r{spec_.constant_term, 0.0, 0.0};
  if (spec_.harmonics.empty()) return support_from_radial(r);
  // e^{i k theta} by repeated multiplication with e^{i theta} = direction.
  int power = 0;
  double c = 1.0, s = 0.0;
  for (const auto& h : by_order_) {
    while (power < h.k) {
      const double cn = c * direction.x - s * direction.y;
      s = s * direction.x + c * direction.y;
      c = cn;
      ++power;
    }
    const double k = h.k;
    r.value += h.cos_amp * c + h.sin_amp * s;
    r.d1 += k * (-h.cos_amp * s + h.sin_amp * c);
    r.d2 += -k * k * (h.cos_amp * c + h.sin_amp * s);
  }
  return support_from_radial(r);
}

AngleJet Indicatrix::support(double theta) const { return support_from_radial(radial(theta)); }

double Indicatrix::support_h(double theta, int order) const {
  const AngleJet h = support(theta);
  switch (order) {
    case 0:
      return h.value;
    case 1:
      return h.d1;
    case 2:
      return h.d2;
    default:
      throw DomainError("support_h: order must be 0, 1 or 2");
  }
}

Vec2 Indicatrix::isoperimetrix_point(double theta) const {
  const AngleJet h = support(theta);
  const Vec2 tau{std::cos(theta), std::sin(theta)};
  return -h.d1 * tau + h.value * perp(tau);
}

double Indicatrix::anisotropy_q(double theta) const {
  const AngleJet h = support(theta);
  return h.value * h.value * h.value * (h.value + h.d2);
}

double Indicatrix::area_isoperimetrix_by_parts() const {
  const double cell = kTwoPi / static_cast<double>(grid_);
  double sum = 0.0;
  for (std::size_t i = 0; i < grid_; ++i) {
    const AngleJet h = support(cell * static_cast<double>(i));
    sum += h.value * h.value - h.d1 * h.d1;
  }
  return 0.5 * sum * cell;
}

}  // namespace aph
