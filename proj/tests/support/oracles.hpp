#pragma once

// Reference computations for the tests. Nothing here calls into the library's
// spectral or geometry code: derivatives are finite differences of analytic
// formulas, integrals are dense sums, areas are polygon shoelaces.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <functional>
#include <numbers>
#include <string>
#include <vector>

#include "aph/vec2.hpp"

namespace oracle {

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

using Scalar = std::function<double(double)>;

/// Fourth-order central difference for f'.
inline double d1(const Scalar& f, double x, double h = 1e-3) {
  return (-f(x + 2 * h) + 8 * f(x + h) - 8 * f(x - h) + f(x - 2 * h)) / (12 * h);
}

/// Fourth-order central difference for f''.
inline double d2(const Scalar& f, double x, double h = 1e-3) {
  return (-f(x + 2 * h) + 16 * f(x + h) - 30 * f(x) + 16 * f(x - h) - f(x - 2 * h)) / (12 * h * h);
}

/// Periodic trapezoid rule with n nodes over [0, period).
inline double periodic_integral(const Scalar& f, double period, std::size_t n) {
  double s = 0.0;
  for (std::size_t i = 0; i < n; ++i) s += f(period * static_cast<double>(i) / static_cast<double>(n));
  return s * period / static_cast<double>(n);
}

/// Signed area of a closed polygon.
inline double shoelace(const std::vector<aph::Vec2>& p) {
  double a = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    const auto& q = p[i];
    const auto& r = p[(i + 1) % p.size()];
    a += q.x * r.y - r.x * q.y;
  }
  return 0.5 * a;
}

/// Samples a parametrised closed curve at u_i = 2 pi i / m.
inline std::vector<aph::Vec2> sample(const std::function<aph::Vec2(double)>& g, std::size_t m) {
  std::vector<aph::Vec2> out(m);
  for (std::size_t i = 0; i < m; ++i) out[i] = g(kTwoPi * static_cast<double>(i) / static_cast<double>(m));
  return out;
}

/// Polar curve rho(u) (cos u, sin u) with closed-form derivatives supplied by
/// the caller through rho, rho', rho''.
struct PolarCurve {
  Scalar rho, rho1, rho2;

  aph::Vec2 point(double u) const { return {rho(u) * std::cos(u), rho(u) * std::sin(u)}; }
  double speed(double u) const { return std::hypot(rho(u), rho1(u)); }
  /// Signed curvature of a counter-clockwise polar graph.
  double curvature(double u) const {
    const double r = rho(u), r1 = rho1(u), r2 = rho2(u);
    return (r * r + 2 * r1 * r1 - r * r2) / std::pow(r * r + r1 * r1, 1.5);
  }
  /// Counter-clockwise unit tangent and its left normal.
  aph::Vec2 tangent(double u) const {
    const double r = rho(u), r1 = rho1(u);
    const aph::Vec2 d{r1 * std::cos(u) - r * std::sin(u), r1 * std::sin(u) + r * std::cos(u)};
    const double n = std::hypot(d.x, d.y);
    return {d.x / n, d.y / n};
  }
  aph::Vec2 normal(double u) const {
    const auto t = tangent(u);
    return {-t.y, t.x};
  }
};

/// rho(u) = 1 + eps cos(k u).
inline PolarCurve cosine_bump(double eps, int k) {
  return {[=](double u) { return 1.0 + eps * std::cos(k * u); },
          [=](double u) { return -eps * k * std::sin(k * u); },
          [=](double u) { return -eps * k * k * std::cos(k * u); }};
}

/// Curvature of the ellipse (a cos u, b sin u).
inline double ellipse_curvature(double a, double b, double u) {
  const double s = std::sin(u), c = std::cos(u);
  return a * b / std::pow(a * a * s * s + b * b * c * c, 1.5);
}

inline double max_abs_diff(const std::vector<double>& a, const std::vector<double>& b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

inline double max_dist(const std::vector<aph::Vec2>& a, const std::vector<aph::Vec2>& b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::hypot(a[i].x - b[i].x, a[i].y - b[i].y));
  return m;
}

/// Minimal structural XML check: balanced, properly nested elements and a
/// single root. Counts elements named `count_tag`.
struct XmlShape {
  bool well_formed = false;
  int counted = 0;
};

inline XmlShape xml_shape(const std::string& doc, const std::string& count_tag) {
  XmlShape out;
  std::vector<std::string> stack;
  int roots = 0;
  std::size_t pos = 0;
  while ((pos = doc.find('<', pos)) != std::string::npos) {
    const auto end = doc.find('>', pos);
    if (end == std::string::npos) return out;
    std::string tag = doc.substr(pos + 1, end - pos - 1);
    pos = end + 1;
    if (tag.empty()) return out;
    if (tag.front() == '?' || tag.front() == '!') continue;
    if (tag.front() == '/') {
      if (stack.empty() || stack.back() != tag.substr(1)) return out;
      stack.pop_back();
      continue;
    }
    const bool self_closing = tag.back() == '/';
    const std::string name = tag.substr(0, tag.find_first_of(" \t\n/"));
    if (std::count(tag.begin(), tag.end(), '"') % 2 != 0) return out;
    if (stack.empty()) ++roots;
    if (name == count_tag) ++out.counted;
    if (!self_closing) stack.push_back(name);
  }
  out.well_formed = stack.empty() && roots == 1;
  return out;
}

}  // namespace oracle
