#include "aph/curve_geometry.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "aph/spectral.hpp"

namespace aph {
namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

double point_segment_distance(const Vec2& p, const Vec2& a, const Vec2& b) {
  const Vec2 ab = b - a;
  const double len2 = dot(ab, ab);
  double t = len2 > 0.0 ? dot(p - a, ab) / len2 : 0.0;
  t = std::clamp(t, 0.0, 1.0);
  return norm(p - (a + t * ab));
}

double directed_hausdorff(std::span<const Vec2> from, std::span<const Vec2> to) {
  double worst = 0.0;
  const std::size_t n = to.size();
  for (const Vec2& p : from) {
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t j = 0; j < n; ++j) {
      best = std::min(best, point_segment_distance(p, to[j], to[(j + 1) % n]));
    }
    worst = std::max(worst, best);
  }
  return worst;
}

// Parameters u_j in [0, 2pi) at which int_0^u weight du' = j * total / M.
std::vector<double> equidistributing_nodes(std::span<const double> weight) {
  const std::size_t m = weight.size();
  const double du = kTwoPi / static_cast<double>(m);
  const spectral::TrigInterpolant w(weight);
  const double mean = w.mean();
  if (!(mean > 0.0)) throw DomainError("equidistribution weight must have positive mean");

  // Cumulative integral on the grid: mean * u + periodic part, via the spectrum.
  auto coeffs = spectral::real_forward(weight);
  coeffs[0] = 0.0;
  coeffs[m / 2] = 0.0;
  for (std::size_t j = 1; j < m / 2; ++j) coeffs[j] /= spectral::Complex(0.0, static_cast<double>(j));
  const auto periodic = spectral::real_inverse(coeffs, m);
  std::vector<double> cumulative(m + 1);
  for (std::size_t i = 0; i < m; ++i) {
    cumulative[i] = mean * du * static_cast<double>(i) + periodic[i] - periodic[0];
  }
  cumulative[m] = mean * kTwoPi;

  std::vector<double> nodes(m);
  nodes[0] = 0.0;
  const double spacing = mean * kTwoPi / static_cast<double>(m);
  std::size_t cell = 0;
  for (std::size_t j = 1; j < m; ++j) {
    const double target = spacing * static_cast<double>(j);
    while (cell + 1 < m && cumulative[cell + 1] <= target) ++cell;
    double lo = du * static_cast<double>(cell);
    double hi = lo + du;
    const double c_lo = cumulative[cell];
    const double c_hi = cumulative[cell + 1];
    double u = lo + du * (target - c_lo) / (c_hi - c_lo);
    // Safeguarded Newton on C(u) = mean u + P(u).
    for (int iter = 0; iter < 30; ++iter) {
      const auto e = w.evaluate(u);
      const double c = mean * u + e.periodic_integral - target;
      if (c == 0.0) break;
      if (c > 0.0) hi = u; else lo = u;
      const double step = c / e.value;
      double next = u - step;
      // Closed bracket: a root on a grid node must not trigger bisection.
      if (!(next >= lo && next <= hi)) next = 0.5 * (lo + hi);
      const bool done = std::abs(next - u) < 1e-15 * kTwoPi;
      u = next;
      if (done) break;
    }
    nodes[j] = u;
  }
  return nodes;
}

}  // namespace

CurveState::CurveState(std::vector<Vec2> points, double time)
    : points_(std::move(points)), time_(time) {
  if (points_.size() < kMinPoints || !spectral::is_power_of_two(points_.size())) {
    std::ostringstream msg;
    msg << "curve needs a power-of-two number of points >= " << kMinPoints << ", got "
        << points_.size();
    throw DomainError(msg.str());
  }
}

double CurveState::du() const { return kTwoPi / static_cast<double>(points_.size()); }

FrameData compute_frame(const CurveState& state, const Indicatrix& ind) {
  const std::size_t m = state.size();
  std::vector<Vec2> d1, d2;
  spectral::curve_derivatives(state.points(), d1, d2);

  FrameData f;
  f.du = state.du();
  f.speed.resize(m);
  double mean_speed = 0.0;
  double min_speed = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < m; ++i) {
    f.speed[i] = norm(d1[i]);
    mean_speed += f.speed[i];
    min_speed = std::min(min_speed, f.speed[i]);
  }
  mean_speed /= static_cast<double>(m);
  if (!(min_speed >= 1e-12 * mean_speed) || !(mean_speed > 0.0)) {
    std::ostringstream msg;
    msg << "degenerate tangent: min |Gamma_u| = " << min_speed << ", mean = " << mean_speed;
    throw DegenerateTangent(msg.str());
  }

  f.tau.resize(m);
  f.normal.resize(m);
  f.theta.resize(m);
  f.k.resize(m);
  f.weight.resize(m);
  f.T.resize(m);
  f.N.resize(m);
  f.kappa.resize(m);
  f.h.resize(m);
  f.h_theta.resize(m);
  f.h_theta_theta.resize(m);
  for (std::size_t i = 0; i < m; ++i) {
    const double inv_speed = 1.0 / f.speed[i];
    f.tau[i] = inv_speed * d1[i];
    f.normal[i] = perp(f.tau[i]);
    const double raw = std::atan2(d1[i].y, d1[i].x);
    if (i == 0) {
      f.theta[i] = raw;
    } else {
      double jump = raw - f.theta[i - 1];
      jump -= kTwoPi * std::nearbyint(jump / kTwoPi);
      f.theta[i] = f.theta[i - 1] + jump;
    }
    f.k[i] = dot(d2[i], f.normal[i]) * inv_speed * inv_speed;

    const AngleJet h = ind.support_along(f.tau[i]);
    f.h[i] = h.value;
    f.h_theta[i] = h.d1;
    f.h_theta_theta[i] = h.d2;
    f.weight[i] = f.speed[i] * h.value;
    f.T[i] = (1.0 / h.value) * f.tau[i];
    f.N[i] = -h.d1 * f.tau[i] + h.value * f.normal[i];
    f.kappa[i] = f.k[i] * (h.value + h.d2);
  }
  return f;
}

double minkowski_length(const FrameData& frame) {
  double sum = 0.0;
  for (double w : frame.weight) sum += w;
  return sum * frame.du;
}

double minkowski_length(const CurveState& state, const Indicatrix& ind) {
  return minkowski_length(compute_frame(state, ind));
}

double euclidean_length(const FrameData& frame) {
  double sum = 0.0;
  for (double s : frame.speed) sum += s;
  return sum * frame.du;
}

double enclosed_area(const CurveState& state) {
  std::vector<Vec2> d1, d2;
  spectral::curve_derivatives(state.points(), d1, d2);
  double sum = 0.0;
  const auto pts = state.points();
  for (std::size_t i = 0; i < pts.size(); ++i) sum += cross(pts[i], d1[i]);
  return 0.5 * sum * state.du();
}

double sigma_integral(std::span<const double> field, const FrameData& frame) {
  double sum = 0.0;
  for (std::size_t i = 0; i < field.size(); ++i) sum += field[i] * frame.weight[i];
  return sum * frame.du;
}

std::vector<double> sigma_derivative(std::span<const double> field, const FrameData& frame,
                                     int order, double relative_floor) {
  if (order < 0) throw DomainError("sigma_derivative: order must be non-negative");
  std::vector<double> g(field.begin(), field.end());
  for (int n = 0; n < order; ++n) {
    g = spectral::derivative(g, 1, spectral::kTwoPi, n == 0 ? relative_floor : 0.0);
    for (std::size_t i = 0; i < g.size(); ++i) g[i] /= frame.weight[i];
  }
  return g;
}

std::vector<double> resample_field_by_weight(std::span<const double> field,
                                             std::span<const double> weight) {
  const auto nodes = equidistributing_nodes(weight);
  const spectral::TrigInterpolant f(field);
  std::vector<double> out(nodes.size());
  for (std::size_t j = 0; j < nodes.size(); ++j) out[j] = f.value(nodes[j]);
  return out;
}

CurveState resample_uniform(const CurveState& state, const Indicatrix& ind) {
  const FrameData frame = compute_frame(state, ind);
  const auto nodes = equidistributing_nodes(frame.speed);
  const spectral::CurveInterpolant curve(state.points());
  std::vector<Vec2> pts(nodes.size());
  pts[0] = state.points()[0];
  for (std::size_t j = 1; j < nodes.size(); ++j) pts[j] = curve.value(nodes[j]);
  return state.with_points(std::move(pts));
}

Vec2 area_centroid(const CurveState& state) {
  std::vector<Vec2> d1, d2;
  spectral::curve_derivatives(state.points(), d1, d2);
  const auto pts = state.points();
  double area = 0.0, mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    area += cross(pts[i], d1[i]);
    mx += pts[i].x * pts[i].x * d1[i].y;
    my -= pts[i].y * pts[i].y * d1[i].x;
  }
  // area sum carries the factor 2 of 1/2 oint (x dy - y dx).
  return {mx / area, my / area};
}

double diameter(std::span<const Vec2> points) {
  double best = 0.0;
  for (std::size_t i = 0; i < points.size(); ++i) {
    for (std::size_t j = i + 1; j < points.size(); ++j) {
      best = std::max(best, norm(points[i] - points[j]));
    }
  }
  return best;
}

std::vector<Vec2> rescaled_isoperimetrix(const Indicatrix& ind, double area, Vec2 center,
                                         std::size_t samples) {
  const double scale = std::sqrt(area / ind.area_isoperimetrix());
  std::vector<Vec2> out(samples);
  for (std::size_t i = 0; i < samples; ++i) {
    const double theta = kTwoPi * static_cast<double>(i) / static_cast<double>(samples);
    out[i] = center + scale * ind.isoperimetrix_point(theta);
  }
  return out;
}

std::vector<Vec2> perturbed_isoperimetrix(const Indicatrix& ind, double scale,
                                          std::span<const Harmonic> perturbation,
                                          std::size_t samples) {
  std::vector<Vec2> out(samples);
  for (std::size_t i = 0; i < samples; ++i) {
    const double theta = kTwoPi * static_cast<double>(i) / static_cast<double>(samples);
    double offset = 0.0;
    for (const auto& h : perturbation) {
      offset += h.cos_amp * std::cos(h.k * theta) + h.sin_amp * std::sin(h.k * theta);
    }
    out[i] = scale * ind.isoperimetrix_point(theta) + offset * Vec2{-std::sin(theta), std::cos(theta)};
  }
  return out;
}

std::vector<Vec2> densify(const CurveState& state, std::size_t samples) {
  const std::size_t m = state.size();
  if (samples < m || !spectral::is_power_of_two(samples)) {
    throw DomainError("densify: target size must be a power of two >= curve size");
  }
  std::vector<spectral::Complex> z(m);
  for (std::size_t j = 0; j < m; ++j) z[j] = {state.points()[j].x, state.points()[j].y};
  const auto coeffs = spectral::complex_forward(z);

  // Zero-pad; split the Nyquist coefficient between +-m/2.
  const double gain = static_cast<double>(samples) / static_cast<double>(m);
  std::vector<spectral::Complex> padded(samples, 0.0);
  for (std::size_t j = 0; j < m / 2; ++j) padded[j] = gain * coeffs[j];
  for (std::size_t j = m / 2 + 1; j < m; ++j) padded[samples - m + j] = gain * coeffs[j];
  padded[m / 2] = 0.5 * gain * coeffs[m / 2];
  padded[samples - m / 2] += 0.5 * gain * coeffs[m / 2];
  const auto values = spectral::complex_inverse(padded);

  std::vector<Vec2> out(samples);
  for (std::size_t j = 0; j < samples; ++j) out[j] = {values[j].real(), values[j].imag()};
  return out;
}

double hausdorff_distance(std::span<const Vec2> a, std::span<const Vec2> b) {
  return std::max(directed_hausdorff(a, b), directed_hausdorff(b, a));
}

}  // namespace aph
