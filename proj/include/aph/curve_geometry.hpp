#pragma once

// Discrete closed curves on a uniform periodic material grid u_i = 2 pi i / M,
// and their Euclidean and Minkowski differential geometry. All u-derivatives
// are Fourier spectral.

#include <cstddef>
#include <span>
#include <vector>

#include "aph/error.hpp"
#include "aph/indicatrix.hpp"
#include "aph/vec2.hpp"

namespace aph {

class CurveState {
 public:
  static constexpr std::size_t kMinPoints = 16;

  /// Throws DomainError unless the point count is a power of two >= 16.
  explicit CurveState(std::vector<Vec2> points, double time = 0.0);

  std::span<const Vec2> points() const { return points_; }
  std::size_t size() const { return points_.size(); }
  double time() const { return time_; }
  /// Grid spacing in u.
  double du() const;

  CurveState with_points(std::vector<Vec2> points) const { return CurveState(std::move(points), time_); }
  CurveState at_time(double time) const { return CurveState(points_, time); }

 private:
  std::vector<Vec2> points_;
  double time_;
};

/// Per-point geometry derived from a CurveState and an Indicatrix.
struct FrameData {
  double du = 0.0;
  std::vector<double> speed;   // |Gamma_u|
  std::vector<Vec2> tau;       // Euclidean unit tangent
  std::vector<Vec2> normal;    // Euclidean unit normal, tau rotated by +90 degrees
  std::vector<double> theta;   // continuous tangent angle
  std::vector<double> k;       // Euclidean curvature
  std::vector<double> weight;  // d sigma / du = |Gamma_u| / r(theta)
  std::vector<Vec2> T;         // Minkowski tangent r tau
  std::vector<Vec2> N;         // Minkowski normal -h' tau + h n
  std::vector<double> kappa;   // Minkowski curvature k (h + h'')
  std::vector<double> h;       // support function along the curve
  std::vector<double> h_theta;
  std::vector<double> h_theta_theta;

  std::size_t size() const { return speed.size(); }
};

/// Throws DegenerateTangent if min |Gamma_u| < 1e-12 * mean |Gamma_u|.
FrameData compute_frame(const CurveState& state, const Indicatrix& ind);

/// sum w_i du.
double minkowski_length(const FrameData& frame);
double minkowski_length(const CurveState& state, const Indicatrix& ind);

/// Euclidean length sum |Gamma_u| du.
double euclidean_length(const FrameData& frame);

/// Signed enclosed area 1/2 oint (x y_u - y x_u) du; positive for
/// counter-clockwise curves.
double enclosed_area(const CurveState& state);

/// Integral of a per-point field against d sigma.
double sigma_integral(std::span<const double> field, const FrameData& frame);

/// Applies d/d sigma = w^{-1} d/du `order` times. A positive relative_floor
/// filters the field's spectrum before the first derivative (see
/// spectral::derivative).
std::vector<double> sigma_derivative(std::span<const double> field, const FrameData& frame,
                                     int order, double relative_floor = 0.0);

/// Same image curve, re-indexed to uniform Euclidean arclength starting from
/// the current first point. Uses band-limited interpolation.
CurveState resample_uniform(const CurveState& state, const Indicatrix& ind);

/// Values of a per-point field at the M points where the cumulative integral of
/// `weight` du is uniform, starting at u = 0.
std::vector<double> resample_field_by_weight(std::span<const double> field,
                                             std::span<const double> weight);

/// Area centroid of the enclosed region.
Vec2 area_centroid(const CurveState& state);

/// Maximum pairwise distance between curve points.
double diameter(std::span<const Vec2> points);

/// Rescaled, translated isoperimetrix with the requested enclosed area,
/// sampled at `samples` equally spaced angles.
std::vector<Vec2> rescaled_isoperimetrix(const Indicatrix& ind, double area, Vec2 center,
                                         std::size_t samples);

/// scale * isoperimetrix_point(theta_i) + sum_k (a_k cos k theta_i + b_k sin k theta_i) n(theta_i)
/// with theta_i = 2 pi i / samples and n(theta) = (-sin theta, cos theta).
std::vector<Vec2> perturbed_isoperimetrix(const Indicatrix& ind, double scale,
                                          std::span<const Harmonic> perturbation,
                                          std::size_t samples);

/// Band-limited upsampling of the curve to `samples` points.
std::vector<Vec2> densify(const CurveState& state, std::size_t samples);

/// Symmetric Hausdorff distance between two closed polylines.
double hausdorff_distance(std::span<const Vec2> a, std::span<const Vec2> b);

}  // namespace aph
