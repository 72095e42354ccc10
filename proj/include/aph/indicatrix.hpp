#pragma once

// The Minkowski unit circle, given in polar form by an even Fourier series
//
//   r(theta) = c0 + sum_k (a_k cos k theta + b_k sin k theta),  k even >= 2,
//
// and everything that depends only on it: the support function h = 1/r of the
// polar dual, the isoperimetrix, the anisotropy factor Q = h^3 (h + h'') and
// the two body constants A(isoperimetrix) and Q_star = min Q.

#include <cstddef>
#include <vector>

#include "aph/error.hpp"
#include "aph/vec2.hpp"

namespace aph {

struct Harmonic {
  int k = 2;
  double cos_amp = 0.0;
  double sin_amp = 0.0;

  friend bool operator==(const Harmonic&, const Harmonic&) = default;
};

struct IndicatrixSpec {
  double constant_term = 1.0;
  std::vector<Harmonic> harmonics;

  static IndicatrixSpec euclidean() { return {1.0, {}}; }
  static IndicatrixSpec circle(double radius) { return {radius, {}}; }
  /// Same body rotated by phi: r_new(theta) = r(theta - phi).
  IndicatrixSpec rotated(double phi) const;

  friend bool operator==(const IndicatrixSpec&, const IndicatrixSpec&) = default;
};

class IndicatrixError : public DomainError {
 public:
  enum class Code { kOddHarmonic, kNonPositiveRadius, kNonConvex, kBadGrid };
  IndicatrixError(Code code, const std::string& what) : DomainError(what), code_(code) {}
  Code code() const { return code_; }

 private:
  Code code_;
};

/// Value and first two theta-derivatives of a scalar function of angle.
struct AngleJet {
  double value = 0.0;
  double d1 = 0.0;
  double d2 = 0.0;
};

class Indicatrix {
 public:
  static constexpr std::size_t kDefaultGrid = 4096;

  /// Validates the spec and precomputes the body constants.
  /// Throws IndicatrixError on odd harmonics, r <= 0 or loss of strict convexity.
  static Indicatrix build(const IndicatrixSpec& spec, std::size_t grid_resolution = kDefaultGrid);

  static Indicatrix euclidean() { return build(IndicatrixSpec::euclidean()); }

  const IndicatrixSpec& spec() const { return spec_; }
  std::size_t grid_resolution() const { return grid_; }

  /// r, r', r'' from the exact Fourier derivatives.
  AngleJet radial(double theta) const;
  /// h, h', h'' with h = 1/r.
  AngleJet support(double theta) const;
  /// support() at the angle of the unit vector `direction`, without trig calls.
  AngleJet support_along(const Vec2& direction) const;
  /// Single derivative of the support function, order in {0, 1, 2}.
  double support_h(double theta, int order) const;

  /// -h' (cos, sin) + h (-sin, cos): the Minkowski normal of the indicatrix.
  Vec2 isoperimetrix_point(double theta) const;

  /// h^3 (h + h'') > 0.
  double anisotropy_q(double theta) const;

  /// 1/2 int h (h + h'') dtheta.
  double area_isoperimetrix() const { return area_iso_; }
  /// Same area via 1/2 int (h^2 - h'^2) dtheta; must match area_isoperimetrix().
  double area_isoperimetrix_by_parts() const;

  double q_star() const { return q_star_; }
  double q_max() const { return q_max_; }
  /// Grid minimum of r^2 + 2 r'^2 - r r'' (the polar convexity condition).
  double convexity_margin() const { return convexity_margin_; }
  /// Grid minimum of r.
  double min_radius() const { return min_radius_; }

  bool is_isotropic() const { return spec_.harmonics.empty(); }

 private:
  Indicatrix() = default;

  IndicatrixSpec spec_;
  std::vector<Harmonic> by_order_;  // spec_.harmonics sorted by k
  std::size_t grid_ = kDefaultGrid;
  double area_iso_ = 0.0;
  double q_star_ = 0.0;
  double q_max_ = 0.0;
  double convexity_margin_ = 0.0;
  double min_radius_ = 0.0;
};

}  // namespace aph
