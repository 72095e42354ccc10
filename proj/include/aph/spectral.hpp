#pragma once

// Fourier machinery for samples on a uniform periodic grid u_j = j * period / M.
// FFTs are delegated to FFTW; everything here assumes M is even.

#include <complex>
#include <cstddef>
#include <numbers>
#include <span>
#include <vector>

#include "aph/vec2.hpp"

namespace aph::spectral {

using Complex = std::complex<double>;

constexpr double kTwoPi = 2.0 * std::numbers::pi;

constexpr bool is_power_of_two(std::size_t n) { return n != 0 && (n & (n - 1)) == 0; }

/// Unnormalised real-to-half-complex DFT: M/2 + 1 coefficients.
std::vector<Complex> real_forward(std::span<const double> samples);

/// Inverse of real_forward, including the 1/M normalisation.
std::vector<double> real_inverse(std::span<const Complex> coeffs, std::size_t m);

/// Unnormalised complex DFT (negative exponent).
std::vector<Complex> complex_forward(std::span<const Complex> samples);

/// Inverse of complex_forward, including the 1/M normalisation.
std::vector<Complex> complex_inverse(std::span<const Complex> coeffs);

/// Signed wavenumber of DFT slot j for a length-m transform.
inline double wavenumber(std::size_t j, std::size_t m) {
  return j <= m / 2 ? static_cast<double>(j) : static_cast<double>(j) - static_cast<double>(m);
}

/// order-th derivative of a real periodic sample with the given period.
/// The Nyquist mode is dropped for odd orders (it has no real derivative).
/// Non-mean modes with |c_k| <= relative_floor * max_j |c_j| are zeroed first
/// (a Krasny filter); relative_floor = 0 disables it.
std::vector<double> derivative(std::span<const double> samples, int order,
                               double period = kTwoPi, double relative_floor = 0.0);

/// Rounding-noise floor, relative to the largest Fourier coefficient, of a
/// curvature computed from second spectral derivatives of M points.
double curvature_noise_floor(std::size_t m);

/// First and second u-derivatives of a closed curve sampled on [0, 2pi).
void curve_derivatives(std::span<const Vec2> points, std::vector<Vec2>& first,
                       std::vector<Vec2>& second);

/// Mean of the samples' trigonometric interpolant, i.e. the periodic trapezoid rule / M.
double mean(std::span<const double> samples);

/// Band-limited interpolant through real periodic samples on [0, period):
///   f(u) = mean + sum_k (a_k cos(k w u) + b_k sin(k w u)),  w = 2 pi / period.
class TrigInterpolant {
 public:
  explicit TrigInterpolant(std::span<const double> samples, double period = kTwoPi);

  struct Evaluation {
    double value = 0.0;
    double derivative = 0.0;
    /// Antiderivative of (f - mean), zero at u = 0. Periodic.
    double periodic_integral = 0.0;
  };

  /// All three quantities in one pass over the spectrum.
  Evaluation evaluate(double u) const;
  double value(double u) const { return evaluate(u).value; }
  double derivative(double u) const { return evaluate(u).derivative; }
  double periodic_integral(double u) const { return evaluate(u).periodic_integral; }
  double mean() const { return mean_; }
  std::size_t size() const { return m_; }

 private:
  std::size_t m_;
  double scale_;  // 2pi / period
  double mean_;
  double integral_offset_;  // value of the raw antiderivative series at u = 0
  std::vector<double> cos_;  // a_k, k = 1..m/2
  std::vector<double> sin_;  // b_k
  std::vector<double> wavenumber_;  // k w
  std::vector<double> cos_int_;     // a_k / (k w)
  std::vector<double> sin_int_;     // b_k / (k w)
};

/// Band-limited interpolant of a closed planar curve.
class CurveInterpolant {
 public:
  explicit CurveInterpolant(std::span<const Vec2> points);
  Vec2 value(double u) const { return {x_.value(u), y_.value(u)}; }
  Vec2 derivative(double u) const { return {x_.derivative(u), y_.derivative(u)}; }

 private:
  TrigInterpolant x_;
  TrigInterpolant y_;
};

}  // namespace aph::spectral
