#include "aph/spectral.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <mutex>
#include <stdexcept>
#include <utility>

namespace aph::spectral {
namespace {

enum class PlanKind { kRealForward, kRealInverse, kComplexForward, kComplexInverse };

// FFTW planning is not thread-safe, execution with new-array functions is.
class PlanCache {
 public:
  static PlanCache& instance() {
    static PlanCache cache;
    return cache;
  }

  fftw_plan get(PlanKind kind, std::size_t n) {
    std::lock_guard lock(mutex_);
    auto key = std::make_pair(kind, n);
    if (auto it = plans_.find(key); it != plans_.end()) return it->second;

    const int len = static_cast<int>(n);
    const unsigned flags = FFTW_ESTIMATE | FFTW_UNALIGNED;
    auto* real = fftw_alloc_real(n);
    auto* cplx = fftw_alloc_complex(n);
    auto* cplx2 = fftw_alloc_complex(n);
    fftw_plan plan = nullptr;
    switch (kind) {
      case PlanKind::kRealForward:
        plan = fftw_plan_dft_r2c_1d(len, real, cplx, flags);
        break;
      case PlanKind::kRealInverse:
        plan = fftw_plan_dft_c2r_1d(len, cplx, real, flags);
        break;
      case PlanKind::kComplexForward:
        plan = fftw_plan_dft_1d(len, cplx, cplx2, FFTW_FORWARD, flags);
        break;
      case PlanKind::kComplexInverse:
        plan = fftw_plan_dft_1d(len, cplx, cplx2, FFTW_BACKWARD, flags);
        break;
    }
    fftw_free(real);
    fftw_free(cplx);
    fftw_free(cplx2);
    if (plan == nullptr) throw std::runtime_error("FFTW failed to create a plan");
    plans_.emplace(key, plan);
    return plan;
  }

  PlanCache(const PlanCache&) = delete;
  PlanCache& operator=(const PlanCache&) = delete;

 private:
  PlanCache() = default;
  ~PlanCache() {
    for (auto& [key, plan] : plans_) fftw_destroy_plan(plan);
  }

  std::mutex mutex_;
  std::map<std::pair<PlanKind, std::size_t>, fftw_plan> plans_;
};

fftw_complex* as_fftw(Complex* p) { return reinterpret_cast<fftw_complex*>(p); }

}  // namespace

std::vector<Complex> real_forward(std::span<const double> samples) {
  const std::size_t m = samples.size();
  std::vector<double> in(samples.begin(), samples.end());
  std::vector<Complex> out(m / 2 + 1);
  fftw_execute_dft_r2c(PlanCache::instance().get(PlanKind::kRealForward, m), in.data(),
                       as_fftw(out.data()));
  return out;
}

std::vector<double> real_inverse(std::span<const Complex> coeffs, std::size_t m) {
  std::vector<Complex> in(coeffs.begin(), coeffs.end());
  std::vector<double> out(m);
  fftw_execute_dft_c2r(PlanCache::instance().get(PlanKind::kRealInverse, m), as_fftw(in.data()),
                       out.data());
  const double inv = 1.0 / static_cast<double>(m);
  for (double& v : out) v *= inv;
  return out;
}

std::vector<Complex> complex_forward(std::span<const Complex> samples) {
  const std::size_t m = samples.size();
  std::vector<Complex> in(samples.begin(), samples.end());
  std::vector<Complex> out(m);
  fftw_execute_dft(PlanCache::instance().get(PlanKind::kComplexForward, m), as_fftw(in.data()),
                   as_fftw(out.data()));
  return out;
}

std::vector<Complex> complex_inverse(std::span<const Complex> coeffs) {
  const std::size_t m = coeffs.size();
  std::vector<Complex> in(coeffs.begin(), coeffs.end());
  std::vector<Complex> out(m);
  fftw_execute_dft(PlanCache::instance().get(PlanKind::kComplexInverse, m), as_fftw(in.data()),
                   as_fftw(out.data()));
  const double inv = 1.0 / static_cast<double>(m);
  for (Complex& v : out) v *= inv;
  return out;
}

std::vector<double> derivative(std::span<const double> samples, int order, double period,
                               double relative_floor) {
  const std::size_t m = samples.size();
  if (order == 0) return {samples.begin(), samples.end()};
  auto coeffs = real_forward(samples);
  if (relative_floor > 0.0) {
    double peak = 0.0;
    for (const auto& c : coeffs) peak = std::max(peak, std::abs(c));
    const double cut = relative_floor * peak;
    for (std::size_t j = 1; j < coeffs.size(); ++j) {
      if (std::abs(coeffs[j]) <= cut) coeffs[j] = 0.0;
    }
  }
  const double scale = kTwoPi / period;
  // (ik)^order = k^order * i^order, with i^order cycling through 1, i, -1, -i.
  static constexpr double kRe[4] = {1.0, 0.0, -1.0, 0.0};
  static constexpr double kIm[4] = {0.0, 1.0, 0.0, -1.0};
  const Complex rot(kRe[order % 4], kIm[order % 4]);
  for (std::size_t j = 0; j < coeffs.size(); ++j) {
    const double k = static_cast<double>(j) * scale;
    double kn = k;
    for (int n = 1; n < order; ++n) kn *= k;
    coeffs[j] *= rot * kn;
  }
  if (order % 2 == 1) coeffs[m / 2] = 0.0;
  return real_inverse(coeffs, m);
}

double curvature_noise_floor(std::size_t m) {
  const double half = 0.5 * static_cast<double>(m);
  return 16.0 * std::numeric_limits<double>::epsilon() * half * half;
}

void curve_derivatives(std::span<const Vec2> points, std::vector<Vec2>& first,
                       std::vector<Vec2>& second) {
  const std::size_t m = points.size();
  std::vector<Complex> z(m);
  for (std::size_t j = 0; j < m; ++j) z[j] = {points[j].x, points[j].y};
  const auto coeffs = complex_forward(z);

  // x and y are real, so the Nyquist slot is dropped for the first derivative
  // and kept (it is real) for the second.
  std::vector<Complex> d1(m), d2(m);
  for (std::size_t j = 0; j < m; ++j) {
    const double k = wavenumber(j, m);
    d1[j] = Complex(0.0, k) * coeffs[j];
    d2[j] = -k * k * coeffs[j];
  }
  d1[m / 2] = 0.0;
  d1 = complex_inverse(d1);
  d2 = complex_inverse(d2);

  first.resize(m);
  second.resize(m);
  for (std::size_t j = 0; j < m; ++j) {
    first[j] = {d1[j].real(), d1[j].imag()};
    second[j] = {d2[j].real(), d2[j].imag()};
  }
}

double mean(std::span<const double> samples) {
  double sum = 0.0;
  for (double v : samples) sum += v;
  return sum / static_cast<double>(samples.size());
}

TrigInterpolant::TrigInterpolant(std::span<const double> samples, double period)
    : m_(samples.size()), scale_(kTwoPi / period) {
  const auto coeffs = real_forward(samples);
  const double inv = 1.0 / static_cast<double>(m_);
  mean_ = coeffs[0].real() * inv;
  const std::size_t nyquist = m_ / 2;
  cos_.resize(nyquist);
  sin_.resize(nyquist);
  // f = (1/M)[F_0 + 2 sum Re(F_k e^{iku}) + Re(F_{M/2}) cos(M u / 2)]
  for (std::size_t k = 1; k < nyquist; ++k) {
    cos_[k - 1] = 2.0 * inv * coeffs[k].real();
    sin_[k - 1] = -2.0 * inv * coeffs[k].imag();
  }
  cos_[nyquist - 1] = inv * coeffs[nyquist].real();
  sin_[nyquist - 1] = 0.0;
  // Antiderivative series sum (a_k sin - b_k cos) / (k w); its value at 0 is -sum b_k / (k w).
  wavenumber_.resize(nyquist);
  integral_offset_ = 0.0;
  for (std::size_t k = 1; k <= nyquist; ++k) {
    wavenumber_[k - 1] = static_cast<double>(k) * scale_;
    integral_offset_ -= sin_[k - 1] / wavenumber_[k - 1];
  }
  cos_int_.resize(nyquist);
  sin_int_.resize(nyquist);
  for (std::size_t k = 0; k < nyquist; ++k) {
    cos_int_[k] = cos_[k] / wavenumber_[k];
    sin_int_[k] = sin_[k] / wavenumber_[k];
  }
}

TrigInterpolant::Evaluation TrigInterpolant::evaluate(double u) const {
  const double x = u * scale_;
  const double c1 = std::cos(x);
  const double s1 = std::sin(x);
  double c = c1;
  double s = s1;
  Evaluation e{mean_, 0.0, 0.0};
  const std::size_t nyquist = m_ / 2;
  for (std::size_t k = 1; k <= nyquist; ++k) {
    const double a = cos_[k - 1];
    const double b = sin_[k - 1];
    e.value += a * c + b * s;
    e.derivative += wavenumber_[k - 1] * (b * c - a * s);
    e.periodic_integral += cos_int_[k - 1] * s - sin_int_[k - 1] * c;
    if ((k & 31u) == 0u) {
      // Re-anchor the rotation recurrence to keep drift at rounding level.
      const double next = static_cast<double>(k + 1) * x;
      c = std::cos(next);
      s = std::sin(next);
    } else {
      const double cn = c * c1 - s * s1;
      s = s * c1 + c * s1;
      c = cn;
    }
  }
  e.periodic_integral -= integral_offset_;
  return e;
}

CurveInterpolant::CurveInterpolant(std::span<const Vec2> points)
    : x_([&] {
        std::vector<double> v(points.size());
        for (std::size_t j = 0; j < points.size(); ++j) v[j] = points[j].x;
        return TrigInterpolant(v);
      }()),
      y_([&] {
        std::vector<double> v(points.size());
        for (std::size_t j = 0; j < points.size(); ++j) v[j] = points[j].y;
        return TrigInterpolant(v);
      }()) {}

}  // namespace aph::spectral
