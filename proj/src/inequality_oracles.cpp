#include "aph/inequality_oracles.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>
#include <sstream>

#include "aph/curve_geometry.hpp"
#include "aph/indicatrix.hpp"
#include "aph/monitors.hpp"
#include "aph/spectral.hpp"

namespace aph {
namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kSlack = 1e-9;
constexpr double kRunDataSlack = 1e-6;

OracleResult verdict(double lhs, double rhs, double slack) {
  return {lhs, rhs, lhs <= rhs * (1.0 + slack)};
}

double mode_energy(const PeriodicSample& f, int order, bool include_mean) {
  if (order < 0) throw DomainError("energy: order must be non-negative");
  const std::size_t m = f.size();
  const auto c = spectral::real_forward(f.values());
  const double omega = 2.0 * kPi / f.period();
  double sum = order == 0 && include_mean ? std::norm(c[0]) : 0.0;
  for (std::size_t j = 1; j <= m / 2; ++j) {
    // Interior modes appear twice in the full spectrum; the Nyquist mode is
    // split evenly between +-m/2 in the interpolant.
    const double weight = j < m / 2 ? 2.0 : 0.5;
    sum += weight * std::norm(c[j]) * std::pow(omega * static_cast<double>(j), 2 * order);
  }
  return f.period() * sum / (static_cast<double>(m) * static_cast<double>(m));
}

// Energy of f - mean f; the mean is removed exactly in Fourier space.
double centered_energy(const PeriodicSample& f, int order) { return mode_energy(f, order, false); }

double max_abs(const std::vector<double>& v) {
  double out = 0.0;
  for (double x : v) out = std::max(out, std::abs(x));
  return out;
}

// Uniform double in [0, 1) from the top 53 bits; identical on every platform.
class Uniform {
 public:
  explicit Uniform(std::uint64_t seed) : engine_(seed) {}
  double operator()() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
  double operator()(double lo, double hi) { return lo + (hi - lo) * (*this)(); }
  std::size_t index(std::size_t n) {
    return std::min(n - 1, static_cast<std::size_t>((*this)() * static_cast<double>(n)));
  }

 private:
  std::mt19937_64 engine_;
};

PeriodicSample random_trig_polynomial(Uniform& rng) {
  constexpr std::array<std::size_t, 3> kSizes{32, 64, 128};
  const std::size_t m = kSizes[rng.index(kSizes.size())];
  const double period = rng(0.5, 10.0);
  const double offset = rng(-1.0, 1.0);
  std::array<double, 11> a{}, b{};
  for (int k = 1; k <= 10; ++k) {
    if (rng() < 0.5) continue;  // sparse spectra probe the equality cases
    a[k] = rng(-1.0, 1.0);
    b[k] = rng(-1.0, 1.0);
  }
  std::vector<double> v(m);
  for (std::size_t i = 0; i < m; ++i) {
    const double x = 2.0 * kPi * static_cast<double>(i) / static_cast<double>(m);
    double s = offset;
    for (int k = 1; k <= 10; ++k) s += a[k] * std::cos(k * x) + b[k] * std::sin(k * x);
    v[i] = s;
  }
  return {std::move(v), period};
}

struct CurvatureField {
  PeriodicSample f;
  double length;
  double kosc;
};

Indicatrix random_indicatrix(Uniform& rng) {
  IndicatrixSpec spec{1.0, {{2, rng(-0.12, 0.12), rng(-0.05, 0.05)}, {4, rng(-0.02, 0.02), 0.0}}};
  try {
    return Indicatrix::build(spec, 1024);
  } catch (const IndicatrixError&) {
    return Indicatrix::build(IndicatrixSpec::euclidean(), 1024);
  }
}

CurvatureField random_curvature_field(Uniform& rng) {
  constexpr std::size_t kPoints = 256;
  const Indicatrix ind = random_indicatrix(rng);
  const double scale = rng(0.5, 2.0);
  std::vector<Harmonic> bumps;
  for (int k = 2; k <= 8; ++k) {
    const double amp = 0.03 * scale / k;
    bumps.push_back({k, rng(-amp, amp), rng(-amp, amp)});
  }
  const CurveState state(perturbed_isoperimetrix(ind, scale, bumps, kPoints));
  const FrameData frame = compute_frame(state, ind);
  const MonitorRecord rec = compute_monitors(state, frame, ind, 1);
  auto kappa = resample_field_by_weight(frame.kappa, frame.weight);
  const double mu = spectral::mean(kappa);
  for (auto& x : kappa) x -= mu;
  return {PeriodicSample(std::move(kappa), rec.L), rec.L, rec.kosc};
}

class RowTally {
 public:
  explicit RowTally(std::string name) { row_.oracle = std::move(name); }
  void add(const OracleResult& r) {
    ++row_.instances;
    if (r.holds) ++row_.passed;
    if (r.rhs > 0.0) row_.worst_ratio = std::max(row_.worst_ratio, r.lhs / r.rhs);
  }
  SuiteRow row() const { return row_; }

 private:
  SuiteRow row_;
};

}  // namespace

PeriodicSample::PeriodicSample(std::vector<double> values, double period)
    : values_(std::move(values)), period_(period) {
  if (values_.size() < 32 || !spectral::is_power_of_two(values_.size())) {
    throw DomainError("PeriodicSample: size must be a power of two >= 32");
  }
  if (!(period_ > 0.0) || !std::isfinite(period_)) {
    throw DomainError("PeriodicSample: period must be positive and finite");
  }
}

double derivative_energy(const PeriodicSample& f, int order) {
  return mode_energy(f, order, true);
}

OracleResult poincare_check(const PeriodicSample& f) {
  const double p = f.period();
  return verdict(centered_energy(f, 0), p * p / (4.0 * kPi * kPi) * centered_energy(f, 1),
                 kSlack);
}

OracleResult sup_bound_check(const PeriodicSample& f) {
  const double mu = spectral::mean(f.values());
  double peak = 0.0;
  for (double x : f.values()) peak = std::max(peak, std::abs(x - mu));
  // Below this the deviation is rounding residue of the mean subtraction.
  if (peak <= 16.0 * std::numeric_limits<double>::epsilon() * max_abs(f.values())) peak = 0.0;
  return verdict(peak * peak, f.period() / (2.0 * kPi) * centered_energy(f, 1), kSlack);
}

OracleResult wirtinger_check(const PeriodicSample& f, std::size_t zero_index) {
  if (zero_index >= f.size()) throw DomainError("wirtinger_check: zero index out of range");
  if (std::abs(f.values()[zero_index]) > 1e-12 * max_abs(f.values())) {
    std::ostringstream msg;
    msg << "wirtinger_check: f(" << zero_index << ") = " << f.values()[zero_index]
        << " is not zero";
    throw NoZero(msg.str());
  }
  const double ratio = f.period() / kPi;
  return verdict(derivative_energy(f, 0), ratio * ratio * derivative_energy(f, 1), kSlack);
}

OracleResult interpolation_check(const PeriodicSample& f, int m, int l) {
  if (m < 1 || m >= l || l > 5) {
    throw DomainError("interpolation_check: requires 1 <= m < l <= 5");
  }
  const double theta = static_cast<double>(m) / static_cast<double>(l);
  const double rhs =
      std::pow(centered_energy(f, 0), 1.0 - theta) * std::pow(centered_energy(f, l), theta);
  return verdict(centered_energy(f, m), rhs, kSlack);
}

OracleResult epsilon_interpolation_check(const PeriodicSample& f, int m, double eps,
                                         double curve_length, double kosc) {
  if (m < 1) throw DomainError("epsilon_interpolation_check: m must be >= 1");
  if (!(eps > 0.0)) throw DomainError("epsilon_interpolation_check: eps must be positive");
  if (!(curve_length > 0.0)) {
    throw DomainError("epsilon_interpolation_check: curve length must be positive");
  }
  if (std::abs(f.period() - curve_length) > 1e-12 * curve_length) {
    throw DomainError("epsilon_interpolation_check: sample period must equal the curve length");
  }
  const double l2 = curve_length * curve_length;
  const double rhs = eps * l2 * derivative_energy(f, m + 1) +
                     kosc / (4.0 * std::pow(eps, m) * std::pow(curve_length, 2 * m + 1));
  return verdict(derivative_energy(f, m), rhs, kRunDataSlack);
}

bool SuiteReport::all_passed() const {
  return std::all_of(rows.begin(), rows.end(),
                     [](const SuiteRow& r) { return r.passed == r.instances; });
}

SuiteReport run_random_suite(std::uint64_t seed, std::size_t instances) {
  Uniform rng(seed);
  RowTally poincare("poincare"), sup("sup_bound"), wirtinger("wirtinger");
  std::vector<std::pair<std::pair<int, int>, RowTally>> interp;
  for (int l = 2; l <= 4; ++l) {
    for (int m = 1; m < l; ++m) {
      interp.push_back({{m, l}, RowTally("interpolation m=" + std::to_string(m) +
                                         " l=" + std::to_string(l))});
    }
  }
  for (std::size_t i = 0; i < instances; ++i) {
    const PeriodicSample f = random_trig_polynomial(rng);
    poincare.add(poincare_check(f));
    sup.add(sup_bound_check(f));
    const std::size_t z = rng.index(f.size());
    std::vector<double> shifted = f.values();
    const double at_zero = shifted[z];
    for (auto& x : shifted) x -= at_zero;
    wirtinger.add(wirtinger_check(PeriodicSample(std::move(shifted), f.period()), z));
    for (auto& [ml, tally] : interp) tally.add(interpolation_check(f, ml.first, ml.second));
  }

  constexpr std::array<double, 4> kEps{0.01, 0.1, 1.0, 10.0};
  RowTally eps_row("epsilon_interpolation");
  for (std::size_t i = 0; i < instances; ++i) {
    const CurvatureField field = random_curvature_field(rng);
    const int m = 1 + static_cast<int>(rng.index(3));
    eps_row.add(epsilon_interpolation_check(field.f, m, kEps[i % kEps.size()], field.length,
                                            field.kosc));
  }

  SuiteReport report;
  report.seed = seed;
  report.rows = {poincare.row(), sup.row(), wirtinger.row()};
  for (const auto& [ml, tally] : interp) report.rows.push_back(tally.row());
  report.rows.push_back(eps_row.row());
  return report;
}

}  // namespace aph
