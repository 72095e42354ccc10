#pragma once

// Explicit time integration of the anisotropic polyharmonic curve flow
//
//   d/dt Gamma = (-1)^p  d^{2p} kappa / d sigma^{2p}  N,      p >= 1,
//
// with classical RK4, a stiffness-aware step size, and periodic arclength
// resampling of the material grid.

#include <cstddef>
#include <functional>
#include <optional>
#include <string_view>
#include <vector>

#include "aph/curve_geometry.hpp"
#include "aph/indicatrix.hpp"
#include "aph/monitors.hpp"

namespace aph {

struct FlowParams {
  int p = 1;
  /// Empty means default_cfl(p).
  std::optional<double> cfl_constant;
  double dt_max = 1e-3;
  double t_end = 1.0;
  int resample_every = 20;  // 0 disables resampling
  int monitor_every = 100;
  std::optional<double> stop_kosc;
  /// Empty means 1e4 times the initial int kappa^2 dsigma.
  std::optional<double> blowup_kappa_l2;

  double cfl() const;
  /// Throws DomainError naming the violated rule.
  void validate() const;

  friend bool operator==(const FlowParams&, const FlowParams&) = default;
};

/// Largest CFL constant used by default for order p: 2 / pi^(2p+2).
double default_cfl(int p);

/// (-1)^p kappa_{sigma^{2p}} N at every grid point.
std::vector<Vec2> velocity(const CurveState& state, const Indicatrix& ind, int p);
std::vector<Vec2> velocity(const FrameData& frame, int p);

/// min(dt_max, cfl * (min_i w_i du)^(2(p+1)) / max Q).
double stable_dt(const FrameData& frame, const Indicatrix& ind, const FlowParams& params);
double stable_dt(const CurveState& state, const Indicatrix& ind, const FlowParams& params);

/// One classical Runge-Kutta step of size dt.
CurveState step_rk4(const CurveState& state, const Indicatrix& ind, const FlowParams& params,
                    double dt);

enum class Termination { kReachedTEnd, kKoscConverged, kBlowupSuspected, kStepUnderflow };

std::string_view to_string(Termination t);

struct TrajectorySample {
  double time = 0.0;
  CurveState state;
  MonitorRecord record;
};

struct Trajectory {
  std::vector<TrajectorySample> samples;
  Termination termination = Termination::kReachedTEnd;
  std::size_t steps = 0;
  std::size_t resamples = 0;
  /// Diagnostic for abnormal terminations.
  std::string note;

  const TrajectorySample& initial() const { return samples.front(); }
  const TrajectorySample& final() const { return samples.back(); }
};

using SampleObserver = std::function<void(const TrajectorySample&)>;

/// Integrates until t_end, Kosc convergence, suspected blowup or step underflow.
/// Samples are taken at step 0, every monitor_every steps and at termination.
/// Throws InvalidInitialCurve when the initial curve is clockwise or encloses no area.
Trajectory run(const CurveState& initial, const Indicatrix& ind, const FlowParams& params,
               const SampleObserver& observer = {});

}  // namespace aph
