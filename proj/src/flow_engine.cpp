#include "aph/flow_engine.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "aph/spectral.hpp"

namespace aph {
namespace {

constexpr double kUnderflowDt = 1e-15;

double kappa_l2_of(const FrameData& frame) {
  double sum = 0.0;
  for (std::size_t i = 0; i < frame.size(); ++i) sum += frame.kappa[i] * frame.kappa[i] * frame.weight[i];
  return sum * frame.du;
}

double kosc_of(const FrameData& frame) {
  const double length = minkowski_length(frame);
  const double bar = sigma_integral(frame.kappa, frame) / length;
  double sum = 0.0;
  for (std::size_t i = 0; i < frame.size(); ++i) {
    const double d = frame.kappa[i] - bar;
    sum += d * d * frame.weight[i];
  }
  return length * sum * frame.du;
}

std::vector<Vec2> advanced(std::span<const Vec2> base, std::span<const Vec2> slope, double h) {
  std::vector<Vec2> out(base.size());
  for (std::size_t i = 0; i < base.size(); ++i) out[i] = base[i] + h * slope[i];
  return out;
}

}  // namespace

double default_cfl(int p) { return 2.0 / std::pow(std::numbers::pi, 2 * p + 2); }

double FlowParams::cfl() const { return cfl_constant.value_or(default_cfl(p)); }

void FlowParams::validate() const {
  auto fail = [](const std::string& msg) { throw DomainError(msg); };
  if (p < 1) fail("flow order p must be >= 1 (p = 0 is curve shortening, which does not preserve area)");
  const double c = cfl();
  if (!(c > 0.0 && c <= 1.0)) fail("cfl_constant must lie in (0, 1]");
  if (!(dt_max > 0.0)) fail("dt_max must be positive");
  if (!(t_end > 0.0)) fail("t_end must be positive");
  if (resample_every < 0) fail("resample_every must be >= 0");
  if (monitor_every < 1) fail("monitor_every must be >= 1");
  if (stop_kosc && !(*stop_kosc >= 0.0)) fail("stop_kosc must be non-negative");
  if (blowup_kappa_l2 && !(*blowup_kappa_l2 > 0.0)) fail("blowup_kappa_l2 must be positive");
}

std::vector<Vec2> velocity(const FrameData& frame, int p) {
  // Rounding noise in kappa would otherwise be amplified by ~(M/2)^(2p).
  const auto d = sigma_derivative(frame.kappa, frame, 2 * p,
                                  spectral::curvature_noise_floor(frame.size()));
  const double sign = (p % 2 == 0) ? 1.0 : -1.0;
  std::vector<Vec2> v(frame.size());
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = (sign * d[i]) * frame.N[i];
  return v;
}

std::vector<Vec2> velocity(const CurveState& state, const Indicatrix& ind, int p) {
  if (p < 1) throw DomainError("velocity: p must be >= 1");
  return velocity(compute_frame(state, ind), p);
}

double stable_dt(const FrameData& frame, const Indicatrix& ind, const FlowParams& params) {
  const double min_w = *std::min_element(frame.weight.begin(), frame.weight.end());
  const double dsigma = min_w * frame.du;
  const double dt = params.cfl() * std::pow(dsigma, 2 * (params.p + 1)) / ind.q_max();
  return std::min(params.dt_max, dt);
}

double stable_dt(const CurveState& state, const Indicatrix& ind, const FlowParams& params) {
  return stable_dt(compute_frame(state, ind), ind, params);
}

CurveState step_rk4(const CurveState& state, const Indicatrix& ind, const FlowParams& params,
                    double dt) {
  if (!(dt > 0.0)) throw DomainError("step_rk4: dt must be positive");
  const int p = params.p;
  const auto x0 = state.points();
  const auto k1 = velocity(state, ind, p);
  const auto k2 = velocity(state.with_points(advanced(x0, k1, 0.5 * dt)), ind, p);
  const auto k3 = velocity(state.with_points(advanced(x0, k2, 0.5 * dt)), ind, p);
  const auto k4 = velocity(state.with_points(advanced(x0, k3, dt)), ind, p);
  std::vector<Vec2> next(x0.size());
  const double w = dt / 6.0;
  for (std::size_t i = 0; i < next.size(); ++i) {
    next[i] = x0[i] + w * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
  }
  return CurveState(std::move(next), state.time() + dt);
}

std::string_view to_string(Termination t) {
  switch (t) {
    case Termination::kReachedTEnd:
      return "ReachedTEnd";
    case Termination::kKoscConverged:
      return "KoscConverged";
    case Termination::kBlowupSuspected:
      return "BlowupSuspected";
    case Termination::kStepUnderflow:
      return "StepUnderflow";
  }
  return "Unknown";
}

Trajectory run(const CurveState& initial, const Indicatrix& ind, const FlowParams& params,
               const SampleObserver& observer) {
  params.validate();
  const double area0 = enclosed_area(initial);
  if (!(area0 > 0.0)) {
    std::ostringstream msg;
    msg << "initial curve must be counter-clockwise with positive area (got " << area0 << ")";
    throw InvalidInitialCurve(msg.str());
  }

  Trajectory traj;
  auto emit = [&](const CurveState& s, const FrameData& frame, double dt) {
    TrajectorySample sample{s.time(), s, compute_monitors(s, frame, ind, params.p)};
    sample.record.dt = dt;
    traj.samples.push_back(sample);
    if (observer) observer(traj.samples.back());
  };

  CurveState state = initial;
  FrameData frame = compute_frame(state, ind);
  const double blowup_threshold = params.blowup_kappa_l2.value_or(1e4 * kappa_l2_of(frame));
  double prev_kappa_l2 = kappa_l2_of(frame);
  double last_dt = 0.0;
  std::size_t step = 0;

  auto finish = [&](Termination why, std::string note = {}) {
    traj.termination = why;
    traj.note = std::move(note);
    traj.steps = step;
    return std::move(traj);
  };

  while (true) {
    const double kappa_l2 = kappa_l2_of(frame);
    double dt = stable_dt(frame, ind, params);
    const bool sampled = step % static_cast<std::size_t>(params.monitor_every) == 0;
    if (sampled) emit(state, frame, dt);

    auto ensure_sample = [&] {
      if (traj.samples.empty() || traj.samples.back().time < state.time()) emit(state, frame, last_dt);
    };

    if (!std::isfinite(kappa_l2) || kappa_l2 > blowup_threshold) {
      ensure_sample();
      return finish(Termination::kBlowupSuspected, "int kappa^2 dsigma exceeded the blowup threshold");
    }
    if (params.stop_kosc && kosc_of(frame) < *params.stop_kosc) {
      ensure_sample();
      return finish(Termination::kKoscConverged);
    }
    const double remaining = params.t_end - state.time();
    if (remaining <= 1e-14 * params.t_end) {
      ensure_sample();
      return finish(Termination::kReachedTEnd);
    }
    if (dt < kUnderflowDt) {
      ensure_sample();
      if (kappa_l2 > prev_kappa_l2) {
        return finish(Termination::kBlowupSuspected, "time step underflow with growing curvature");
      }
      return finish(Termination::kStepUnderflow);
    }

    const bool last = dt >= remaining;
    if (last) dt = remaining;
    try {
      state = step_rk4(state, ind, params, dt);
      if (last) state = state.at_time(params.t_end);
      ++step;
      if (params.resample_every > 0 && step % static_cast<std::size_t>(params.resample_every) == 0) {
        state = resample_uniform(state, ind);
        ++traj.resamples;
      }
      frame = compute_frame(state, ind);
    } catch (const DegenerateTangent& e) {
      return finish(Termination::kBlowupSuspected, e.what());
    }
    last_dt = dt;
    prev_kappa_l2 = kappa_l2;
  }
}

}  // namespace aph
