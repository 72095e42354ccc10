#include "aph/monitors.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

#include "aph/spectral.hpp"

namespace aph {

MonitorRecord compute_monitors(const CurveState& state, const FrameData& frame,
                               const Indicatrix& ind, int p) {
  MonitorRecord rec;
  rec.time = state.time();
  rec.L = minkowski_length(frame);
  rec.A = enclosed_area(state);
  rec.total_kappa = sigma_integral(frame.kappa, frame);
  rec.kappa_bar = rec.total_kappa / rec.L;

  std::vector<double> squared(frame.size());
  for (std::size_t i = 0; i < squared.size(); ++i) {
    const double d = frame.kappa[i] - rec.kappa_bar;
    squared[i] = d * d;
  }
  rec.kosc = rec.L * sigma_integral(squared, frame);

  for (std::size_t i = 0; i < squared.size(); ++i) squared[i] = frame.kappa[i] * frame.kappa[i];
  rec.kappa_l2 = sigma_integral(squared, frame);

  // Same filtered kappa that drives the velocity.
  const auto dp = sigma_derivative(frame.kappa, frame, p,
                                   spectral::curvature_noise_floor(frame.size()));
  for (std::size_t i = 0; i < squared.size(); ++i) squared[i] = dp[i] * dp[i];
  rec.diss_norm = sigma_integral(squared, frame);

  rec.iso_ratio = rec.L * rec.L / (4.0 * rec.A * ind.area_isoperimetrix());
  rec.convex = *std::min_element(frame.kappa.begin(), frame.kappa.end()) > 0.0;
  return rec;
}

MonitorRecord compute_monitors(const CurveState& state, const Indicatrix& ind, int p) {
  return compute_monitors(state, compute_frame(state, ind), ind, p);
}

double kosc_apriori_bound(const MonitorRecord& record, const MonitorRecord& initial,
                          const Indicatrix& ind) {
  const double a = ind.area_isoperimetrix();
  return initial.kosc + 8.0 * a * a * std::log(initial.L / record.L);
}

double waiting_time_bound(int p, double area0, double area_iso, double iso_ratio0) {
  if (p < 1) throw DomainError("waiting_time_bound: p must be >= 1");
  if (!(area0 > 0.0) || !(area_iso > 0.0)) {
    throw DomainError("waiting_time_bound: areas must be positive");
  }
  if (!(iso_ratio0 >= 1.0)) {
    throw DomainError("waiting_time_bound: isoperimetric ratio must be >= 1");
  }
  const double pi = std::numbers::pi;
  return 8.0 * std::pow(area_iso, p - 1) * std::pow(area0, p + 1) /
         ((p + 1) * std::pow(pi, 2 * p)) * (std::pow(iso_ratio0, p + 1) - 1.0);
}

double decay_rate_floor(const Indicatrix& ind, int p, double length) {
  return ind.q_star() * std::pow(2.0 * std::numbers::pi / length, 2 * (p + 1));
}

DecayFit decay_rate_fit(std::span<const std::pair<double, double>> time_kosc) {
  std::vector<std::pair<double, double>> pts;
  for (const auto& [t, k] : time_kosc) {
    if (k > 1e-13) pts.emplace_back(t, std::log(k));
  }
  if (pts.size() < 10) {
    throw InsufficientData("decay_rate_fit needs at least 10 samples with kosc > 1e-13");
  }
  const double n = static_cast<double>(pts.size());
  double mt = 0.0, my = 0.0;
  for (const auto& [t, y] : pts) {
    mt += t;
    my += y;
  }
  mt /= n;
  my /= n;
  double stt = 0.0, sty = 0.0, syy = 0.0;
  for (const auto& [t, y] : pts) {
    stt += (t - mt) * (t - mt);
    sty += (t - mt) * (y - my);
    syy += (y - my) * (y - my);
  }
  if (!(stt > 0.0)) throw InsufficientData("decay_rate_fit: sample times are not distinct");
  const double slope = sty / stt;
  DecayFit fit;
  fit.rate = -slope;
  fit.r_squared = syy > 0.0 ? (sty * sty) / (stt * syy) : 1.0;
  fit.samples = pts.size();
  return fit;
}

}  // namespace aph
