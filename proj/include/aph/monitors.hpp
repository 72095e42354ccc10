#pragma once

// Scalar diagnostics sampled along a flow and the closed-form bounds they are
// compared against.

#include <span>
#include <utility>

#include "aph/curve_geometry.hpp"
#include "aph/indicatrix.hpp"

namespace aph {

struct MonitorRecord {
  double time = 0.0;
  double L = 0.0;            // Minkowski length
  double A = 0.0;            // enclosed area
  double kappa_bar = 0.0;    // (1/L) int kappa dsigma
  double total_kappa = 0.0;  // int kappa dsigma
  double kosc = 0.0;         // L int (kappa - kappa_bar)^2 dsigma
  double iso_ratio = 0.0;    // L^2 / (4 A A_iso)
  double diss_norm = 0.0;    // int (d^p kappa / dsigma^p)^2 dsigma
  double kappa_l2 = 0.0;     // int kappa^2 dsigma
  bool convex = false;       // min_i kappa_i > 0
  double dt = 0.0;           // step size chosen at this state (0 if none)
};

/// p is the flow order parameter (the dissipation norm uses the p-th sigma derivative).
MonitorRecord compute_monitors(const CurveState& state, const FrameData& frame,
                               const Indicatrix& ind, int p);
MonitorRecord compute_monitors(const CurveState& state, const Indicatrix& ind, int p);

/// Kosc(0) + 8 A_iso^2 ln(L(0) / L(t)).
double kosc_apriori_bound(const MonitorRecord& record, const MonitorRecord& initial,
                          const Indicatrix& ind);

/// Upper bound on the total time a converging flow spends non-convex:
/// 8 A_iso^(p-1) A0^(p+1) / ((p+1) pi^(2p)) * (I0^(p+1) - 1).
/// Throws DomainError for p < 1, non-positive areas or I0 < 1.
double waiting_time_bound(int p, double area0, double area_iso, double iso_ratio0);

/// Q_star (2 pi / L)^(2(p+1)): the asymptotic exponential rate guaranteed for
/// the squared curvature derivatives.
double decay_rate_floor(const Indicatrix& ind, int p, double length);

struct DecayFit {
  double rate = 0.0;       // -slope of ln(kosc) against t
  double r_squared = 0.0;  // coefficient of determination of the linear fit
  std::size_t samples = 0;
};

class InsufficientData : public Error {
 public:
  using Error::Error;
};

/// Least-squares line through (t, ln kosc) using only samples with kosc > 1e-13.
/// Throws InsufficientData with fewer than 10 usable samples.
DecayFit decay_rate_fit(std::span<const std::pair<double, double>> time_kosc);

}  // namespace aph
