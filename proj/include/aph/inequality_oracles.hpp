#pragma once

// Sharp-constant functional inequalities for periodic functions, evaluated on
// uniform samples with spectral derivatives. Each check returns both sides so
// that callers can report margins as well as verdicts.

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "aph/error.hpp"

namespace aph {

/// M uniform samples of a function of period P, the first at x = 0.
/// Invariants: M is a power of two, M >= 32, P > 0 and finite.
class PeriodicSample {
 public:
  PeriodicSample(std::vector<double> values, double period);

  const std::vector<double>& values() const { return values_; }
  double period() const { return period_; }
  std::size_t size() const { return values_.size(); }
  double spacing() const { return period_ / static_cast<double>(values_.size()); }

 private:
  std::vector<double> values_;
  double period_;
};

struct OracleResult {
  double lhs = 0.0;
  double rhs = 0.0;
  bool holds = false;
};

/// The sample does not vanish at the requested index.
class NoZero : public DomainError {
 public:
  using DomainError::DomainError;
};

/// int (f - mean f)^2 <= (P^2 / 4 pi^2) int f_x^2, with slack 1e-9.
OracleResult poincare_check(const PeriodicSample& f);

/// max |f - mean f|^2 <= (P / 2 pi) int f_x^2, with slack 1e-9.
OracleResult sup_bound_check(const PeriodicSample& f);

/// int f^2 <= (P / pi)^2 int f_x^2 for f vanishing at zero_index, with slack 1e-9.
/// Throws NoZero if |f(zero_index)| > 1e-12 max |f|.
OracleResult wirtinger_check(const PeriodicSample& f, std::size_t zero_index);

/// int f_{x^m}^2 <= (int f^2)^(1 - m/l) (int f_{x^l}^2)^(m/l) for 1 <= m < l <= 5,
/// applied to f - mean f, with slack 1e-9. Throws DomainError otherwise.
OracleResult interpolation_check(const PeriodicSample& f, int m, int l);

/// f is kappa - kappa_bar sampled uniformly in arclength over one length L.
/// int f_{s^m}^2 <= eps L^2 int f_{s^(m+1)}^2 + (1 / (4 eps^m)) L^-(2m+1) kosc,
/// with slack 1e-6. Requires m >= 1, eps > 0 and the sample period to equal L.
OracleResult epsilon_interpolation_check(const PeriodicSample& f, int m, double eps,
                                         double curve_length, double kosc);

/// int (d^order f / dx^order)^2 dx of the trigonometric interpolant (Parseval).
double derivative_energy(const PeriodicSample& f, int order);

struct SuiteRow {
  std::string oracle;
  std::size_t instances = 0;
  std::size_t passed = 0;
  double worst_ratio = 0.0;  // max lhs / rhs over instances with rhs > 0
};

struct SuiteReport {
  std::uint64_t seed = 0;
  std::vector<SuiteRow> rows;

  bool all_passed() const;
};

/// Randomized suite: band-limited trigonometric polynomials for the generic
/// inequalities and curvature fields of perturbed isoperimetrices for the
/// epsilon interpolation. Deterministic in seed.
SuiteReport run_random_suite(std::uint64_t seed, std::size_t instances = 1000);

}  // namespace aph
