#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "dystro/params.hpp"

namespace dystro {

enum class TuringVerdict { NoTuring };

// Output of the diffusion-driven-instability check around the healthy
// equilibrium. critical_k_squared is the (always negative) wavenumber that
// would be required for marginal stability; h_at_zero is the value of the
// quartic h(k^2) at k=0, equal to nu*Theta/(1+sigma).
struct TuringReport {
  double critical_k_squared = 0.0;
  TuringVerdict verdict = TuringVerdict::NoTuring;
  double h_at_zero = 0.0;
};

TuringReport turing_check(const DimensionlessParams& p);

// Real roots {lambda_plus, lambda_minus} of the temporal quadratic
// lambda^2 + a1 lambda + a0 governing the coupled (d,m) mode at k=0, with
// a1 = delta + nu + rho/(1+sigma) and a0 = nu*Theta/(1+sigma).
// lambda_plus > 0 iff Theta < 0.
std::pair<double, double> temporal_growth(const DimensionlessParams& p);

// The quadratic dispersion factor p2(gamma, s) of the traveling-front
// determinant; its roots in s link front steepness gamma to speed s.
double p2(double gamma, double s, const DimensionlessParams& p);

// Constant term of p2: delta*nu + nu*rho/(1+sigma) - alpha*c_eps*nu*sigma/(1+sigma).
// Algebraically equal to nu*Theta/(1+sigma).
double dispersion_constant(const DimensionlessParams& p);

// The unique gamma_cutoff > 0 with p2(gamma_cutoff, 0) = 0, via the quadratic
// in z = gamma^2. Throws NoInvasionError when Theta >= 0.
double gamma_cutoff(const DimensionlessParams& p);

// The unique positive root in s of p2(gamma, s) = 0 for gamma in
// (0, gamma_cutoff). Throws OutOfBranchError outside that interval.
double s_plus(double gamma, const DimensionlessParams& p);

struct MinSpeed {
  double s_star = 0.0;
  double gamma_star = 0.0;
};

// Minimal front speed: minimizes s_plus over (0, gamma_cutoff) with a
// 512-point log-spaced coarse scan followed by golden-section refinement to
// |dgamma| < 1e-10 * gamma_cutoff. Throws NoInvasionError below threshold and
// NotAttainedError when the infimum sits on the interval boundary.
MinSpeed min_speed(const DimensionlessParams& p);

struct DispersionResult {
  std::vector<double> gamma_grid;
  std::vector<double> s_plus;
  double gamma_cutoff = 0.0;
  double gamma_star = 0.0;
  double s_star = 0.0;
};

// Samples the positive branch on n_points interior points of
// (0, gamma_cutoff) and attaches the selected minimum.
DispersionResult dispersion_curve(const DimensionlessParams& p,
                                  std::size_t n_points = 512);

}  // namespace dystro
