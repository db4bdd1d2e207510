#include "dystro/linear_analysis.hpp"

#include <cmath>
#include <string>

#include "dystro/equilibria.hpp"
#include "dystro/errors.hpp"

namespace dystro {

namespace {

// Everything here reduces to quadratics: in s at fixed gamma, or in z=gamma^2
// at s=0. The quartic structure of the dispersion factor is never attacked
// with a general polynomial solver.

double rho_reduced(const DimensionlessParams& p) {
  return p.rho / (1.0 + p.sigma);
}

// Positive root of a*x^2 + b*x + c with c < 0 (one sign change), in the
// cancellation-free formulation.
double positive_quadratic_root(double a, double b, double c) {
  const double disc = b * b - 4.0 * a * c;
  const double sq = std::sqrt(disc);
  const double q = -0.5 * (b + std::copysign(sq, b));
  const double r1 = q / a;
  const double r2 = (q != 0.0) ? c / q : -r1;
  return std::max(r1, r2);
}

}  // namespace

TuringReport turing_check(const DimensionlessParams& p) {
  const double rr = rho_reduced(p);
  TuringReport rep;
  rep.critical_k_squared =
      -(p.D_m * p.delta + p.D_m * rr + p.D_d * p.nu) / (p.D_d * p.D_m);
  rep.h_at_zero = p.nu * p.delta + p.nu * rr -
                  p.nu * p.alpha * p.c_eps * p.sigma / (1.0 + p.sigma);
  rep.verdict = TuringVerdict::NoTuring;
  return rep;
}

std::pair<double, double> temporal_growth(const DimensionlessParams& p) {
  const double rr = rho_reduced(p);
  const double a1 = p.delta + p.nu + rr;
  const double a0 = p.nu * p.delta + p.nu * rr -
                    p.nu * p.alpha * p.c_eps * p.sigma / (1.0 + p.sigma);
  // The discriminant in its manifestly positive form: both roots are real.
  const double disc = (p.delta - p.nu + rr) * (p.delta - p.nu + rr) +
                      4.0 * p.alpha * p.c_eps * p.nu * p.sigma / (1.0 + p.sigma);
  const double lambda_minus = -0.5 * (a1 + std::sqrt(disc));
  const double lambda_plus = a0 / lambda_minus;  // product of roots = a0
  return {lambda_plus, lambda_minus};
}

double dispersion_constant(const DimensionlessParams& p) {
  return p.delta * p.nu + p.nu * rho_reduced(p) -
         p.alpha * p.c_eps * p.nu * p.sigma / (1.0 + p.sigma);
}

double p2(double gamma, double s, const DimensionlessParams& p) {
  const double rr = rho_reduced(p);
  const double g2 = gamma * gamma;
  return g2 * s * s +
         gamma * (p.delta - (p.D_d + p.D_m) * g2 + p.nu + rr) * s +
         p.D_d * p.D_m * g2 * g2 +
         g2 * (-p.D_m * rr - p.D_m * p.delta - p.nu * p.D_d) +
         dispersion_constant(p);
}

double gamma_cutoff(const DimensionlessParams& p) {
  if (theta(p) >= 0.0)
    throw NoInvasionError("gamma_cutoff: Theta >= 0, healthy state stable");
  // p2(gamma, 0) as a quadratic in z = gamma^2; constant term is negative
  // above threshold, so there is exactly one positive root.
  const double rr = rho_reduced(p);
  const double a = p.D_d * p.D_m;
  const double b = -p.D_m * rr - p.D_m * p.delta - p.nu * p.D_d;
  const double c = dispersion_constant(p);
  return std::sqrt(positive_quadratic_root(a, b, c));
}

double s_plus(double gamma, const DimensionlessParams& p) {
  if (theta(p) >= 0.0)
    throw NoInvasionError("s_plus: Theta >= 0, healthy state stable");
  if (!(gamma > 0.0) || !(gamma < gamma_cutoff(p)))
    throw OutOfBranchError("s_plus: gamma = " + std::to_string(gamma) +
                           " outside (0, gamma_cutoff)");
  const double rr = rho_reduced(p);
  const double a = gamma * gamma;
  const double b =
      gamma * (p.delta - (p.D_d + p.D_m) * gamma * gamma + p.nu + rr);
  const double c = p2(gamma, 0.0, p);
  // c < 0 on the branch: exactly one positive root.
  return positive_quadratic_root(a, b, c);
}

MinSpeed min_speed(const DimensionlessParams& p) {
  if (theta(p) >= 0.0)
    throw NoInvasionError("min_speed: Theta >= 0, healthy state stable");
  const double cutoff = gamma_cutoff(p);

  // Coarse log-spaced scan. Unimodality is not assumed; the grid locates the
  // global bracket, golden section refines it.
  constexpr std::size_t kCoarse = 512;
  const double lo = cutoff * 1e-6;
  const double hi = cutoff * (1.0 - 1e-12);
  const double step = std::log(hi / lo) / static_cast<double>(kCoarse - 1);
  auto grid_gamma = [&](std::size_t i) {
    return lo * std::exp(step * static_cast<double>(i));
  };
  std::size_t best = 0;
  double best_s = 0.0;
  for (std::size_t i = 0; i < kCoarse; ++i) {
    const double s = s_plus(grid_gamma(i), p);
    if (i == 0 || s < best_s) {  // strict: ties keep the smaller gamma
      best = i;
      best_s = s;
    }
  }
  if (best == 0 || best == kCoarse - 1)
    throw NotAttainedError(
        "min_speed: infimum of the speed branch sits on the boundary of "
        "(0, gamma_cutoff)");
  double a = grid_gamma(best - 1);
  double b = grid_gamma(best + 1);

  // Golden-section refinement of the bracket.
  const double invphi = (std::sqrt(5.0) - 1.0) / 2.0;
  const double tol = 1e-10 * cutoff;
  double x1 = b - invphi * (b - a);
  double x2 = a + invphi * (b - a);
  double f1 = s_plus(x1, p);
  double f2 = s_plus(x2, p);
  while (b - a > tol) {
    if (f1 < f2) {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - invphi * (b - a);
      f1 = s_plus(x1, p);
    } else {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + invphi * (b - a);
      f2 = s_plus(x2, p);
    }
  }
  const double gamma_star = 0.5 * (a + b);
  return {s_plus(gamma_star, p), gamma_star};
}

DispersionResult dispersion_curve(const DimensionlessParams& p,
                                  std::size_t n_points) {
  DispersionResult out;
  out.gamma_cutoff = gamma_cutoff(p);
  const MinSpeed ms = min_speed(p);
  out.gamma_star = ms.gamma_star;
  out.s_star = ms.s_star;
  out.gamma_grid.reserve(n_points);
  out.s_plus.reserve(n_points);
  for (std::size_t i = 0; i < n_points; ++i) {
    const double g = out.gamma_cutoff * static_cast<double>(i + 1) /
                     static_cast<double>(n_points + 1);
    out.gamma_grid.push_back(g);
    out.s_plus.push_back(s_plus(g, p));
  }
  return out;
}

}  // namespace dystro
