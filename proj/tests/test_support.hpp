#pragma once

#include <cmath>
#include <functional>
#include <random>
#include <stdexcept>
#include <vector>

#include "dystro/params.hpp"

namespace dystro::testing {

// Reference regime of the threshold-validation figures: sigma=1, rho=0.9,
// delta=1.1, c_eps=0.1, nu=7, r=kappa=1, mu=168, D_d=1, D_m=10, D_c=1000,
// chi0=5. alpha is the control parameter.
inline DimensionlessParams reference_params(double alpha) {
  DimensionlessParams p;
  p.sigma = 1.0;
  p.rho = 0.9;
  p.alpha = alpha;
  p.delta = 1.1;
  p.nu = 7.0;
  p.mu = 168.0;
  p.r = 1.0;
  p.c_eps = 0.1;
  p.D_d = 1.0;
  p.D_m = 10.0;
  p.D_c = 1000.0;
  p.chi0 = 5.0;
  p.kappa = 1.0;
  return p;
}

// Same regime with the fast-chemokine companion value D_c=100 used in the
// speed-comparison figures.
inline DimensionlessParams speed_params(double alpha) {
  DimensionlessParams p = reference_params(alpha);
  p.D_c = 100.0;
  return p;
}

// Draws from the documented exploratory ranges (c_eps fixed at 0.1).
inline DimensionlessParams random_params(std::mt19937_64& rng) {
  auto uni = [&rng](double lo, double hi) {
    return std::uniform_real_distribution<double>(lo, hi)(rng);
  };
  auto loguni = [&rng](double lo, double hi) {
    std::uniform_real_distribution<double> u(std::log(lo), std::log(hi));
    return std::exp(u(rng));
  };
  DimensionlessParams p;
  p.D_d = uni(0.5, 1.0);
  p.D_m = uni(5.0, 20.0);
  p.D_c = loguni(1e2, 1e3);
  p.delta = uni(0.5, 5.0);
  p.nu = uni(5.0, 20.0);
  p.mu = loguni(1e2, 1e3);
  p.sigma = uni(0.1, 1.0);
  p.rho = uni(0.1, 3.0);
  p.r = loguni(0.1, 10.0);
  p.chi0 = uni(1.0, 10.0);
  p.kappa = uni(0.1, 1.0);
  p.alpha = uni(15.0, 60.0);
  p.c_eps = 0.1;
  return p;
}

// --- independent oracles (no dependence on the library's solution paths) ---

// Plain long-double quadratic formula, both roots.
inline std::vector<double> quadratic_oracle(double a, double b, double c) {
  if (a == 0.0) {
    if (b == 0.0) return {};
    return {static_cast<double>(-static_cast<long double>(c) / b)};
  }
  const long double disc =
      static_cast<long double>(b) * b - 4.0L * static_cast<long double>(a) * c;
  if (disc < 0.0L) return {};
  const long double sq = sqrtl(disc);
  return {static_cast<double>((-b + sq) / (2.0L * a)),
          static_cast<double>((-b - sq) / (2.0L * a))};
}

// Bisection to ~1e-14 relative; requires a sign change on [lo, hi].
inline double bisect(const std::function<double(double)>& f, double lo,
                     double hi) {
  double flo = f(lo);
  double fhi = f(hi);
  if (flo == 0.0) return lo;
  if (fhi == 0.0) return hi;
  if ((flo > 0.0) == (fhi > 0.0))
    throw std::runtime_error("bisect: no sign change on the bracket");
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (lo + hi);
    const double fm = f(mid);
    if (fm == 0.0) return mid;
    if ((fm > 0.0) == (flo > 0.0)) {
      lo = mid;
      flo = fm;
    } else {
      hi = mid;
    }
    if (hi - lo < 1e-15 * std::max(1.0, std::abs(hi))) break;
  }
  return 0.5 * (lo + hi);
}

}  // namespace dystro::testing
