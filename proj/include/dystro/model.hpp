#pragma once

#include <array>

#include "dystro/params.hpp"

namespace dystro {

// One point value of the four fields (healthy tissue, damaged tissue,
// macrophages, chemokines). Also used for the time derivative of a state.
struct State {
  double h = 0.0;
  double d = 0.0;
  double m = 0.0;
  double c = 0.0;

  std::array<double, 4> to_array() const { return {h, d, m, c}; }
  static State from_array(const std::array<double, 4>& a) {
    return {a[0], a[1], a[2], a[3]};
  }
};

// The biologically admissible set: h,d,m,c >= -tol and h+d <= 1+tol.
bool in_invariant_set(const State& u, double tol = 0.0);

// Damage rate alpha*(c + c_eps)/(1 + c). Carries the full alpha factor;
// callers must not multiply by alpha again. Throws DomainError for c < 0.
double a_of_c(double c, const DimensionlessParams& p);

// Chemotactic sensitivity chi0*c/(kappa + c). Throws DomainError for c < 0.
double chi_of_c(double c, const DimensionlessParams& p);

// Reaction right-hand side of the homogeneous system:
//   h' = (sigma + rho d)(1 - h - d) - h - a(c) m h
//   d' = a(c) m h - delta d - rho d (1 - h - d)
//   m' = nu (d - m)
//   c' = r d - mu c
// The checked variant throws DomainError when u is outside the invariant set;
// the unchecked variant evaluates the vector field anywhere with c > -1
// (linearization and perturbation studies need an unconstrained field).
State reaction_rhs(const State& u, const DimensionlessParams& p);
State reaction_rhs_unchecked(const State& u, const DimensionlessParams& p);

}  // namespace dystro
