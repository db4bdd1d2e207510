#include "dystro/model.hpp"

#include <string>

#include "dystro/errors.hpp"

namespace dystro {

bool in_invariant_set(const State& u, double tol) {
  return u.h >= -tol && u.d >= -tol && u.m >= -tol && u.c >= -tol &&
         u.h + u.d <= 1.0 + tol;
}

double a_of_c(double c, const DimensionlessParams& p) {
  if (c < 0.0)
    throw DomainError("a_of_c: c must be nonnegative, got " +
                      std::to_string(c));
  return p.alpha * (c + p.c_eps) / (1.0 + c);
}

double chi_of_c(double c, const DimensionlessParams& p) {
  if (c < 0.0)
    throw DomainError("chi_of_c: c must be nonnegative, got " +
                      std::to_string(c));
  return p.chi0 * c / (p.kappa + c);
}

State reaction_rhs_unchecked(const State& u, const DimensionlessParams& p) {
  const double attack = p.alpha * (u.c + p.c_eps) / (1.0 + u.c);
  const double regen = (p.sigma + p.rho * u.d) * (1.0 - u.h - u.d);
  const double damage = attack * u.m * u.h;
  return {
      regen - u.h - damage,
      damage - p.delta * u.d - p.rho * u.d * (1.0 - u.h - u.d),
      p.nu * (u.d - u.m),
      p.r * u.d - p.mu * u.c,
  };
}

State reaction_rhs(const State& u, const DimensionlessParams& p) {
  if (!in_invariant_set(u))
    throw DomainError("reaction_rhs: state outside the invariant set");
  return reaction_rhs_unchecked(u, p);
}

}  // namespace dystro
