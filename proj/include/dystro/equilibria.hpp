#pragma once

#include <array>
#include <vector>

#include <Eigen/Dense>
#include <nlohmann/json_fwd.hpp>

#include "dystro/model.hpp"
#include "dystro/params.hpp"

namespace dystro {

enum class Regime { HealthyOnly, Invasion, Bistable };

const char* regime_name(Regime r);

// A root d* > 0 of the equilibrium quadratic G, lifted to the full state
// (h*, d*, m*=d*, c*=(r/mu) d*). Stability is a numerical verdict from the
// eigenvalues of the analytic reaction Jacobian; eigenvalues within 1e-9 of
// the imaginary axis mark the equilibrium marginal instead.
struct PathologicalEquilibrium {
  State state;
  double d_star = 0.0;
  bool stable = false;
  bool marginal = false;
  double residual = 0.0;  // max-norm of reaction_rhs at the state
};

struct EquilibriumReport {
  State healthy;
  double theta = 0.0;
  double r_d = 0.0;
  std::vector<PathologicalEquilibrium> pathological;  // increasing d_star
  Regime regime = Regime::HealthyOnly;
};

// The damage-free steady state (sigma/(1+sigma), 0, 0, 0).
State healthy_equilibrium(const DimensionlessParams& p);

// Threshold quantity Theta = delta(1+sigma) + rho - alpha c_eps sigma.
// The healthy equilibrium is stable iff Theta > 0.
double theta(const DimensionlessParams& p);

// Damage reproduction number R_d = alpha c_eps sigma / (delta(1+sigma)+rho).
// R_d > 1 iff Theta < 0.
double reproduction_number(const DimensionlessParams& p);

// Coefficients {g2, g1, g0} of the equilibrium quadratic G(d).
// Identity: g0 = -mu * Theta.
std::array<double, 3> pathological_coeffs(const DimensionlessParams& p);

// All admissible pathological equilibria (strictly inside the invariant set),
// sorted by increasing d_star. May be empty.
std::vector<PathologicalEquilibrium> pathological_equilibria(
    const DimensionlessParams& p);

// Analytic Jacobian of reaction_rhs at u. Requires u.c > -1.
Eigen::Matrix4d jacobian_at(const State& u, const DimensionlessParams& p);

// HealthyOnly / Invasion / Bistable by the sign of Theta and the count of
// admissible pathological equilibria. Throws ThresholdDegenerateError when
// |Theta| < 1e-12 * (delta(1+sigma)+rho).
Regime classify_regime(const DimensionlessParams& p);

EquilibriumReport equilibrium_report(const DimensionlessParams& p);

nlohmann::json report_to_json(const EquilibriumReport& rep);

}  // namespace dystro
