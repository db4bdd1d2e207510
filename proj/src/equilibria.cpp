#include "dystro/equilibria.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include <Eigen/Eigenvalues>
#include <nlohmann/json.hpp>

#include "dystro/errors.hpp"

namespace dystro {

namespace {

constexpr double kAdmissibilityTol = 1e-12;
constexpr double kStabilityTol = 1e-9;
constexpr double kDegeneracyTol = 1e-12;

// Numerically stable real roots of g2 x^2 + g1 x + g0 = 0. Falls back to the
// linear root when |g2| is negligible against the other coefficients (g1 can
// exceed g2 by orders of magnitude in this model, so the textbook formula
// would cancel).
std::vector<double> quadratic_roots(double g2, double g1, double g0) {
  const double scale = std::max(std::abs(g1), std::abs(g0));
  if (std::abs(g2) < 1e-12 * scale) {
    if (g1 == 0.0) return {};
    return {-g0 / g1};
  }
  const double disc = g1 * g1 - 4.0 * g2 * g0;
  if (disc < 0.0) return {};
  const double sq = std::sqrt(disc);
  const double q = -0.5 * (g1 + std::copysign(sq, g1));
  std::vector<double> roots;
  if (q != 0.0) {
    roots.push_back(q / g2);
    roots.push_back(g0 / q);
  } else {
    // g1 == 0 and disc = -4 g2 g0 >= 0
    const double root = std::sqrt(-g0 / g2);
    roots.push_back(root);
    roots.push_back(-root);
  }
  return roots;
}

}  // namespace

const char* regime_name(Regime r) {
  switch (r) {
    case Regime::HealthyOnly:
      return "HealthyOnly";
    case Regime::Invasion:
      return "Invasion";
    case Regime::Bistable:
      return "Bistable";
  }
  return "?";
}

State healthy_equilibrium(const DimensionlessParams& p) {
  return {p.sigma / (1.0 + p.sigma), 0.0, 0.0, 0.0};
}

double theta(const DimensionlessParams& p) {
  return p.delta * (1.0 + p.sigma) + p.rho - p.alpha * p.c_eps * p.sigma;
}

double reproduction_number(const DimensionlessParams& p) {
  return p.alpha * p.c_eps * p.sigma / (p.delta * (1.0 + p.sigma) + p.rho);
}

std::array<double, 3> pathological_coeffs(const DimensionlessParams& p) {
  const double g2 =
      p.r * (p.rho * (1.0 - p.delta) - p.alpha * (p.delta + p.sigma));
  const double g1 = -p.delta * (p.r + p.mu * p.rho + p.r * p.sigma) +
                    p.mu * p.rho - p.r * (p.rho - p.alpha * p.sigma) -
                    p.alpha * p.mu * (p.delta + p.sigma) * p.c_eps;
  const double g0 = -p.mu * (p.delta + p.rho + p.delta * p.sigma) +
                    p.alpha * p.mu * p.c_eps * p.sigma;
  return {g2, g1, g0};
}

Eigen::Matrix4d jacobian_at(const State& u, const DimensionlessParams& p) {
  if (!(u.c > -1.0))
    throw DomainError("jacobian_at: requires c > -1");
  const double attack = p.alpha * (u.c + p.c_eps) / (1.0 + u.c);
  const double attack_dc =
      p.alpha * (1.0 - p.c_eps) / ((1.0 + u.c) * (1.0 + u.c));
  const double growth = p.sigma + p.rho * u.d;
  const double room = 1.0 - u.h - u.d;

  Eigen::Matrix4d J = Eigen::Matrix4d::Zero();
  J(0, 0) = -growth - 1.0 - attack * u.m;
  J(0, 1) = p.rho * room - growth;
  J(0, 2) = -attack * u.h;
  J(0, 3) = -attack_dc * u.m * u.h;
  J(1, 0) = attack * u.m + p.rho * u.d;
  J(1, 1) = -p.delta - p.rho * room + p.rho * u.d;
  J(1, 2) = attack * u.h;
  J(1, 3) = attack_dc * u.m * u.h;
  J(2, 1) = p.nu;
  J(2, 2) = -p.nu;
  J(3, 1) = p.r;
  J(3, 3) = -p.mu;
  return J;
}

std::vector<PathologicalEquilibrium> pathological_equilibria(
    const DimensionlessParams& p) {
  const auto [g2, g1, g0] = pathological_coeffs(p);
  std::vector<PathologicalEquilibrium> out;
  for (double d_star : quadratic_roots(g2, g1, g0)) {
    if (!(d_star > kAdmissibilityTol)) continue;
    const double h_star =
        (p.sigma - (p.sigma + p.delta) * d_star) / (1.0 + p.sigma);
    if (!(h_star > kAdmissibilityTol)) continue;
    if (!(h_star + d_star < 1.0 - kAdmissibilityTol)) continue;

    PathologicalEquilibrium eq;
    eq.d_star = d_star;
    eq.state = {h_star, d_star, d_star, (p.r / p.mu) * d_star};

    const State rate = reaction_rhs_unchecked(eq.state, p);
    eq.residual = std::max({std::abs(rate.h), std::abs(rate.d),
                            std::abs(rate.m), std::abs(rate.c)});

    const auto eigenvalues =
        Eigen::EigenSolver<Eigen::Matrix4d>(jacobian_at(eq.state, p), false)
            .eigenvalues();
    double max_re = eigenvalues(0).real();
    double min_abs_re = std::abs(eigenvalues(0).real());
    for (int i = 1; i < 4; ++i) {
      max_re = std::max(max_re, eigenvalues(i).real());
      min_abs_re = std::min(min_abs_re, std::abs(eigenvalues(i).real()));
    }
    eq.marginal = min_abs_re <= kStabilityTol;  // implies !stable
    eq.stable = max_re < -kStabilityTol;
    out.push_back(eq);
  }
  std::sort(out.begin(), out.end(),
            [](const auto& a, const auto& b) { return a.d_star < b.d_star; });
  return out;
}

Regime classify_regime(const DimensionlessParams& p) {
  const double th = theta(p);
  const double scale = p.delta * (1.0 + p.sigma) + p.rho;
  if (std::abs(th) < kDegeneracyTol * scale)
    throw ThresholdDegenerateError("classify_regime: Theta = " +
                                   std::to_string(th) +
                                   " is degenerate at this scale");
  if (th < 0.0) return Regime::Invasion;
  // Theta > 0: one admissible root is the saddle-node tangency on the
  // bistable pocket boundary; counted with the pocket.
  return pathological_equilibria(p).empty() ? Regime::HealthyOnly
                                            : Regime::Bistable;
}

EquilibriumReport equilibrium_report(const DimensionlessParams& p) {
  EquilibriumReport rep;
  rep.healthy = healthy_equilibrium(p);
  rep.theta = theta(p);
  rep.r_d = reproduction_number(p);
  rep.pathological = pathological_equilibria(p);
  rep.regime = classify_regime(p);
  return rep;
}

nlohmann::json report_to_json(const EquilibriumReport& rep) {
  auto state_json = [](const State& u) {
    return nlohmann::json{{"h", u.h}, {"d", u.d}, {"m", u.m}, {"c", u.c}};
  };
  nlohmann::json patho = nlohmann::json::array();
  for (const auto& eq : rep.pathological) {
    patho.push_back({{"state", state_json(eq.state)},
                     {"d_star", eq.d_star},
                     {"stable", eq.stable},
                     {"marginal", eq.marginal},
                     {"residual", eq.residual}});
  }
  return nlohmann::json{{"healthy", state_json(rep.healthy)},
                        {"theta", rep.theta},
                        {"r_d", rep.r_d},
                        {"pathological", patho},
                        {"regime", regime_name(rep.regime)}};
}

}  // namespace dystro
