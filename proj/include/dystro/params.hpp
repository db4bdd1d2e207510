#pragma once

#include <nlohmann/json_fwd.hpp>

namespace dystro {

// Dimensional model coefficients. Units follow the usual convention:
// diffusivities in length^2/time, rates in 1/time, densities relative to the
// tissue carrying capacity K, concentrations relative to the half-saturation
// constant k_c.
struct DimensionalParams {
  double D_H;      // healthy tissue diffusion
  double D_D;      // damaged tissue diffusion
  double D_M;      // macrophage motility
  double D_C;      // chemokine diffusion
  double s;        // basal growth rate
  double r_H;      // repair rate
  double K;        // carrying capacity
  double mu_H;     // healthy turnover
  double mu_D;     // damaged turnover
  double mu_M;     // macrophage decay
  double mu_C;     // chemokine degradation
  double a_bar;    // max damage rate
  double C_eps;    // basal activation
  double k_c;      // half-saturation (damage)
  double k_chi;    // chemotactic saturation
  double r_M;      // macrophage recruitment
  double chi_bar;  // chemotactic sensitivity
  double r_C;      // chemokine production

  // Throws InvalidParameterError unless every field is strictly positive.
  void validate() const;
};

// The thirteen dimensionless ratios that govern the model. sigma, rho, alpha,
// delta, nu, mu, r and c_eps are rate ratios; D_d, D_m, D_c diffusion ratios;
// chi0 and kappa the chemotactic sensitivity and saturation ratios.
struct DimensionlessParams {
  double sigma;
  double rho;
  double alpha;
  double delta;
  double nu;
  double mu;
  double r;
  double c_eps;
  double D_d;
  double D_m;
  double D_c;
  double chi0;
  double kappa;

  void validate() const;
};

// Scaling t = mu_H * tau, x = sqrt(mu_H / D_H) * xi, densities by K,
// concentrations by k_c. c_eps comes out as C_eps / k_c.
DimensionlessParams nondimensionalize(const DimensionalParams& p);

// Strict JSON codecs: exactly the field names above, unknown keys rejected.
DimensionlessParams params_from_json(const nlohmann::json& j);
nlohmann::json params_to_json(const DimensionlessParams& p);
DimensionalParams dimensional_params_from_json(const nlohmann::json& j);

}  // namespace dystro
