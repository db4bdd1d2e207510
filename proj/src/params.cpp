#include "dystro/params.hpp"

#include <array>
#include <string>
#include <utility>

#include <nlohmann/json.hpp>

#include "dystro/errors.hpp"

namespace dystro {

namespace {

using FieldList = std::array<std::pair<const char*, double*>, 18>;

void check_positive(const char* name, double v) {
  if (!(v > 0.0))
    throw InvalidParameterError(std::string(name) +
                                " must be strictly positive, got " +
                                std::to_string(v));
}

template <typename Fields>
void parse_strict(const nlohmann::json& j, const Fields& fields,
                  const char* what) {
  if (!j.is_object())
    throw InvalidParameterError(std::string(what) + ": expected a JSON object");
  for (const auto& [key, value] : j.items()) {
    bool known = false;
    for (const auto& [name, ptr] : fields) {
      if (key == name) {
        known = true;
        break;
      }
    }
    if (!known)
      throw InvalidParameterError(std::string(what) + ": unknown key '" + key +
                                  "'");
  }
  for (const auto& [name, ptr] : fields) {
    if (!j.contains(name))
      throw InvalidParameterError(std::string(what) + ": missing key '" +
                                  name + "'");
    if (!j.at(name).is_number())
      throw InvalidParameterError(std::string(what) + ": key '" + name +
                                  "' must be a number");
    *ptr = j.at(name).template get<double>();
  }
}

}  // namespace

void DimensionalParams::validate() const {
  check_positive("D_H", D_H);
  check_positive("D_D", D_D);
  check_positive("D_M", D_M);
  check_positive("D_C", D_C);
  check_positive("s", s);
  check_positive("r_H", r_H);
  check_positive("K", K);
  check_positive("mu_H", mu_H);
  check_positive("mu_D", mu_D);
  check_positive("mu_M", mu_M);
  check_positive("mu_C", mu_C);
  check_positive("a_bar", a_bar);
  check_positive("C_eps", C_eps);
  check_positive("k_c", k_c);
  check_positive("k_chi", k_chi);
  check_positive("r_M", r_M);
  check_positive("chi_bar", chi_bar);
  check_positive("r_C", r_C);
}

void DimensionlessParams::validate() const {
  check_positive("sigma", sigma);
  check_positive("rho", rho);
  check_positive("alpha", alpha);
  check_positive("delta", delta);
  check_positive("nu", nu);
  check_positive("mu", mu);
  check_positive("r", r);
  check_positive("c_eps", c_eps);
  check_positive("D_d", D_d);
  check_positive("D_m", D_m);
  check_positive("D_c", D_c);
  check_positive("chi0", chi0);
  check_positive("kappa", kappa);
}

DimensionlessParams nondimensionalize(const DimensionalParams& p) {
  p.validate();
  DimensionlessParams q;
  q.sigma = p.s / (p.K * p.mu_H);
  q.rho = p.r_H / p.mu_H;
  q.alpha = p.a_bar * p.r_M * p.K / (p.mu_H * p.mu_M);
  q.delta = p.mu_D / p.mu_H;
  q.nu = p.mu_M / p.mu_H;
  q.mu = p.mu_C / p.mu_H;
  q.r = p.r_C * p.K / (p.k_c * p.mu_H);
  q.c_eps = p.C_eps / p.k_c;
  q.D_d = p.D_D / p.D_H;
  q.D_m = p.D_M / p.D_H;
  q.D_c = p.D_C / p.D_H;
  q.chi0 = p.chi_bar * p.k_c / p.D_H;
  q.kappa = p.k_chi / p.k_c;
  return q;
}

DimensionlessParams params_from_json(const nlohmann::json& j) {
  DimensionlessParams p{};
  const std::array<std::pair<const char*, double*>, 13> fields{{
      {"sigma", &p.sigma},
      {"rho", &p.rho},
      {"alpha", &p.alpha},
      {"delta", &p.delta},
      {"nu", &p.nu},
      {"mu", &p.mu},
      {"r", &p.r},
      {"c_eps", &p.c_eps},
      {"D_d", &p.D_d},
      {"D_m", &p.D_m},
      {"D_c", &p.D_c},
      {"chi0", &p.chi0},
      {"kappa", &p.kappa},
  }};
  parse_strict(j, fields, "params");
  p.validate();
  return p;
}

nlohmann::json params_to_json(const DimensionlessParams& p) {
  return nlohmann::json{
      {"sigma", p.sigma}, {"rho", p.rho},     {"alpha", p.alpha},
      {"delta", p.delta}, {"nu", p.nu},       {"mu", p.mu},
      {"r", p.r},         {"c_eps", p.c_eps}, {"D_d", p.D_d},
      {"D_m", p.D_m},     {"D_c", p.D_c},     {"chi0", p.chi0},
      {"kappa", p.kappa},
  };
}

DimensionalParams dimensional_params_from_json(const nlohmann::json& j) {
  DimensionalParams p{};
  const FieldList fields{{
      {"D_H", &p.D_H},
      {"D_D", &p.D_D},
      {"D_M", &p.D_M},
      {"D_C", &p.D_C},
      {"s", &p.s},
      {"r_H", &p.r_H},
      {"K", &p.K},
      {"mu_H", &p.mu_H},
      {"mu_D", &p.mu_D},
      {"mu_M", &p.mu_M},
      {"mu_C", &p.mu_C},
      {"a_bar", &p.a_bar},
      {"C_eps", &p.C_eps},
      {"k_c", &p.k_c},
      {"k_chi", &p.k_chi},
      {"r_M", &p.r_M},
      {"chi_bar", &p.chi_bar},
      {"r_C", &p.r_C},
  }};
  parse_strict(j, fields, "dimensional params");
  p.validate();
  return p;
}

}  // namespace dystro
