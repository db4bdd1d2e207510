#include "dystro/scan.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>
#include <string>

#include "dystro/errors.hpp"
#include "dystro/front_tracker.hpp"
#include "dystro/io.hpp"
#include "dystro/linear_analysis.hpp"
#include "dystro/parallel.hpp"

namespace dystro {

namespace {

using Setter = double DimensionlessParams::*;

const std::map<std::string, Setter>& param_table() {
  static const std::map<std::string, Setter> table = {
      {"sigma", &DimensionlessParams::sigma},
      {"rho", &DimensionlessParams::rho},
      {"alpha", &DimensionlessParams::alpha},
      {"delta", &DimensionlessParams::delta},
      {"nu", &DimensionlessParams::nu},
      {"mu", &DimensionlessParams::mu},
      {"r", &DimensionlessParams::r},
      {"c_eps", &DimensionlessParams::c_eps},
      {"D_d", &DimensionlessParams::D_d},
      {"D_m", &DimensionlessParams::D_m},
      {"D_c", &DimensionlessParams::D_c},
      {"chi0", &DimensionlessParams::chi0},
      {"kappa", &DimensionlessParams::kappa},
  };
  return table;
}

// Sizes a simulation long enough for the front to traverse the usable track
// at the predicted speed, leaving the boundary-exclusion margins free.
double default_t_end(const SimulationSetup& sim, double margin,
                     double predicted_speed) {
  const double track = sim.grid.L - 2.0 * margin - 40.0;
  if (track <= 0.0 || predicted_speed <= 0.0)
    throw DomainError("simulation setup: domain too small for the margins");
  return track / predicted_speed;
}

}  // namespace

bool is_param_name(const std::string& name) {
  return param_table().count(name) > 0;
}

void set_param(DimensionlessParams& p, const std::string& name, double value) {
  const auto it = param_table().find(name);
  if (it == param_table().end())
    throw InvalidParameterError("unknown parameter name '" + name + "'");
  p.*(it->second) = value;
}

double AxisSpec::value_at(std::size_t i) const {
  return lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(n - 1);
}

void AxisSpec::validate() const {
  if (!is_param_name(name))
    throw InvalidParameterError("axis: unknown parameter name '" + name + "'");
  if (n < 2) throw InvalidParameterError("axis: n must be >= 2");
  if (!(lo < hi)) throw InvalidParameterError("axis: need lo < hi");
}

std::vector<RegimeMapRow> regime_map(const ScanConfig& cfg,
                                     std::size_t threads) {
  cfg.axis1.validate();
  if (!cfg.axis2)
    throw InvalidParameterError("regime_map: needs two axes");
  cfg.axis2->validate();

  const std::size_t n1 = cfg.axis1.n;
  const std::size_t n2 = cfg.axis2->n;
  std::vector<RegimeMapRow> rows(n1 * n2);
  parallel_for(n1 * n2, threads, [&](std::size_t k) {
    const std::size_t i = k / n2;
    const std::size_t j = k % n2;
    DimensionlessParams p = cfg.base;
    RegimeMapRow& row = rows[k];
    row.axis1 = cfg.axis1.value_at(i);
    row.axis2 = cfg.axis2->value_at(j);
    set_param(p, cfg.axis1.name, row.axis1);
    set_param(p, cfg.axis2->name, row.axis2);
    row.theta = theta(p);
    try {
      const auto patho = pathological_equilibria(p);
      row.n_pathological = patho.size();
      row.regime = regime_name(classify_regime(p));
    } catch (const ThresholdDegenerateError&) {
      row.regime = "ThresholdDegenerate";
    }
  });
  // Row-major by construction; nodes are independent, so the gather is
  // already the deterministic sorted order.
  return rows;
}

MeasuredSpeed measure_front_speed(const DimensionlessParams& p,
                                  const InitialCondition& ic,
                                  const SimulationSetup& sim, double t_end) {
  double margin = 0.0;
  try {
    margin = 20.0 / min_speed(p).gamma_star;
  } catch (const DomainError&) {
    // below threshold / boundary minimum: no analytic width, no margin
  } catch (const NumericalError&) {
  }

  SimulateOptions opts;
  opts.cfl_safety = sim.cfl_safety;
  opts.n_snapshots = sim.n_snapshots;
  const SimulationResult run = simulate(ic, sim.grid, p, t_end, opts);

  MeasuredSpeed out;
  out.level = default_front_level(p);
  FrontTrace trace = trace_front(run.snapshots, out.level);
  out.speed = fit_speed(trace, sim.grid.L, margin);
  out.r_squared = trace.r_squared;
  out.fit_window = trace.fit_window;
  return out;
}

std::vector<SpeedSweepRow> speed_sweep(const ScanConfig& cfg,
                                       bool with_simulation,
                                       const SimulationSetup& sim,
                                       std::size_t threads) {
  cfg.axis1.validate();
  std::vector<SpeedSweepRow> rows(cfg.axis1.n);
  parallel_for(cfg.axis1.n, threads, [&](std::size_t i) {
    DimensionlessParams p = cfg.base;
    SpeedSweepRow& row = rows[i];
    row.value = cfg.axis1.value_at(i);
    set_param(p, cfg.axis1.name, row.value);
    MinSpeed ms;
    try {
      ms = min_speed(p);
    } catch (const NoInvasionError&) {
      row.status = "NoInvasion";
      return;
    } catch (const NotAttainedError&) {
      row.status = "NotAttained";
      return;
    }
    row.s_star = ms.s_star;
    row.status = "ok";
    if (with_simulation) {
      const double margin = 20.0 / ms.gamma_star;
      const double t_end = (sim.t_end > 0.0)
                               ? sim.t_end
                               : default_t_end(sim, margin, ms.s_star);
      row.s_numerical =
          measure_front_speed(p, InitialCondition{}, sim, t_end).speed;
    }
  });
  return rows;
}

std::vector<DispersionStudyRow> dispersion_study(const DimensionlessParams& p,
                                                 std::size_t n_gamma,
                                                 const SimulationSetup& sim,
                                                 std::size_t threads) {
  if (n_gamma < 1)
    throw InvalidParameterError("dispersion_study: n_gamma must be >= 1");
  const double cutoff = gamma_cutoff(p);  // throws NoInvasion below threshold
  const MinSpeed ms = min_speed(p);
  const double margin = 20.0 / ms.gamma_star;

  std::vector<DispersionStudyRow> rows(n_gamma);
  parallel_for(n_gamma, threads, [&](std::size_t i) {
    DispersionStudyRow& row = rows[i];
    row.gamma = 2.0 * cutoff * static_cast<double>(i + 1) /
                static_cast<double>(n_gamma + 1);
    const bool on_branch = row.gamma < cutoff;
    if (on_branch) row.s_analytical = s_plus(row.gamma, p);
    // Steeper-than-selected tails propagate at the pulled speed s*.
    const double predicted =
        (on_branch && row.gamma < ms.gamma_star) ? *row.s_analytical
                                                 : ms.s_star;
    const double t_end = (sim.t_end > 0.0)
                             ? sim.t_end
                             : default_t_end(sim, margin, predicted);
    InitialCondition ic;
    ic.kind = IcKind::ExponentialDecay;
    ic.gamma = row.gamma;
    ic.amplitude = 0.1;
    row.s_numerical = measure_front_speed(p, ic, sim, t_end).speed;
  });
  return rows;
}

std::string regime_map_csv(const std::vector<RegimeMapRow>& rows) {
  std::ostringstream out;
  out << "axis1,axis2,regime,theta,n_pathological\n";
  for (const auto& row : rows) {
    out << format_double(row.axis1) << ',' << format_double(row.axis2) << ','
        << row.regime << ',' << format_double(row.theta) << ','
        << row.n_pathological << '\n';
  }
  return out.str();
}

std::string speed_sweep_csv(const std::vector<SpeedSweepRow>& rows,
                            bool with_simulation) {
  std::ostringstream out;
  out << (with_simulation ? "value,s_star,s_numerical\n" : "value,s_star\n");
  for (const auto& row : rows) {
    out << format_double(row.value) << ',';
    if (row.s_star)
      out << format_double(*row.s_star);
    else
      out << row.status;  // NoInvasion / NotAttained rows, not failures
    if (with_simulation) {
      out << ',';
      if (row.s_numerical) out << format_double(*row.s_numerical);
    }
    out << '\n';
  }
  return out.str();
}

std::string dispersion_study_csv(const std::vector<DispersionStudyRow>& rows) {
  std::ostringstream out;
  out << "gamma,s_analytical,s_numerical\n";
  for (const auto& row : rows) {
    out << format_double(row.gamma) << ',';
    if (row.s_analytical) out << format_double(*row.s_analytical);
    out << ',' << format_double(row.s_numerical) << '\n';
  }
  return out.str();
}

}  // namespace dystro
