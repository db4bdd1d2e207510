#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "dystro/equilibria.hpp"
#include "dystro/params.hpp"
#include "dystro/pde_solver.hpp"

namespace dystro {

// One swept parameter axis: n evenly spaced values on [lo, hi].
struct AxisSpec {
  std::string name;
  double lo = 0.0;
  double hi = 0.0;
  std::size_t n = 0;

  double value_at(std::size_t i) const;
  // Throws InvalidParameterError for unknown names or n < 2.
  void validate() const;
};

enum class ScanTask { RegimeMap, SpeedSweep, DispersionStudy };

struct ScanConfig {
  DimensionlessParams base;
  AxisSpec axis1;
  std::optional<AxisSpec> axis2;
  ScanTask task = ScanTask::RegimeMap;
};

bool is_param_name(const std::string& name);
void set_param(DimensionlessParams& p, const std::string& name, double value);

struct RegimeMapRow {
  double axis1 = 0.0;
  double axis2 = 0.0;
  std::string regime;  // regime name or "ThresholdDegenerate"
  double theta = 0.0;
  std::size_t n_pathological = 0;
};

// classify_regime at each node of the axis1 x axis2 grid. Rows come back
// sorted by (axis1, axis2) regardless of worker scheduling.
std::vector<RegimeMapRow> regime_map(const ScanConfig& cfg,
                                     std::size_t threads = 1);

// Companions for the simulated legs of sweeps and dispersion studies.
struct SimulationSetup {
  Grid1D grid{800.0, 4096};
  double t_end = 0.0;  // <= 0: sized from the analytic speed prediction
  std::size_t n_snapshots = 50;
  double cfl_safety = 0.4;
};

struct SpeedSweepRow {
  double value = 0.0;
  std::optional<double> s_star;       // analytical; empty below threshold
  std::optional<double> s_numerical;  // only with simulation
  std::string status;                 // "ok", "NoInvasion" or "NotAttained"
};

// min_speed along axis1; below-threshold nodes become NoInvasion rows. With
// with_simulation, each above-threshold node also runs the PDE from a
// Gaussian perturbation and fits the front speed.
std::vector<SpeedSweepRow> speed_sweep(const ScanConfig& cfg,
                                       bool with_simulation = false,
                                       const SimulationSetup& sim = {},
                                       std::size_t threads = 1);

struct DispersionStudyRow {
  double gamma = 0.0;
  std::optional<double> s_analytical;  // empty for gamma >= gamma_cutoff
  double s_numerical = 0.0;
};

// For each gamma on a grid spanning (0, 2*gamma_cutoff): the analytic branch
// value where defined and the PDE-measured speed from an exponential-decay
// initial condition with that steepness.
std::vector<DispersionStudyRow> dispersion_study(
    const DimensionlessParams& p, std::size_t n_gamma,
    const SimulationSetup& sim = {}, std::size_t threads = 1);

struct MeasuredSpeed {
  double speed = 0.0;
  double r_squared = 0.0;
  double level = 0.0;
  std::pair<double, double> fit_window{0.0, 0.0};
};

// CSV emitters. All numbers use round-trip decimal precision; row order is
// the deterministic order the scan functions return.
std::string regime_map_csv(const std::vector<RegimeMapRow>& rows);
std::string speed_sweep_csv(const std::vector<SpeedSweepRow>& rows,
                            bool with_simulation);
std::string dispersion_study_csv(const std::vector<DispersionStudyRow>& rows);

// Shared measurement path: simulate, trace the d front at the default level,
// fit over the last half of the record with the 20/gamma_star boundary margin.
MeasuredSpeed measure_front_speed(const DimensionlessParams& p,
                                  const InitialCondition& ic,
                                  const SimulationSetup& sim, double t_end);

}  // namespace dystro
