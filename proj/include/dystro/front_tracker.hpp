#pragma once

#include <span>
#include <utility>
#include <vector>

#include "dystro/pde_solver.hpp"

namespace dystro {

struct FrontPosition {
  double x = 0.0;
  bool multi_front = false;  // more than one downward crossing; rightmost taken
};

// Linear interpolation of the rightmost downward crossing of the d field
// through `level`. Throws NoFrontError when no crossing exists.
FrontPosition front_position(const Field1D& field, double level);

struct FrontTrace {
  std::vector<double> times;
  std::vector<double> positions;
  double level = 0.0;
  double fitted_speed = 0.0;
  std::pair<double, double> fit_window{0.0, 0.0};
  double r_squared = 0.0;
};

// Collects front positions from the snapshots where a crossing exists.
FrontTrace trace_front(std::span<const Snapshot> snapshots, double level);

// Least-squares slope of position vs time over the last 50% of the record,
// excluding points within boundary_margin of either end of [0, domain_length].
// Fills fitted_speed, fit_window and r_squared on the trace and returns the
// speed. Throws InsufficientDataError with fewer than 10 usable points.
double fit_speed(FrontTrace& trace, double domain_length,
                 double boundary_margin);

// Default tracking level: d_star/2 when an admissible pathological
// equilibrium exists, else 1e-3 absolute.
double default_front_level(const DimensionlessParams& p);

}  // namespace dystro
