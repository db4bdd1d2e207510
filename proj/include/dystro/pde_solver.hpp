#pragma once

#include <cstddef>
#include <functional>
#include <vector>

#include "dystro/ode_solver.hpp"
#include "dystro/params.hpp"

namespace dystro {

// Uniform cell-centered grid on [0, L] with reflective boundaries.
struct Grid1D {
  double L = 0.0;
  std::size_t n = 0;

  double dx() const { return L / static_cast<double>(n); }
  double x_center(std::size_t i) const {
    return (static_cast<double>(i) + 0.5) * dx();
  }

  // Throws InvalidParameterError unless L > 0 and n >= 16.
  void validate() const;
};

// Cell averages of the four fields.
struct Field1D {
  Grid1D grid;
  std::vector<double> h, d, m, c;

  static Field1D uniform(const Grid1D& grid, const State& u);
};

enum class IcKind { LocalizedGaussian, ExponentialDecay, UniformHealthy };

// Perturbation of the healthy equilibrium on the d component; h starts at
// h0, m and c at 0. Gaussian: d(x) = amplitude * exp(-((x-center)/width)^2).
// Exponential: d(x) = amplitude * exp(-gamma x).
struct InitialCondition {
  IcKind kind = IcKind::LocalizedGaussian;
  double amplitude = 1e-3;
  double center = 0.0;
  double width = 10.0;
  double gamma = 1.0;  // ExponentialDecay only
};

// Builds the initial field and validates that it lies cell-wise in the
// invariant set (throws DomainError otherwise).
Field1D make_initial_field(const InitialCondition& ic, const Grid1D& grid,
                           const DimensionlessParams& p);

// Additive source terms per field, for manufactured-solution tests.
struct Forcing {
  std::function<double(double x, double t)> h, d, m, c;
};

// Test hooks: individual operators can be switched off and a forcing added.
struct StepControls {
  bool reaction = true;
  bool chemotaxis = true;
  bool diffusion = true;
  const Forcing* forcing = nullptr;
};

// Largest dt the explicit part of the split step tolerates:
// min(chemotaxis advection CFL dx/max|v|, 1/max(mu, nu, alpha*max(1,c_eps))).
// Diffusion is implicit and exerts no constraint.
double stability_bound(const Field1D& f, const DimensionlessParams& p);

// One IMEX (Lie) step: explicit reaction, explicit conservative upwinded
// chemotaxis flux for m, then one backward-difference tridiagonal diffusion
// solve per field with mirror ghost cells (second-order zero flux).
// Throws StepTooLargeError when dt exceeds stability_bound.
Field1D step(Field1D field, const DimensionlessParams& p, double dt,
             double t = 0.0, const StepControls& controls = {});

struct Snapshot {
  double time = 0.0;
  Field1D field;
};

struct SimulateOptions {
  double cfl_safety = 0.4;
  std::size_t n_snapshots = 50;
  StepControls controls{};
};

struct SimulationResult {
  std::vector<Snapshot> snapshots;
  std::size_t n_steps = 0;
  double dt_min = 0.0;
  double dt_max = 0.0;
  double dt_mean = 0.0;
  std::vector<InvariantViolation> invariant_violations;
};

// Advances to t_end with dt = cfl_safety * stability_bound, recording
// n_snapshots evenly spaced snapshots (including t=0 and t_end). Field values
// below -1e-9 (or h+d above 1+1e-9) are recorded as violations; a breach
// beyond 1e-6 aborts with SimulationDivergedError carrying a diagnostic dump.
SimulationResult simulate(const InitialCondition& ic, const Grid1D& grid,
                          const DimensionlessParams& p, double t_end,
                          const SimulateOptions& opts = {});

}  // namespace dystro
