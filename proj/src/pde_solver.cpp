#include "dystro/pde_solver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "dystro/equilibria.hpp"
#include "dystro/errors.hpp"
#include "dystro/tridiag.hpp"

namespace dystro {

namespace {

// Reusable buffers for one simulation; each field owns its own step state.
struct Workspace {
  std::vector<double> flux;       // chemotaxis face fluxes
  std::vector<double> sub, diag, sup, scratch;
};

double chemotaxis_velocity_max(const Field1D& f, const DimensionlessParams& p) {
  const double dx = f.grid.dx();
  double vmax = 0.0;
  for (std::size_t i = 0; i + 1 < f.grid.n; ++i) {
    const double grad = (f.c[i + 1] - f.c[i]) / dx;
    const double cf = 0.5 * (f.c[i] + f.c[i + 1]);
    const double v = p.chi0 * cf / (p.kappa + cf) * grad;
    vmax = std::max(vmax, std::abs(v));
  }
  return vmax;
}

void apply_reaction(Field1D& f, const DimensionlessParams& p, double dt) {
  const std::size_t n = f.grid.n;
  for (std::size_t i = 0; i < n; ++i) {
    const State u{f.h[i], f.d[i], f.m[i], f.c[i]};
    const State rate = reaction_rhs_unchecked(u, p);
    f.h[i] += dt * rate.h;
    f.d[i] += dt * rate.d;
    f.m[i] += dt * rate.m;
    f.c[i] += dt * rate.c;
  }
}

void apply_forcing(Field1D& f, double dt, double t, const Forcing& forcing) {
  for (std::size_t i = 0; i < f.grid.n; ++i) {
    const double x = f.grid.x_center(i);
    if (forcing.h) f.h[i] += dt * forcing.h(x, t);
    if (forcing.d) f.d[i] += dt * forcing.d(x, t);
    if (forcing.m) f.m[i] += dt * forcing.m(x, t);
    if (forcing.c) f.c[i] += dt * forcing.c(x, t);
  }
}

// Conservative upwinded chemotaxis transport of m along the gradient of c.
// Face flux F_{i+1/2} = chi0 * (c_f/(kappa+c_f)) * m_up * (c_{i+1}-c_i)/dx
// with the upwind cell chosen by the sign of the face gradient; boundary
// faces carry zero flux, so the discrete total of m is conserved exactly.
void apply_chemotaxis(Field1D& f, const DimensionlessParams& p, double dt,
                      Workspace& ws) {
  const std::size_t n = f.grid.n;
  const double dx = f.grid.dx();
  ws.flux.assign(n - 1, 0.0);
  for (std::size_t i = 0; i + 1 < n; ++i) {
    const double grad = (f.c[i + 1] - f.c[i]) / dx;
    const double cf = 0.5 * (f.c[i] + f.c[i + 1]);
    const double vel = p.chi0 * cf / (p.kappa + cf) * grad;
    const double m_up = (vel > 0.0) ? f.m[i] : f.m[i + 1];
    ws.flux[i] = vel * m_up;
  }
  const double lambda = dt / dx;
  for (std::size_t i = 0; i < n; ++i) {
    const double f_right = (i + 1 < n) ? ws.flux[i] : 0.0;
    const double f_left = (i > 0) ? ws.flux[i - 1] : 0.0;
    f.m[i] -= lambda * (f_right - f_left);
  }
}

// Backward-difference diffusion solve: (I - dt D L) u_new = u, with the
// three-point Laplacian and mirror ghost cells (second-order zero flux).
void apply_diffusion(std::vector<double>& u, double diffusivity, double dt,
                     double dx, Workspace& ws) {
  const std::size_t n = u.size();
  const double lam = dt * diffusivity / (dx * dx);
  ws.sub.assign(n, -lam);
  ws.sup.assign(n, -lam);
  ws.diag.assign(n, 1.0 + 2.0 * lam);
  ws.diag[0] = 1.0 + lam;  // mirrored ghost folds one off-diagonal back
  ws.diag[n - 1] = 1.0 + lam;
  solve_tridiagonal(ws.sub, ws.diag, ws.sup, u, ws.scratch);
}

void advance(Field1D& f, const DimensionlessParams& p, double dt, double t,
             const StepControls& controls, Workspace& ws) {
  if (controls.reaction) apply_reaction(f, p, dt);
  if (controls.forcing) apply_forcing(f, dt, t, *controls.forcing);
  if (controls.chemotaxis) apply_chemotaxis(f, p, dt, ws);
  if (controls.diffusion) {
    const double dx = f.grid.dx();
    apply_diffusion(f.h, 1.0, dt, dx, ws);
    apply_diffusion(f.d, p.D_d, dt, dx, ws);
    apply_diffusion(f.m, p.D_m, dt, dx, ws);
    apply_diffusion(f.c, p.D_c, dt, dx, ws);
  }
}

}  // namespace

void Grid1D::validate() const {
  if (!(L > 0.0)) throw InvalidParameterError("grid: L must be positive");
  if (n < 16) throw InvalidParameterError("grid: n must be >= 16");
}

Field1D Field1D::uniform(const Grid1D& grid, const State& u) {
  Field1D f;
  f.grid = grid;
  f.h.assign(grid.n, u.h);
  f.d.assign(grid.n, u.d);
  f.m.assign(grid.n, u.m);
  f.c.assign(grid.n, u.c);
  return f;
}

Field1D make_initial_field(const InitialCondition& ic, const Grid1D& grid,
                           const DimensionlessParams& p) {
  grid.validate();
  if (ic.amplitude < 0.0)
    throw DomainError("initial condition: amplitude must be nonnegative");
  const double h0 = healthy_equilibrium(p).h;
  Field1D f = Field1D::uniform(grid, {h0, 0.0, 0.0, 0.0});
  switch (ic.kind) {
    case IcKind::UniformHealthy:
      break;
    case IcKind::LocalizedGaussian: {
      if (!(ic.width > 0.0))
        throw DomainError("initial condition: width must be positive");
      for (std::size_t i = 0; i < grid.n; ++i) {
        const double z = (grid.x_center(i) - ic.center) / ic.width;
        f.d[i] = ic.amplitude * std::exp(-z * z);
      }
      break;
    }
    case IcKind::ExponentialDecay: {
      if (!(ic.gamma > 0.0))
        throw DomainError("initial condition: gamma must be positive");
      for (std::size_t i = 0; i < grid.n; ++i)
        f.d[i] = ic.amplitude * std::exp(-ic.gamma * grid.x_center(i));
      break;
    }
  }
  for (std::size_t i = 0; i < grid.n; ++i) {
    if (f.h[i] + f.d[i] > 1.0)
      throw DomainError(
          "initial condition: h + d exceeds 1; reduce the amplitude");
  }
  return f;
}

double stability_bound(const Field1D& f, const DimensionlessParams& p) {
  const double reaction_scale =
      1.0 / std::max({p.mu, p.nu, p.alpha * std::max(1.0, p.c_eps)});
  const double vmax = chemotaxis_velocity_max(f, p);
  if (vmax <= 0.0) return reaction_scale;
  return std::min(f.grid.dx() / vmax, reaction_scale);
}

Field1D step(Field1D field, const DimensionlessParams& p, double dt, double t,
             const StepControls& controls) {
  field.grid.validate();
  if (!(dt > 0.0)) throw DomainError("step: dt must be positive");
  if (dt > stability_bound(field, p))
    throw StepTooLargeError("step: dt = " + std::to_string(dt) +
                            " exceeds the explicit stability bound " +
                            std::to_string(stability_bound(field, p)));
  Workspace ws;
  advance(field, p, dt, t, controls, ws);
  return field;
}

SimulationResult simulate(const InitialCondition& ic, const Grid1D& grid,
                          const DimensionlessParams& p, double t_end,
                          const SimulateOptions& opts) {
  if (!(t_end > 0.0)) throw DomainError("simulate: t_end must be positive");
  if (!(opts.cfl_safety > 0.0) || opts.cfl_safety > 1.0)
    throw DomainError("simulate: cfl_safety must lie in (0, 1]");
  const std::size_t n_snapshots = std::max<std::size_t>(2, opts.n_snapshots);

  Field1D f = make_initial_field(ic, grid, p);
  Workspace ws;

  SimulationResult result;
  result.snapshots.reserve(n_snapshots);
  result.snapshots.push_back({0.0, f});

  constexpr double kRecordTol = 1e-9;
  constexpr double kAbortTol = 1e-6;
  double t = 0.0;
  double dt_sum = 0.0;
  result.dt_min = std::numeric_limits<double>::infinity();

  // Worst excursion per field since the last snapshot; one violation record
  // per snapshot interval keeps the list bounded on long runs.
  double worst[5] = {0, 0, 0, 0, 0};  // h, d, m, c, h+d-1
  constexpr char names[5] = {'h', 'd', 'm', 'c', 's'};

  for (std::size_t k = 1; k < n_snapshots; ++k) {
    const double t_snap = t_end * static_cast<double>(k) /
                          static_cast<double>(n_snapshots - 1);
    while (t < t_snap) {
      double dt = opts.cfl_safety * stability_bound(f, p);
      dt = std::min(dt, t_snap - t);
      advance(f, p, dt, t, opts.controls, ws);
      t += dt;
      ++result.n_steps;
      dt_sum += dt;
      result.dt_min = std::min(result.dt_min, dt);
      result.dt_max = std::max(result.dt_max, dt);

      double mins[4] = {0, 0, 0, 0};
      double max_total = 0.0;
      const std::vector<double>* fields[4] = {&f.h, &f.d, &f.m, &f.c};
      for (int q = 0; q < 4; ++q) {
        double mn = (*fields[q])[0];
        for (double v : *fields[q]) mn = std::min(mn, v);
        mins[q] = mn;
      }
      for (std::size_t i = 0; i < grid.n; ++i)
        max_total = std::max(max_total, f.h[i] + f.d[i]);

      for (int q = 0; q < 4; ++q) worst[q] = std::max(worst[q], -mins[q]);
      worst[4] = std::max(worst[4], max_total - 1.0);

      for (int q = 0; q < 5; ++q) {
        if (worst[q] > kAbortTol) {
          throw SimulationDivergedError(
              std::string("simulate: invariant breach on field '") +
              names[q] + "' of magnitude " + std::to_string(worst[q]) +
              " at t = " + std::to_string(t) + " (step " +
              std::to_string(result.n_steps) + ", dt = " +
              std::to_string(dt) + ")");
        }
      }
    }
    for (int q = 0; q < 5; ++q) {
      if (worst[q] > kRecordTol)
        result.invariant_violations.push_back({t, names[q], worst[q]});
      worst[q] = 0.0;
    }
    result.snapshots.push_back({t, f});
  }
  result.dt_mean = (result.n_steps > 0)
                       ? dt_sum / static_cast<double>(result.n_steps)
                       : 0.0;
  if (result.n_steps == 0) result.dt_min = 0.0;
  return result;
}

}  // namespace dystro
