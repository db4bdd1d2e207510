#include <cmath>
#include <numeric>
#include <random>

#include <doctest.h>

#include "dystro/equilibria.hpp"
#include "dystro/errors.hpp"
#include "dystro/front_tracker.hpp"
#include "dystro/linear_analysis.hpp"
#include "dystro/pde_solver.hpp"
#include "test_support.hpp"

using namespace dystro;
using namespace dystro::testing;

namespace {

DimensionlessParams unit_params() {
  DimensionlessParams p;
  p.sigma = p.rho = p.alpha = p.delta = p.nu = p.mu = p.r = 1.0;
  p.c_eps = 0.1;
  p.D_d = p.D_m = p.D_c = 1.0;
  p.chi0 = 1.0;
  p.kappa = 1.0;
  return p;
}

double field_sum(const std::vector<double>& v) {
  return std::accumulate(v.begin(), v.end(), 0.0);
}

}  // namespace

TEST_CASE("grid validation") {
  Grid1D g{0.0, 64};
  CHECK_THROWS_AS(g.validate(), InvalidParameterError);
  g = {100.0, 8};
  CHECK_THROWS_AS(g.validate(), InvalidParameterError);
  g = {100.0, 16};
  CHECK_NOTHROW(g.validate());
  CHECK(g.dx() == doctest::Approx(6.25));
  CHECK(g.x_center(0) == doctest::Approx(3.125));
}

TEST_CASE("uniform healthy field is a discrete fixed point") {
  const auto p = reference_params(50.0);
  const Grid1D grid{100.0, 64};
  Field1D f = make_initial_field({IcKind::UniformHealthy}, grid, p);
  const double h0 = f.h[0];
  const double dt = 0.4 * stability_bound(f, p);
  for (int k = 0; k < 100; ++k) f = step(std::move(f), p, dt);
  for (std::size_t i = 0; i < grid.n; ++i) {
    CHECK(std::abs(f.h[i] - h0) < 1e-12);
    CHECK(std::abs(f.d[i]) < 1e-12);
    CHECK(std::abs(f.m[i]) < 1e-12);
    CHECK(std::abs(f.c[i]) < 1e-12);
  }
}

TEST_CASE("spatially uniform c produces exactly zero chemotaxis flux") {
  const auto p = reference_params(50.0);
  const Grid1D grid{50.0, 32};
  Field1D f = Field1D::uniform(grid, {0.4, 0.1, 0.0, 0.7});
  std::mt19937_64 rng(51);
  std::uniform_real_distribution<double> uni(0.0, 1.0);
  for (auto& v : f.m) v = uni(rng);
  const auto m_before = f.m;
  StepControls controls;
  controls.reaction = false;
  controls.diffusion = false;
  f = step(std::move(f), p, 1e-3, 0.0, controls);
  for (std::size_t i = 0; i < grid.n; ++i) CHECK(f.m[i] == m_before[i]);
}

TEST_CASE("transport operators conserve every field with reaction off") {
  const auto p = reference_params(50.0);
  const Grid1D grid{100.0, 128};
  Field1D f = Field1D::uniform(grid, {});
  for (std::size_t i = 0; i < grid.n; ++i) {
    const double x = grid.x_center(i);
    f.h[i] = 0.3 + 0.1 * std::cos(2.0 * M_PI * x / grid.L);
    f.d[i] = 0.2 * std::exp(-(x - 30.0) * (x - 30.0) / 50.0);
    f.m[i] = 0.5 + 0.3 * std::sin(M_PI * x / grid.L);
    f.c[i] = 2.0 * std::exp(-(x - 60.0) * (x - 60.0) / 200.0);
  }
  StepControls controls;
  controls.reaction = false;
  for (int k = 0; k < 50; ++k) {
    const double sums[4] = {field_sum(f.h), field_sum(f.d), field_sum(f.m),
                            field_sum(f.c)};
    const double dt = 0.4 * stability_bound(f, p);
    f = step(std::move(f), p, dt, 0.0, controls);
    const double after[4] = {field_sum(f.h), field_sum(f.d), field_sum(f.m),
                             field_sum(f.c)};
    for (int q = 0; q < 4; ++q)
      CHECK(std::abs(after[q] - sums[q]) <=
            1e-12 * std::max(1.0, std::abs(sums[q])));
  }
}

TEST_CASE("oversized steps are rejected") {
  const auto p = reference_params(50.0);
  const Grid1D grid{100.0, 64};
  Field1D f = make_initial_field({IcKind::UniformHealthy}, grid, p);
  const double bound = stability_bound(f, p);
  CHECK_THROWS_AS(step(std::move(f), p, 2.0 * bound), StepTooLargeError);
}

TEST_CASE("diffusion converges at second order against a forced solution") {
  // d(x,t) = cos(pi x / L) e^{-t} with matching source; zero-flux compatible.
  auto p = unit_params();
  const double L = 10.0;
  const double t_end = 0.5;
  const double k = M_PI / L;

  Forcing forcing;
  forcing.d = [&p, k](double x, double t) {
    return (-1.0 + p.D_d * k * k) * std::cos(k * x) * std::exp(-t);
  };
  StepControls controls;
  controls.reaction = false;
  controls.chemotaxis = false;
  controls.forcing = &forcing;

  double errors[3];
  std::size_t sizes[3] = {64, 128, 256};
  for (int level = 0; level < 3; ++level) {
    const Grid1D grid{L, sizes[level]};
    Field1D f = Field1D::uniform(grid, {});
    for (std::size_t i = 0; i < grid.n; ++i)
      f.d[i] = std::cos(k * grid.x_center(i));
    const double dx = grid.dx();
    const double dt0 = 0.2 * dx * dx;  // time error slaved to spatial error
    double t = 0.0;
    while (t < t_end) {
      const double dt = std::min(dt0, t_end - t);
      f = step(std::move(f), p, dt, t, controls);
      t += dt;
    }
    double err2 = 0.0;
    for (std::size_t i = 0; i < grid.n; ++i) {
      const double exact = std::cos(k * grid.x_center(i)) * std::exp(-t_end);
      err2 += (f.d[i] - exact) * (f.d[i] - exact) * dx;
    }
    errors[level] = std::sqrt(err2);
  }
  const double order1 = std::log2(errors[0] / errors[1]);
  const double order2 = std::log2(errors[1] / errors[2]);
  CHECK(order1 > 1.7);
  CHECK(order1 < 2.3);
  CHECK(order2 > 1.7);
  CHECK(order2 < 2.3);
}

TEST_CASE("runaway fields abort with a diagnostic") {
  const auto p = reference_params(50.0);
  Forcing forcing;
  forcing.d = [](double, double) { return -10.0; };  // drive d negative
  SimulateOptions opts;
  opts.controls.forcing = &forcing;
  CHECK_THROWS_AS(
      simulate({IcKind::UniformHealthy}, {100.0, 64}, p, 1.0, opts),
      SimulationDivergedError);
}

TEST_CASE("below threshold a localized perturbation decays to healthy") {
  const auto p = reference_params(30.0);
  const Grid1D grid{200.0, 1024};
  const auto run = simulate({IcKind::LocalizedGaussian}, grid, p, 80.0);
  CHECK(run.invariant_violations.empty());

  // max_i d_i decays monotonically after the initial transient
  std::vector<double> peaks;
  for (const auto& snap : run.snapshots)
    peaks.push_back(*std::max_element(snap.field.d.begin(),
                                      snap.field.d.end()));
  for (std::size_t i = run.snapshots.size() / 4;
       i + 1 < run.snapshots.size(); ++i)
    CHECK(peaks[i + 1] <= peaks[i] + 1e-12);

  const double h0 = healthy_equilibrium(p).h;
  const auto& last = run.snapshots.back().field;
  for (std::size_t i = 0; i < grid.n; ++i) {
    CHECK(std::abs(last.h[i] - h0) < 1e-4);
    CHECK(std::abs(last.d[i]) < 1e-4);
    CHECK(std::abs(last.m[i]) < 1e-4);
    CHECK(std::abs(last.c[i]) < 1e-4);
  }
}

TEST_CASE("above threshold a front connects the diseased and healthy states") {
  const auto p = speed_params(50.0);
  const auto eqs = pathological_equilibria(p);
  REQUIRE(eqs.size() == 1);
  const State dstar = eqs[0].state;

  const Grid1D grid{400.0, 2048};
  const auto run = simulate({IcKind::LocalizedGaussian}, grid, p, 80.0);
  const auto& last = run.snapshots.back().field;

  // behind the front: plateau at the diseased state
  for (std::size_t i = 0; i < grid.n; ++i) {
    if (grid.x_center(i) > 100.0) break;
    CHECK(std::abs(last.d[i] - dstar.d) < 1e-2);
    CHECK(std::abs(last.h[i] - dstar.h) < 1e-2);
  }
  // ahead of the front: still healthy
  const double h0 = healthy_equilibrium(p).h;
  for (std::size_t i = grid.n - 10; i < grid.n; ++i) {
    CHECK(std::abs(last.h[i] - h0) < 1e-3);
    CHECK(std::abs(last.d[i]) < 1e-3);
  }
  CHECK(run.invariant_violations.empty());
}

TEST_CASE("front position self-converges under grid refinement") {
  const auto p = speed_params(50.0);
  const double level = 0.5 * pathological_equilibria(p)[0].d_star;
  double positions[2];
  std::size_t sizes[2] = {1024, 2048};
  for (int lev = 0; lev < 2; ++lev) {
    const Grid1D grid{200.0, sizes[lev]};
    const auto run = simulate({IcKind::LocalizedGaussian}, grid, p, 40.0);
    positions[lev] = front_position(run.snapshots.back().field, level).x;
  }
  const double dx_coarse = 200.0 / 1024.0;
  CHECK(std::abs(positions[1] - positions[0]) < dx_coarse);
}

TEST_CASE("chemotaxis barely shifts the measured early front speed") {
  auto with_chi = speed_params(50.0);
  auto no_chi = with_chi;
  no_chi.chi0 = 0.0;  // constructed directly; linearization kills this term

  const Grid1D grid{400.0, 2048};
  const double margin = 20.0 / min_speed(with_chi).gamma_star;
  const double level = 0.5 * pathological_equilibria(with_chi)[0].d_star;

  double speeds[2];
  const DimensionlessParams* ps[2] = {&with_chi, &no_chi};
  for (int q = 0; q < 2; ++q) {
    const auto run = simulate({IcKind::LocalizedGaussian}, grid, *ps[q], 95.0);
    auto trace = trace_front(run.snapshots, level);
    speeds[q] = fit_speed(trace, grid.L, margin);
  }
  CHECK(std::abs(speeds[0] - speeds[1]) < 0.01 * std::abs(speeds[0]));
}

TEST_CASE("simulate bookkeeping: snapshots, dt stats, options") {
  const auto p = reference_params(50.0);
  SimulateOptions opts;
  opts.n_snapshots = 11;
  const auto run = simulate({IcKind::LocalizedGaussian}, {100.0, 64}, p, 2.0,
                            opts);
  REQUIRE(run.snapshots.size() == 11);
  CHECK(run.snapshots.front().time == 0.0);
  CHECK(run.snapshots.back().time == doctest::Approx(2.0).epsilon(1e-12));
  for (std::size_t i = 1; i < run.snapshots.size(); ++i)
    CHECK(run.snapshots[i].time > run.snapshots[i - 1].time);
  CHECK(run.n_steps > 0);
  CHECK(run.dt_min <= run.dt_mean);
  CHECK(run.dt_mean <= run.dt_max);
  CHECK(run.dt_max <= stability_bound(run.snapshots.front().field, p));

  CHECK_THROWS_AS(
      simulate({IcKind::LocalizedGaussian}, {100.0, 64}, p, -1.0, opts),
      DomainError);
  SimulateOptions bad;
  bad.cfl_safety = 1.5;
  CHECK_THROWS_AS(
      simulate({IcKind::LocalizedGaussian}, {100.0, 64}, p, 1.0, bad),
      DomainError);
}

TEST_CASE("initial conditions live in the invariant set") {
  const auto p = reference_params(50.0);
  InitialCondition ic;
  ic.amplitude = 0.6;  // h0 + 0.6 > 1
  CHECK_THROWS_AS(make_initial_field(ic, {100.0, 64}, p), DomainError);
  ic.amplitude = -0.1;
  CHECK_THROWS_AS(make_initial_field(ic, {100.0, 64}, p), DomainError);

  ic = InitialCondition{};
  ic.kind = IcKind::ExponentialDecay;
  ic.gamma = 0.5;
  ic.amplitude = 0.1;
  const auto f = make_initial_field(ic, {100.0, 64}, p);
  CHECK(f.d[0] == doctest::Approx(0.1 * std::exp(-0.5 * f.grid.x_center(0))));
  for (std::size_t i = 0; i < f.grid.n; ++i)
    CHECK(f.h[i] + f.d[i] <= 1.0);
}
