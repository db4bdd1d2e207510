#include "dystro/front_tracker.hpp"

#include <cmath>
#include <string>

#include "dystro/equilibria.hpp"
#include "dystro/errors.hpp"

namespace dystro {

FrontPosition front_position(const Field1D& field, double level) {
  const std::size_t n = field.grid.n;
  const double dx = field.grid.dx();
  std::size_t count = 0;
  double x = 0.0;
  for (std::size_t i = 0; i + 1 < n; ++i) {
    if (field.d[i] >= level && field.d[i + 1] < level) {
      ++count;
      const double frac = (field.d[i] - level) / (field.d[i] - field.d[i + 1]);
      x = field.grid.x_center(i) + frac * dx;  // rightmost one wins
    }
  }
  if (count == 0)
    throw NoFrontError("front_position: no downward crossing of level " +
                       std::to_string(level));
  return {x, count > 1};
}

FrontTrace trace_front(std::span<const Snapshot> snapshots, double level) {
  FrontTrace trace;
  trace.level = level;
  for (const auto& snap : snapshots) {
    try {
      trace.positions.push_back(front_position(snap.field, level).x);
      trace.times.push_back(snap.time);
    } catch (const NoFrontError&) {
      // position undefined at this snapshot; skip
    }
  }
  return trace;
}

double fit_speed(FrontTrace& trace, double domain_length,
                 double boundary_margin) {
  if (trace.times.size() < 2)
    throw InsufficientDataError("fit_speed: fewer than 2 front positions");
  const double t_min = trace.times.front();
  const double t_max = trace.times.back();
  const double t_lo = t_min + 0.5 * (t_max - t_min);
  trace.fit_window = {t_lo, t_max};

  std::vector<double> ts, xs;
  for (std::size_t i = 0; i < trace.times.size(); ++i) {
    const double t = trace.times[i];
    const double x = trace.positions[i];
    if (t < t_lo) continue;
    if (x < boundary_margin || x > domain_length - boundary_margin) continue;
    ts.push_back(t);
    xs.push_back(x);
  }
  if (ts.size() < 10)
    throw InsufficientDataError(
        "fit_speed: only " + std::to_string(ts.size()) +
        " usable points in the fit window (need >= 10)");

  const double n = static_cast<double>(ts.size());
  double t_mean = 0.0, x_mean = 0.0;
  for (std::size_t i = 0; i < ts.size(); ++i) {
    t_mean += ts[i];
    x_mean += xs[i];
  }
  t_mean /= n;
  x_mean /= n;
  double stt = 0.0, stx = 0.0, sxx = 0.0;
  for (std::size_t i = 0; i < ts.size(); ++i) {
    const double dt = ts[i] - t_mean;
    const double dx = xs[i] - x_mean;
    stt += dt * dt;
    stx += dt * dx;
    sxx += dx * dx;
  }
  const double slope = stx / stt;
  double ss_res = 0.0;
  for (std::size_t i = 0; i < ts.size(); ++i) {
    const double resid = xs[i] - x_mean - slope * (ts[i] - t_mean);
    ss_res += resid * resid;
  }
  trace.fitted_speed = slope;
  trace.r_squared = (sxx > 0.0) ? 1.0 - ss_res / sxx : 1.0;
  return slope;
}

double default_front_level(const DimensionlessParams& p) {
  const auto patho = pathological_equilibria(p);
  if (patho.empty()) return 1e-3;
  // With several equilibria, track the largest (the invaded plateau).
  return 0.5 * patho.back().d_star;
}

}  // namespace dystro
