#include "dystro/ode_solver.hpp"

#include <array>
#include <cmath>

#include "dystro/errors.hpp"
#include "dystro/rk45.hpp"

namespace dystro {

Trajectory integrate(const State& u0, const DimensionlessParams& p,
                     double t_end, const IntegrateOptions& opts) {
  if (!(t_end > 0.0)) throw DomainError("integrate: t_end must be positive");
  if (opts.n_out < 2) throw DomainError("integrate: n_out must be >= 2");
  if (!in_invariant_set(u0))
    throw DomainError("integrate: initial state outside the invariant set");

  std::vector<double> samples(opts.n_out);
  for (std::size_t k = 0; k < opts.n_out; ++k)
    samples[k] = t_end * static_cast<double>(k) /
                 static_cast<double>(opts.n_out - 1);

  Trajectory traj;
  traj.times.reserve(opts.n_out);
  traj.states.reserve(opts.n_out);

  auto rhs = [&p](double, const std::array<double, 4>& y) {
    const State rate = reaction_rhs_unchecked(State::from_array(y), p);
    return rate.to_array();
  };

  // Undershoot policy: clamp to 0 only within -atol; anything worse is a
  // solver bug worth surfacing, so it is recorded and left unclamped.
  constexpr char names[4] = {'h', 'd', 'm', 'c'};
  auto post_step = [&](double t, std::array<double, 4>& y) {
    for (int i = 0; i < 4; ++i) {
      if (y[i] < 0.0) {
        if (y[i] >= -opts.atol) {
          y[i] = 0.0;
        } else {
          traj.invariant_violations.push_back({t, names[i], -y[i]});
        }
      }
    }
    const double total = y[0] + y[1];
    if (total > 1.0 + opts.atol)
      traj.invariant_violations.push_back({t, 's', total - 1.0});
  };

  auto on_sample = [&](double t, const std::array<double, 4>& y) {
    traj.times.push_back(t);
    traj.states.push_back(State::from_array(y));
  };

  integrate_rk45<4>(rhs, u0.to_array(), 0.0, t_end, samples,
                    {opts.rtol, opts.atol}, on_sample, post_step);
  return traj;
}

}  // namespace dystro
