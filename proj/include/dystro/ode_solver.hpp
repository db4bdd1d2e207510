#pragma once

#include <cstddef>
#include <vector>

#include "dystro/model.hpp"
#include "dystro/params.hpp"

namespace dystro {

struct IntegrateOptions {
  double rtol = 1e-8;
  double atol = 1e-10;
  std::size_t n_out = 400;
};

// A sampled component excursion outside the invariant set worse than the
// clamping tolerance (field is one of 'h','d','m','c', or 's' for h+d>1).
struct InvariantViolation {
  double time = 0.0;
  char field = '?';
  double magnitude = 0.0;
};

struct Trajectory {
  std::vector<double> times;
  std::vector<State> states;
  std::vector<InvariantViolation> invariant_violations;
};

// Integrates the homogeneous reaction system from u0 to t_end with the
// adaptive RK45 pair, sampling n_out points (including t=0 and t_end).
// Components are clamped to 0 only when within -atol of it; any worse
// negativity is recorded as a violation and left untouched. Throws
// DomainError if u0 is outside the invariant set and StiffnessError on
// step-size underflow.
Trajectory integrate(const State& u0, const DimensionlessParams& p,
                     double t_end, const IntegrateOptions& opts = {});

}  // namespace dystro
