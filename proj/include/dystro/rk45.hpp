#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <limits>
#include <span>

#include "dystro/errors.hpp"

namespace dystro {

struct Rk45Options {
  double rtol = 1e-8;
  double atol = 1e-10;
};

// Adaptive embedded Dormand-Prince 5(4) pair over a fixed-size state vector.
// Steps are shortened to land exactly on each requested sample time, where
// on_sample(t, y) is invoked. post_step(t, y) runs after every accepted step
// and may mutate y (the ODE module uses it to clamp tiny negative
// undershoots). Throws StiffnessError on step-size underflow.
template <std::size_t N, typename Rhs, typename OnSample, typename PostStep>
void integrate_rk45(Rhs&& f, std::array<double, N> y, double t0, double t1,
                    std::span<const double> sample_times, const Rk45Options& opt,
                    OnSample&& on_sample, PostStep&& post_step) {
  using Vec = std::array<double, N>;

  constexpr double a21 = 1.0 / 5;
  constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
  constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
  constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187,
                   a53 = 64448.0 / 6561, a54 = -212.0 / 729;
  constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33,
                   a63 = 46732.0 / 5247, a64 = 49.0 / 176,
                   a65 = -5103.0 / 18656;
  constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192,
                   b5 = -2187.0 / 6784, b6 = 11.0 / 84;
  // b(5th) - b(4th): error estimator weights
  constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920,
                   e5 = -17253.0 / 339200, e6 = 22.0 / 525, e7 = -1.0 / 40;

  auto axpy = [](Vec& out, const Vec& y0, double h,
                 std::initializer_list<std::pair<double, const Vec*>> terms) {
    for (std::size_t i = 0; i < N; ++i) {
      double acc = 0.0;
      for (const auto& [w, k] : terms) acc += w * (*k)[i];
      out[i] = y0[i] + h * acc;
    }
  };

  double t = t0;
  Vec k1 = f(t, y);

  // Hairer-style initial step guess from the scaled norms of y and f.
  double d0 = 0.0, d1 = 0.0;
  for (std::size_t i = 0; i < N; ++i) {
    const double sc = opt.atol + opt.rtol * std::abs(y[i]);
    d0 += (y[i] / sc) * (y[i] / sc);
    d1 += (k1[i] / sc) * (k1[i] / sc);
  }
  double dt = (d1 > 0.0) ? 0.01 * std::sqrt(d0 / d1) : 1e-6 * (t1 - t0);
  dt = std::clamp(dt, 1e-12 * (t1 - t0), 0.1 * (t1 - t0));

  std::size_t sample_idx = 0;
  while (sample_idx < sample_times.size() && sample_times[sample_idx] <= t0) {
    on_sample(sample_times[sample_idx], y);
    ++sample_idx;
  }

  const double dt_floor = 16.0 * std::numeric_limits<double>::epsilon() *
                          std::max(std::abs(t0), std::abs(t1));
  std::size_t n_steps = 0;
  constexpr std::size_t max_steps = 50'000'000;

  while (t < t1) {
    const double t_target =
        (sample_idx < sample_times.size()) ? sample_times[sample_idx] : t1;
    bool hit_target = false;
    double h = dt;
    if (t + h >= t_target) {
      h = t_target - t;
      hit_target = true;
    }
    if (h <= dt_floor) {
      // Degenerate remaining interval; treat the sample as reached.
      t = t_target;
      if (sample_idx < sample_times.size() && t >= sample_times[sample_idx]) {
        on_sample(sample_times[sample_idx], y);
        ++sample_idx;
      }
      continue;
    }

    Vec ytmp, k2, k3, k4, k5, k6, k7, y5;
    axpy(ytmp, y, h, {{a21, &k1}});
    k2 = f(t + h / 5, ytmp);
    axpy(ytmp, y, h, {{a31, &k1}, {a32, &k2}});
    k3 = f(t + 3 * h / 10, ytmp);
    axpy(ytmp, y, h, {{a41, &k1}, {a42, &k2}, {a43, &k3}});
    k4 = f(t + 4 * h / 5, ytmp);
    axpy(ytmp, y, h, {{a51, &k1}, {a52, &k2}, {a53, &k3}, {a54, &k4}});
    k5 = f(t + 8 * h / 9, ytmp);
    axpy(ytmp, y, h, {{a61, &k1}, {a62, &k2}, {a63, &k3}, {a64, &k4}, {a65, &k5}});
    k6 = f(t + h, ytmp);
    axpy(y5, y, h, {{b1, &k1}, {b3, &k3}, {b4, &k4}, {b5, &k5}, {b6, &k6}});
    k7 = f(t + h, y5);

    double err = 0.0;
    for (std::size_t i = 0; i < N; ++i) {
      const double e = h * (e1 * k1[i] + e3 * k3[i] + e4 * k4[i] + e5 * k5[i] +
                            e6 * k6[i] + e7 * k7[i]);
      const double sc =
          opt.atol + opt.rtol * std::max(std::abs(y[i]), std::abs(y5[i]));
      err += (e / sc) * (e / sc);
    }
    err = std::sqrt(err / N);

    if (err <= 1.0) {
      t += h;
      y = y5;
      post_step(t, y);
      if (hit_target && sample_idx < sample_times.size() &&
          t >= sample_times[sample_idx] - dt_floor) {
        on_sample(sample_times[sample_idx], y);
        ++sample_idx;
      }
      k1 = f(t, y);  // no FSAL reuse: post_step may have clamped y
      const double grow =
          (err > 0.0) ? 0.9 * std::pow(err, -0.2) : 5.0;
      dt = h * std::clamp(grow, 0.2, 5.0);
    } else {
      dt = h * std::clamp(0.9 * std::pow(err, -0.2), 0.2, 1.0);
      if (dt <= dt_floor)
        throw StiffnessError("rk45: step size underflow at t = " +
                             std::to_string(t));
    }
    if (++n_steps > max_steps)
      throw StiffnessError("rk45: step budget exhausted at t = " +
                           std::to_string(t));
  }
}

}  // namespace dystro
