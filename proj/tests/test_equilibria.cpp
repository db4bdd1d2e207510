#include <cmath>
#include <random>

#include <doctest.h>
#include <nlohmann/json.hpp>

#include "dystro/equilibria.hpp"
#include "dystro/errors.hpp"
#include "dystro/model.hpp"
#include "test_support.hpp"

using namespace dystro;
using namespace dystro::testing;

TEST_CASE("healthy equilibrium h0 = sigma/(1+sigma)") {
  auto p = reference_params(50.0);
  CHECK(healthy_equilibrium(p).h == doctest::Approx(0.5).epsilon(1e-15));
  p.sigma = 0.5;
  CHECK(healthy_equilibrium(p).h ==
        doctest::Approx(1.0 / 3.0).epsilon(1e-15));
  p.sigma = 1e12;
  CHECK(healthy_equilibrium(p).h == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(healthy_equilibrium(p).d == 0.0);
  CHECK(healthy_equilibrium(p).m == 0.0);
  CHECK(healthy_equilibrium(p).c == 0.0);
}

TEST_CASE("theta values and the alpha_c = 31 root") {
  CHECK(std::abs(theta(reference_params(31.0))) < 1e-12);
  CHECK(theta(reference_params(50.0)) == doctest::Approx(-1.9).epsilon(1e-13));
  auto p = reference_params(50.0);
  p.alpha = 0.0;
  CHECK(theta(p) == doctest::Approx(3.1).epsilon(1e-14));

  // Root of Theta as a function of alpha
  const auto q = reference_params(1.0);
  const double alpha_c =
      (q.delta * (1.0 + q.sigma) + q.rho) / (q.c_eps * q.sigma);
  CHECK(std::abs(alpha_c - 31.0) <= 1e-12 * 31.0);
}

TEST_CASE("reproduction number and its threshold equivalence") {
  CHECK(reproduction_number(reference_params(31.0)) ==
        doctest::Approx(1.0).epsilon(1e-13));
  CHECK(reproduction_number(reference_params(50.0)) ==
        doctest::Approx(5.0 / 3.1).epsilon(1e-13));
  auto p = reference_params(50.0);
  p.alpha = 1e-300;
  CHECK(reproduction_number(p) < 1e-200);

  std::mt19937_64 rng(21);
  for (int i = 0; i < 1000; ++i) {
    const auto q = random_params(rng);
    CHECK((reproduction_number(q) > 1.0) == (theta(q) < 0.0));
  }
}

TEST_CASE("pathological quadratic coefficients") {
  const auto p = reference_params(50.0);
  const auto [g2, g1, g0] = pathological_coeffs(p);
  CHECK(g2 == doctest::Approx(-105.09).epsilon(1e-10));
  CHECK(g1 == doctest::Approx(-1732.22).epsilon(1e-10));
  CHECK(g0 == doctest::Approx(319.2).epsilon(1e-10));

  // g0 = -mu * Theta to machine precision, all parameter sets
  std::mt19937_64 rng(22);
  for (int i = 0; i < 1000; ++i) {
    const auto q = random_params(rng);
    const double g0q = pathological_coeffs(q)[2];
    const double expected = -q.mu * theta(q);
    CHECK(std::abs(g0q - expected) <=
          1e-13 * std::max(std::abs(expected), 1.0));
  }

  // degenerate quadratic: alpha -> 0, delta = 1 kills g2
  auto d = reference_params(50.0);
  d.alpha = 0.0;
  d.delta = 1.0;
  CHECK(pathological_coeffs(d)[0] == 0.0);
}

TEST_CASE("unique admissible pathological equilibrium above threshold") {
  const auto p = reference_params(50.0);
  const auto eqs = pathological_equilibria(p);
  REQUIRE(eqs.size() == 1);
  const auto& eq = eqs[0];

  // independent quadratic-formula oracle
  const auto [g2, g1, g0] = pathological_coeffs(p);
  double d_oracle = -1.0;
  for (double root : quadratic_oracle(g2, g1, g0))
    if (root > 0.0) d_oracle = root;
  REQUIRE(d_oracle > 0.0);

  CHECK(std::abs(eq.d_star - d_oracle) < 1e-9);
  CHECK(eq.d_star == doctest::Approx(0.18225696633747063).epsilon(1e-12));
  CHECK(eq.state.h == doctest::Approx(0.30863018534565583).epsilon(1e-12));
  CHECK(eq.state.m == eq.d_star);
  CHECK(eq.state.c ==
        doctest::Approx(eq.d_star / 168.0).epsilon(1e-13));
  CHECK(eq.d_star > 0.0);
  CHECK(eq.d_star < p.sigma / (p.sigma + p.delta));
  CHECK(eq.residual < 1e-10);
  CHECK(eq.stable);
  CHECK(!eq.marginal);
  CHECK(eq.state.h + eq.d_star < 1.0);
}

TEST_CASE("below threshold with delta >= 1 there is no admissible root") {
  std::mt19937_64 rng(23);
  int tested = 0;
  while (tested < 100) {
    auto p = random_params(rng);
    p.delta = std::uniform_real_distribution<double>(1.0, 5.0)(rng);
    const double alpha_c =
        (p.delta * (1.0 + p.sigma) + p.rho) / (p.c_eps * p.sigma);
    p.alpha = std::uniform_real_distribution<double>(0.2, 0.95)(rng) *
              alpha_c;
    if (theta(p) <= 0.0) continue;
    ++tested;
    CHECK(pathological_equilibria(p).empty());

    // brute-force sign scan of G on (0, sigma/(sigma+delta))
    const auto [g2, g1, g0] = pathological_coeffs(p);
    const double d_max = p.sigma / (p.sigma + p.delta);
    auto G = [&](double d) { return (g2 * d + g1) * d + g0; };
    bool sign_change = false;
    double prev = G(d_max * 1e-6);
    for (int k = 1; k <= 2000; ++k) {
      const double cur = G(d_max * (1e-6 + (1.0 - 2e-6) * k / 2000.0));
      if ((prev > 0.0) != (cur > 0.0)) sign_change = true;
      prev = cur;
    }
    CHECK(!sign_change);
  }
}

TEST_CASE("bistable pocket at small delta") {
  // The pocket requires g1 > 0, which confines it to delta below ~0.015 for
  // the reference parameters; located by grid search, not a fixed point.
  DimensionlessParams base = reference_params(9.0);
  bool found = false;
  for (int i = 0; i <= 30 && !found; ++i) {
    const double delta = 0.002 + (0.014 - 0.002) * i / 30.0;
    for (int j = 0; j <= 40 && !found; ++j) {
      const double alpha = 8.6 + (9.3 - 8.6) * j / 40.0;
      auto p = base;
      p.delta = delta;
      p.alpha = alpha;
      if (theta(p) <= 0.0) continue;
      const auto eqs = pathological_equilibria(p);
      if (eqs.size() != 2) continue;
      found = true;
      CHECK(eqs[0].d_star < eqs[1].d_star);
      CHECK(!eqs[0].stable);  // lower root is the separatrix
      CHECK(eqs[1].stable);   // upper root is the persistent diseased state
      CHECK(classify_regime(p) == Regime::Bistable);
      for (const auto& eq : eqs) {
        CHECK(eq.state.h > 0.0);
        CHECK(eq.state.h + eq.d_star < 1.0);
        CHECK(eq.residual < 1e-10);
      }
    }
  }
  CHECK(found);
}

TEST_CASE("analytic Jacobian at the healthy equilibrium") {
  const auto p = reference_params(50.0);
  const auto J = jacobian_at(healthy_equilibrium(p), p);
  CHECK(J(0, 0) == doctest::Approx(-2.0).epsilon(1e-14));
  CHECK(J(3, 3) == doctest::Approx(-168.0).epsilon(1e-14));
  CHECK(J(2, 1) == doctest::Approx(7.0).epsilon(1e-14));
  CHECK(J(1, 2) == doctest::Approx(2.5).epsilon(1e-14));  // alpha c_eps h0
  CHECK(J(0, 1) == doctest::Approx(0.45 - 1.0).epsilon(1e-13));
  CHECK(J(1, 1) == doctest::Approx(-1.55).epsilon(1e-13));
  CHECK(J(0, 2) == doctest::Approx(-2.5).epsilon(1e-14));
  CHECK(J(3, 1) == doctest::Approx(1.0).epsilon(1e-14));

  // eigenvalue set contains -(1+sigma) and -mu
  const auto ev = Eigen::EigenSolver<Eigen::Matrix4d>(J).eigenvalues();
  bool has_h_mode = false, has_c_mode = false;
  for (int i = 0; i < 4; ++i) {
    if (std::abs(ev(i).imag()) < 1e-9) {
      if (std::abs(ev(i).real() + 2.0) < 1e-9) has_h_mode = true;
      if (std::abs(ev(i).real() + 168.0) < 1e-7) has_c_mode = true;
    }
  }
  CHECK(has_h_mode);
  CHECK(has_c_mode);
}

TEST_CASE("analytic Jacobian matches central finite differences") {
  std::mt19937_64 rng(24);
  std::uniform_real_distribution<double> uni(0.0, 1.0);
  const double h_fd = 1e-6;
  for (int trial = 0; trial < 100; ++trial) {
    const auto p = random_params(rng);
    const double hh = uni(rng) * 0.6;
    const double dd = uni(rng) * (1.0 - hh) * 0.9;
    const State u{hh, dd, uni(rng), uni(rng)};
    const auto J = jacobian_at(u, p);
    for (int col = 0; col < 4; ++col) {
      auto arr_p = u.to_array();
      auto arr_m = u.to_array();
      arr_p[col] += h_fd;
      arr_m[col] -= h_fd;
      const auto fp =
          reaction_rhs_unchecked(State::from_array(arr_p), p).to_array();
      const auto fm =
          reaction_rhs_unchecked(State::from_array(arr_m), p).to_array();
      for (int row = 0; row < 4; ++row) {
        const double fd = (fp[row] - fm[row]) / (2.0 * h_fd);
        CHECK(std::abs(fd - J(row, col)) <=
              1e-6 * std::max(1.0, std::abs(J(row, col))));
      }
    }
  }
}

TEST_CASE("healthy-state stability is equivalent to Theta > 0") {
  std::mt19937_64 rng(25);
  int tested = 0;
  while (tested < 1000) {
    const auto p = random_params(rng);
    const double scale = p.delta * (1.0 + p.sigma) + p.rho;
    if (std::abs(theta(p)) < 1e-6 * scale) continue;  // skip near-marginal
    ++tested;
    const auto ev = Eigen::EigenSolver<Eigen::Matrix4d>(
                        jacobian_at(healthy_equilibrium(p), p))
                        .eigenvalues();
    double max_re = ev(0).real();
    for (int i = 1; i < 4; ++i) max_re = std::max(max_re, ev(i).real());
    CHECK((max_re < -1e-9) == (theta(p) > 0.0));
  }
}

TEST_CASE("regime classification") {
  CHECK(classify_regime(reference_params(30.0)) == Regime::HealthyOnly);
  CHECK(classify_regime(reference_params(50.0)) == Regime::Invasion);
  CHECK_THROWS_AS(classify_regime(reference_params(31.0)),
                  ThresholdDegenerateError);
}

TEST_CASE("equilibrium report invariants and JSON shape") {
  const auto rep = equilibrium_report(reference_params(50.0));
  CHECK(rep.healthy.h == doctest::Approx(0.5));
  CHECK(rep.regime == Regime::Invasion);
  CHECK(rep.theta < 0.0);
  for (const auto& eq : rep.pathological) {
    CHECK(eq.state.h > 0.0);
    CHECK(eq.state.d > 0.0);
    CHECK(eq.state.m > 0.0);
    CHECK(eq.state.c > 0.0);
    CHECK(eq.state.h + eq.state.d < 1.0);
    CHECK(eq.residual < 1e-10);
  }

  const auto j = report_to_json(rep);
  CHECK(j.at("regime") == "Invasion");
  CHECK(j.at("healthy").at("h") == rep.healthy.h);
  CHECK(j.at("pathological").size() == 1);
  CHECK(j.at("pathological")[0].at("stable") == true);
  CHECK(j.at("r_d") == rep.r_d);
}
