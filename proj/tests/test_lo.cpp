#include "deaorient/lo.hpp"
#include "deaorient/oracle.hpp"
#include "deaorient/projection.hpp"
#include "expected.hpp"

#include <doctest.h>

using namespace deaorient;
using fixtures::activity;
using fixtures::orient;

TEST_CASE("reference linear-oriented rows") {
  const auto tech = fixtures::five_dmu();
  for (const auto& table : expected::tables()) {
    if (table.model != Model::Lo) continue;
    for (const auto& row : table.rows) {
      CAPTURE(table.name);
      CAPTURE(row.dmu);
      const auto e = solve_lo(tech, tech.activity(row.dmu), table.d);
      CHECK(expected::row_gap(e, row) <= 1e-3);
    }
  }
}

TEST_CASE("B under the three orientations") {
  const auto tech = fixtures::five_dmu();
  const auto b = tech.activity(1);

  const auto e1 = solve_lo(tech, b, fixtures::ones(2, 2));
  CHECK(e1.beta == doctest::Approx(1.0 / 3.0).epsilon(1e-12));
  CHECK(e1.rho == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(e1.projection.x[0] == doctest::Approx(2.0 / 3.0));
  CHECK(e1.projection.y[1] == doctest::Approx(8.0 / 3.0));

  const auto e2 = solve_lo(tech, b, orient({1, 1}, {0.5, 0.5}));
  CHECK(e2.beta == doctest::Approx(0.4));
  CHECK(e2.target.x[1] == doctest::Approx(1.2));
  CHECK(e2.target.y[1] == doctest::Approx(2.4));

  const auto e3 = solve_lo(tech, b, orient({1, 0.5}, {1, 0.5}));
  CHECK(e3.beta == doctest::Approx(0.4));
  CHECK(e3.rho == doctest::Approx(0.7 / 1.3));
  CHECK(e3.target.x[1] == doctest::Approx(1.6));
  CHECK(e3.target.y[0] == doctest::Approx(1.4));
}

TEST_CASE("the efficient DMU is its own target") {
  const auto tech = fixtures::five_dmu();
  fixtures::Random rnd(31);
  for (int trial = 0; trial < 20; ++trial) {
    const auto e = solve_lo(tech, tech.activity(0), rnd.orientation(2, 2));
    CHECK(e.beta == 0.0);
    CHECK(e.rho == 1.0);
    CHECK(e.target.x == tech.activity(0).x);
    CHECK(e.target.y == tech.activity(0).y);
  }
}

TEST_CASE("external evaluation") {
  const auto tech = fixtures::five_dmu();
  const auto d = fixtures::ones(2, 2);

  SUBCASE("a reference DMU matches solve_lo") {
    const auto a = evaluate_lo_external(tech, tech.activity(1), d);
    const auto b = solve_lo(tech, tech.activity(1), d);
    CHECK(a.beta == b.beta);
    CHECK(a.target.x == b.target.x);
    CHECK_FALSE(a.outside_technology);
  }
  SUBCASE("outside the technology") {
    const auto a = activity({0.5, 0.5}, {2.5, 2.5});
    CHECK_FALSE(oracle::fm_feasible(membership_lp(tech, a)));
    const auto e = evaluate_lo_external(tech, a, d);
    CHECK(e.outside_technology);
    CHECK(e.beta == 0.0);
    CHECK(e.rho == 1.0);
    CHECK(e.target.y == a.y);
    CHECK_THROWS_AS(solve_lo(tech, a, d), SolverError);
  }
  SUBCASE("a dominated activity scores no better") {
    const auto worse = evaluate_lo_external(tech, activity({1, 2}, {0.9, 1.8}), d);
    CHECK(worse.beta >= solve_lo(tech, tech.activity(1), d).beta);
    CHECK(worse.beta == doctest::Approx(oracle::brute_beta(tech, activity({1, 2}, {0.9, 1.8}), d, Model::Lo)));
  }
}

TEST_CASE("unbounded output expansion is a data error") {
  // A DMU that produces output from nothing makes output expansion unbounded under CRS.
  Matrix X(1, 2);
  Matrix Y(1, 2);
  X << 1, 0;
  Y << 1, 1;
  const Technology tech(X, Y);
  CHECK_THROWS_AS(solve_lo(tech, tech.activity(0), orient({0}, {1})), DataError);
}

TEST_CASE("structural properties on random instances") {
  fixtures::Random rnd(37);
  for (int trial = 0; trial < 150; ++trial) {
    const auto tech = rnd.technology(6, 3, rnd.rts());
    const Index j = rnd.integer(0, tech.num_dmus() - 1);
    const auto d = rnd.orientation(tech.num_inputs(), tech.num_outputs());
    const auto subject = tech.activity(j);
    const auto e = solve_lo(tech, subject, d);
    CAPTURE(trial);

    if (d.d_minus.maxCoeff() > 0.0) CHECK(e.beta * d.d_minus.maxCoeff() < 1.0);
    CHECK((e.tau_minus.array() == (e.beta * d.d_minus).array()).all());
    CHECK((e.tau_plus.array() == (e.beta * d.d_plus).array()).all());
    CHECK((e.theta.array() == 1.0 - e.tau_minus.array()).all());
    CHECK((e.phi.array() == 1.0 + e.tau_plus.array()).all());
    CHECK(dominates(e.projection, e.target, 1e-9));
    CHECK((e.s_minus.array() >= 0.0).all());
    CHECK((e.s_plus.array() >= 0.0).all());
    CHECK((e.beta == 0.0) == (e.rho == 1.0));
    CHECK(is_weakly_efficient(tech, e.target));

    // Proportional orientations: same target, beta scaled inversely.
    const double c = rnd.uniform(0.2, 5.0);
    const auto scaled = solve_lo(tech, subject, {c * d.d_minus, c * d.d_plus});
    CHECK(scaled.beta == doctest::Approx(e.beta / c).epsilon(1e-9));
    CHECK((scaled.target.x - e.target.x).cwiseAbs().maxCoeff() <= 1e-9);
    CHECK((scaled.target.y - e.target.y).cwiseAbs().maxCoeff() <= 1e-9);
    CHECK(scaled.rho == doctest::Approx(e.rho).epsilon(1e-9));
  }
}

TEST_CASE("radial special cases reproduce the radial program") {
  fixtures::Random rnd(41);
  for (int trial = 0; trial < 60; ++trial) {
    const auto tech = rnd.technology(6, 3, rnd.coin() ? ReturnsToScale::crs() : ReturnsToScale::vrs());
    const Index m = tech.num_inputs();
    const Index s = tech.num_outputs();
    const auto subject = tech.activity(rnd.integer(0, tech.num_dmus() - 1));
    const double radial = oracle::radial_input_efficiency(tech, subject);

    const auto input = solve_lo(tech, subject, {Vector::Ones(m), Vector::Zero(s)});
    CHECK(input.theta[0] == doctest::Approx(radial).epsilon(1e-9));
    CHECK(input.rho == doctest::Approx(radial).epsilon(1e-9));

    if (tech.rts.kind == RtsKind::Crs) {
      // Under CRS the output expansion factor is the reciprocal.
      const auto output = solve_lo(tech, subject, {Vector::Zero(m), Vector::Ones(s)});
      CHECK(output.phi[0] == doctest::Approx(1.0 / radial).epsilon(1e-9));
    }
  }
}

TEST_CASE("beta gradient matches finite differences") {
  fixtures::Random rnd(43);
  int compared = 0;
  for (int trial = 0; trial < 40; ++trial) {
    const auto tech = rnd.technology(5, 2);
    const auto d = rnd.orientation(tech.num_inputs(), tech.num_outputs(), 0.0);
    Activity a = tech.activity(rnd.integer(0, tech.num_dmus() - 1));
    a.x *= 1.3;
    a.y *= 0.8;
    EvalOptions opts;
    opts.second_stage = false;
    const auto e = evaluate_lo_external(tech, a, d, opts);
    REQUIRE(e.beta_gradient.size() == a.num_inputs() + a.num_outputs());
    const double h = 1e-6;
    for (Index k = 0; k < e.beta_gradient.size(); ++k) {
      Activity up = a;
      Activity down = a;
      double& u = k < a.num_inputs() ? up.x[k] : up.y[k - a.num_inputs()];
      double& w = k < a.num_inputs() ? down.x[k] : down.y[k - a.num_inputs()];
      const double base = u;
      u = base + h;
      w = base - h;
      const double fwd = (evaluate_lo_external(tech, up, d, opts).beta - e.beta) / h;
      const double bwd = (e.beta - evaluate_lo_external(tech, down, d, opts).beta) / h;
      CAPTURE(trial);
      CAPTURE(k);
      // At a kink the dual value is one of the one-sided slopes or between them.
      CHECK(e.beta_gradient[k] >= std::min(fwd, bwd) - 1e-5);
      CHECK(e.beta_gradient[k] <= std::max(fwd, bwd) + 1e-5);
      if (k < a.num_inputs()) CHECK(e.beta_gradient[k] >= -1e-12);
      if (k >= a.num_inputs()) CHECK(e.beta_gradient[k] <= 1e-12);
      ++compared;
    }
  }
  CHECK(compared > 50);
}
