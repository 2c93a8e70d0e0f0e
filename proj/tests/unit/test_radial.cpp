#include <doctest.h>

#include <cmath>

#include <spinform/solutions.hpp>
#include <spinform/suites.hpp>

using namespace spinform;

TEST_CASE("constraint completion lands on C = 0") {
  RadialParams p;
  for (double r0 : {-1.0, -0.3, 0.4}) {
    RadialInit init;
    init.r0 = r0;
    init.F0 = 0.2;
    const RadialState s = radial_initial(p, init);
    CHECK(std::abs(radial_constraint(s, p)) < 1e-12);
  }
}

TEST_CASE("integration drift and closed form for lambda < 0") {
  OdeOptions o;
  const OdeRun run = run_ode(o);
  CHECK(run.trajectory.max_abs_C <= 1e-8);
  REQUIRE(run.closed_form_error);
  CHECK(*run.closed_form_error <= 1e-6);
  CHECK_FALSE(run.trajectory.truncated);
  CHECK(run.trajectory.states.size() == 2401);
}

TEST_CASE("halving the step divides the error by about 16") {
  OdeOptions o;
  const double order = observed_order(o, 0.1);
  CHECK(std::abs(order - 4.0) < 0.2);
}

TEST_CASE("closed form satisfies the ODE system directly") {
  RadialParams p;
  p.m1 = 0.3;
  const auto cf = radial_closed_form(p, -1.0, 0.0);
  for (double r : {-0.9, -0.2, 0.5, 1.1}) {
    RadialState s;
    s.r = r;
    s.K = cf.K(r);
    s.Kp = cf.Kp(r);
    s.F = cf.F(r);
    s.Fp = cf.Fp(r);
    s.rho = cf.rho(r);
    s.Hbar = cf.Hbar(r);
    s.Hbarp = p.m1 * std::exp(-s.K);
    CHECK(std::abs(radial_constraint(s, p)) < 1e-10);
    // second derivatives against central differences of the closed form
    const RadialDerivs d = radial_rhs(s, p);
    const double h = 1e-5;
    CHECK(std::abs(d.Kpp - (cf.Kp(r + h) - cf.Kp(r - h)) / (2 * h)) < 1e-6);
    CHECK(std::abs(d.Fpp - (cf.Fp(r + h) - cf.Fp(r - h)) / (2 * h)) < 1e-6);
  }
}

TEST_CASE("degenerate branch lambda = 0, e = 0 keeps F' = 0") {
  RadialParams p;
  p.lambda = 0;
  p.e = 0;
  RadialInit init;
  init.r0 = 0;
  const RadialState s0 = radial_initial(p, init);
  CHECK(s0.Fp == 0.0);
  const auto tr = radial_integrate(s0, p, 1.0, 1e-2);
  for (const auto& s : tr.states) CHECK(std::abs(s.Fp) < 1e-14);
}

TEST_CASE("unsolvable initial data is rejected") {
  RadialParams p;
  p.c = 0;  // E = 3 c^2 |lambda| = 0
  RadialInit init;
  CHECK_THROWS_AS(radial_initial(p, init), RadialError);
  RadialParams q;
  RadialInit far;
  far.r0 = 2.0;  // outside |r| < pi / 2k
  CHECK_THROWS_AS(radial_initial(q, far), RadialError);
  RadialParams pos;
  pos.lambda = 0.5;
  RadialInit bad;
  bad.Kp0 = 0.0;
  bad.Fp0 = 3.0;  // violates C = 0
  CHECK_THROWS_AS(radial_initial(pos, bad), RadialError);
}

TEST_CASE("integration is bit-for-bit reproducible") {
  OdeOptions o;
  o.step = 1e-2;
  const OdeRun a = run_ode(o), b = run_ode(o);
  REQUIRE(a.trajectory.states.size() == b.trajectory.states.size());
  for (std::size_t i = 0; i < a.trajectory.states.size(); ++i) {
    CHECK(a.trajectory.states[i].K == b.trajectory.states[i].K);
    CHECK(a.trajectory.states[i].F == b.trajectory.states[i].F);
  }
}
