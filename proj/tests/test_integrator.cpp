#include <cmath>

#include "cascadelab/integrator.hpp"
#include "cascadelab/toy.hpp"
#include "doctest.h"

using namespace casclab;

namespace {

const RhsFn toy_flat = [](double, const std::vector<double>& y,
                          std::vector<double>& dy) { toy_rhs_flat(y, dy); };

double l2_deviation(const std::vector<double>& a, const std::vector<double>& b) {
  double s = 0.0;
  for (size_t i = 0; i < a.size(); ++i) s += (a[i] - b[i]) * (a[i] - b[i]);
  return std::sqrt(s);
}

}  // namespace

TEST_CASE("periodic orbit integrates to the exact endpoint") {
  const ExactOrbit orbit{OrbitKind::PeriodicTj, 3, 0.0, 6};
  const auto y0 = flatten(exact_orbit_point(orbit, 0.0));
  IntegratorConfig cfg;
  const Trajectory traj = integrate(toy_flat, y0, 0.0, M_PI, cfg);
  const auto yexp = flatten(exact_orbit_point(orbit, M_PI));
  CHECK(l2_deviation(traj.final_state(), yexp) < 1e-9);
  // b_3(pi) = -1 exactly.
  CHECK(traj.final_state()[4] == doctest::Approx(-1.0).epsilon(1e-9));
  CHECK(std::abs(traj.final_state()[5]) < 1e-9);
}

TEST_CASE("zero vector field keeps the state constant") {
  const RhsFn zero = [](double, const std::vector<double>& y,
                        std::vector<double>& dy) {
    dy.assign(y.size(), 0.0);
  };
  const std::vector<double> y0{1.0, -2.0, 0.5};
  IntegratorConfig cfg;
  const Trajectory traj = integrate(zero, y0, 0.0, 5.0, cfg);
  CHECK(l2_deviation(traj.final_state(), y0) == 0.0);
  CHECK(l2_deviation(traj.eval(2.7), y0) == 0.0);
}

TEST_CASE("heteroclinic segment matches the closed form") {
  const ExactOrbit orbit{OrbitKind::HeteroclinicPlus, 3, 0.0, 6};
  const auto y0 = flatten(exact_orbit_point(orbit, -2.0));
  IntegratorConfig cfg;
  const Trajectory traj = integrate(toy_flat, y0, -2.0, 2.0, cfg);
  const auto yexp = flatten(exact_orbit_point(orbit, 2.0));
  CHECK(l2_deviation(traj.final_state(), yexp) < 1e-6);
}

TEST_CASE("dense output matches closed form inside the interval") {
  const ExactOrbit orbit{OrbitKind::PeriodicTj, 2, 0.0, 5};
  const auto y0 = flatten(exact_orbit_point(orbit, 0.0));
  IntegratorConfig cfg;
  const Trajectory traj = integrate(toy_flat, y0, 0.0, 3.0, cfg);
  for (double t : {0.1, 0.77, 1.5, 2.9}) {
    const auto yt = traj.eval(t);
    const auto yexp = flatten(exact_orbit_point(orbit, t));
    CHECK(l2_deviation(yt, yexp) < 1e-8);
  }
}

TEST_CASE("tolerance controls the global error monotonically") {
  const ExactOrbit orbit{OrbitKind::PeriodicTj, 3, 0.0, 6};
  const auto y0 = flatten(exact_orbit_point(orbit, 0.0));
  const auto yexp = flatten(exact_orbit_point(orbit, 10.0));
  double prev = 1e9;
  for (double tol : {1e-6, 1e-8, 1e-10}) {
    IntegratorConfig cfg;
    cfg.rel_tol = tol;
    cfg.abs_tol = tol * 1e-2;
    const Trajectory traj = integrate(toy_flat, y0, 0.0, 10.0, cfg);
    const double err = l2_deviation(traj.final_state(), yexp);
    CHECK(err < prev);
    prev = err;
  }
}

TEST_CASE("forward then backward integration returns to start") {
  ToyState s;
  s.modes = {cplx{0.9, 0.1}, cplx{0.2, -0.1}, cplx{0.1, 0.3}, cplx{0.0, 0.05},
             cplx{0.02, 0.0}};
  const auto y0 = flatten(s);
  IntegratorConfig cfg;
  const Trajectory fwd = integrate(toy_flat, y0, 0.0, 4.0, cfg);
  const Trajectory bwd = integrate(toy_flat, fwd.final_state(), 4.0, 0.0, cfg);
  CHECK(l2_deviation(bwd.final_state(), y0) < 10.0 * 4.0 * 1e-9);
}

TEST_CASE("section crossing time matches the heteroclinic closed form") {
  // p2 along gamma_j^+ equals |b_{j+1}| = (1+e^{-2 sqrt3 (t-t0)})^{-1/2}.
  // Starting where p2 = 0.01 and flowing to level sigma = 0.2, the analytic
  // crossing time is (ln(1/p0^2-1) - ln(1/sigma^2-1)) / (2 sqrt3).
  const double p0 = 0.01, sigma = 0.2;
  const double t_start = -std::log(1.0 / (p0 * p0) - 1.0) / (2.0 * kSqrt3);
  const double t_cross = -std::log(1.0 / (sigma * sigma) - 1.0) / (2.0 * kSqrt3);
  const double expected = t_cross - t_start;

  const ExactOrbit orbit{OrbitKind::HeteroclinicPlus, 3, 0.0, 6};
  const auto y0 = flatten(exact_orbit_point(orbit, t_start));
  SectionEvent ev;
  ev.coordinate = [](double, const std::vector<double>& y) {
    return std::hypot(y[6], y[7]);  // |b_4|
  };
  ev.level = sigma;
  ev.direction = EventDirection::Increasing;
  IntegratorConfig cfg;
  const SectionHit hit = integrate_to_section(toy_flat, y0, 0.0, ev, cfg);
  CHECK(std::abs(hit.t - expected) < 1e-4);
  CHECK(std::abs(std::hypot(hit.state[6], hit.state[7]) - sigma) < 1e-10);
}

TEST_CASE("event already satisfied returns immediately") {
  const std::vector<double> y0{0.3, 0.4};
  SectionEvent ev;
  ev.coordinate = [](double, const std::vector<double>& y) {
    return std::hypot(y[0], y[1]);
  };
  ev.level = 0.5;
  ev.direction = EventDirection::Either;
  IntegratorConfig cfg;
  const SectionHit hit = integrate_to_section(toy_flat, y0, 1.5, ev, cfg);
  CHECK(hit.t == 1.5);
  CHECK(hit.state == y0);
}

TEST_CASE("wrong direction gives NoCrossing") {
  // Decaying scalar y' = -y can never cross upwards through 0.5 from 0.4.
  const RhsFn decay = [](double, const std::vector<double>& y,
                         std::vector<double>& dy) {
    dy = {-y[0]};
  };
  SectionEvent ev;
  ev.coordinate = [](double, const std::vector<double>& y) { return y[0]; };
  ev.level = 0.5;
  ev.direction = EventDirection::Increasing;
  IntegratorConfig cfg;
  cfg.max_time = 20.0;
  CHECK_THROWS_AS(integrate_to_section(decay, {0.4}, 0.0, ev, cfg), NoCrossing);
}

TEST_CASE("event idempotence on the returned section point") {
  const ExactOrbit orbit{OrbitKind::HeteroclinicPlus, 3, 0.0, 6};
  const auto y0 = flatten(exact_orbit_point(orbit, -1.5));
  SectionEvent ev;
  ev.coordinate = [](double, const std::vector<double>& y) {
    return std::hypot(y[6], y[7]);
  };
  ev.level = 0.3;
  ev.direction = EventDirection::Increasing;
  IntegratorConfig cfg;
  const SectionHit hit = integrate_to_section(toy_flat, y0, 0.0, ev, cfg);
  SectionEvent again = ev;
  again.direction = EventDirection::Either;
  const SectionHit hit2 =
      integrate_to_section(toy_flat, hit.state, hit.t, again, cfg);
  CHECK(hit2.t == hit.t);
}

TEST_CASE("span beyond max_time is rejected") {
  IntegratorConfig cfg;
  cfg.max_time = 1.0;
  CHECK_THROWS_AS(integrate(toy_flat, std::vector<double>(12, 0.1), 0.0, 5.0, cfg),
                  BudgetExceeded);
}

TEST_CASE("conservation drift along a generic trajectory") {
  ToyState s;
  s.modes = {cplx{0.8, 0.0}, cplx{0.4, 0.2}, cplx{0.3, -0.2}, cplx{0.1, 0.1},
             cplx{0.05, 0.0}, cplx{0.0, 0.1}};
  const double h0 = toy_hamiltonian(s);
  const double m0 = toy_mass(s);
  IntegratorConfig cfg;
  const Trajectory traj = integrate(toy_flat, flatten(s), 0.0, 20.0, cfg);
  const ToyState end = unflatten(traj.final_state());
  CHECK(std::abs(toy_hamiltonian(end) - h0) < 1e-8);
  CHECK(std::abs(toy_mass(end) - m0) < 1e-8);
}

TEST_CASE("invariant plane L_j stays invariant") {
  ToyState s;
  s.modes.assign(6, cplx{0.0, 0.0});
  s.modes[2] = cplx{0.6, 0.1};
  s.modes[3] = cplx{-0.2, 0.7};
  IntegratorConfig cfg;
  const Trajectory traj = integrate(toy_flat, flatten(s), 0.0, 12.0, cfg);
  for (double t : {3.0, 7.5, 12.0}) {
    const ToyState st = unflatten(traj.eval(t));
    for (int k = 0; k < 6; ++k) {
      if (k == 2 || k == 3) continue;
      CHECK(std::abs(st.modes[k]) < 1e-10);
    }
  }
}

TEST_CASE("phase lock on L_j at mass 1") {
  // On L_j with M = 1 the relative phase theta_j - theta_{j+1} = pi/3 is
  // preserved; gamma^+ at any time provides such a point.
  const ExactOrbit orbit{OrbitKind::HeteroclinicPlus, 2, 0.0, 5};
  const ToyState s0 = exact_orbit_point(orbit, -0.4);
  const double rel0 = std::arg(s0.modes[1] / s0.modes[2]);
  IntegratorConfig cfg;
  const Trajectory traj = integrate(toy_flat, flatten(s0), 0.0, 1.5, cfg);
  const ToyState s1 = unflatten(traj.final_state());
  const double rel1 = std::arg(s1.modes[1] / s1.modes[2]);
  CHECK(std::abs(rel1 - rel0) < 1e-9);
}
