#include <cmath>
#include <complex>

#include "cascadelab/cascade.hpp"
#include "doctest.h"

using namespace casclab;

namespace {

CascadeParams make_params(int N, double delta) {
  CascadeParams p;
  p.toy.N = N;
  p.toy.delta = delta;
  p.toy.sigma = 0.15;
  p.toy.nu = 0.25;
  return p;
}

const RhsFn kRhs = [](double, const std::vector<double>& y,
                      std::vector<double>& dy) { toy_rhs_flat(y, dy); };

}  // namespace

TEST_CASE("validate rejects overlapping saddle neighborhoods") {
  CascadeParams p = make_params(6, 0.9);  // delta^{2nu} = 0.95 >= sigma
  CHECK_THROWS_AS(p.validate(), PreconditionViolation);

  CascadeParams q = make_params(6, 1e-3);
  q.shoot_tolerance = 1.0;  // must be below the corridor width delta^nu
  CHECK_THROWS_AS(q.validate(), PreconditionViolation);

  CHECK_NOTHROW(make_params(6, 1e-3).validate());
}

TEST_CASE("diagnostics on a constant T_3 orbit: one interval, no transitions") {
  CascadeParams p = make_params(6, 1e-3);
  ExactOrbit orb{OrbitKind::PeriodicTj, 3, 0.0, 6};
  Trajectory traj =
      integrate(kRhs, flatten(exact_orbit_point(orb, 0.0)), 0.0, 5.0, p.integ);
  CascadeReport rep = cascade_diagnostics(traj, p);
  CHECK(rep.transition_times.empty());
  REQUIRE(rep.mode_table.size() == 1);
  CHECK(rep.mode_table[0].saddle == 3);
  CHECK(rep.mode_table[0].off_corridor_ok);
  CHECK(rep.h_drift < 1e-9);
  CHECK(rep.m_drift < 1e-9);
}

TEST_CASE("diagnostics on the exact heteroclinic: single argmax switch") {
  CascadeParams p = make_params(6, 1e-3);
  ExactOrbit orb{OrbitKind::HeteroclinicPlus, 3, 0.0, 6};
  Trajectory traj = integrate(kRhs, flatten(exact_orbit_point(orb, -4.0)),
                              -4.0, 4.0, p.integ);
  CascadeReport rep = cascade_diagnostics(traj, p);
  REQUIRE(rep.transition_times.size() == 1);
  CHECK(std::abs(rep.transition_times[0]) < 0.1);  // |b_3| = |b_4| at t = 0
  REQUIRE(rep.mode_table.size() == 2);
  CHECK(rep.mode_table[0].saddle == 3);
  CHECK(rep.mode_table[1].saddle == 4);
  CHECK(rep.h_drift < 1e-9);
  CHECK(rep.m_drift < 1e-9);
}

TEST_CASE("N = 5 cascade: single tuned leg reaches T_4") {
  CascadeParams p = make_params(5, 1e-3);
  CascadeResult res = search_cascade_orbit(p);
  const double corridor = std::pow(p.toy.delta, p.toy.nu);

  CHECK(res.report.start_mag > 1.0 - corridor);
  CHECK(res.report.endpoint_mag > 1.0 - corridor);
  REQUIRE(res.report.transition_times.size() == 1);
  CHECK(res.report.transition_times[0] > 0.0);
  CHECK(res.report.transition_times[0] < res.report.total_time);
  CHECK(res.report.h_drift < 1e-6);
  CHECK(res.report.m_drift < 1e-6);
  CHECK(res.report.time_constant > 0.0);

  // The search must not have touched mode N: b_5 stays identically zero.
  std::vector<double> y = res.trajectory.eval(res.report.total_time);
  CHECK(std::hypot(y[8], y[9]) < 1e-12);
}

TEST_CASE("N = 6 cascade: monotone saddle visitation and corridor bounds") {
  CascadeParams p = make_params(6, 1e-3);
  CascadeResult res = search_cascade_orbit(p);
  const double corridor = std::pow(p.toy.delta, p.toy.nu);

  REQUIRE(res.report.transition_times.size() == 2);
  CHECK(res.report.transition_times[0] < res.report.transition_times[1]);
  CHECK(res.report.transition_times[1] < res.report.total_time);
  CHECK(res.report.start_mag > 1.0 - corridor);
  CHECK(res.report.endpoint_mag > 1.0 - corridor);
  CHECK(res.report.h_drift < 1e-6);
  CHECK(res.report.m_drift < 1e-6);

  // Saddle indices visited in order 3, 4, 5 with no revisits.
  REQUIRE(res.report.mode_table.size() >= 2);
  int prev = 0;
  for (const ModeTableRow& row : res.report.mode_table) {
    CHECK(row.saddle > prev);
    prev = row.saddle;
  }
  CHECK(res.report.mode_table.front().saddle == 3);
  CHECK(res.report.mode_table.back().saddle == 5);
  for (bool ok : res.report.success) CHECK(ok);

  // Initial condition sits in the saddle-3 corridor.
  CHECK(std::abs(std::abs(res.initial.modes[2]) - 1.0) < corridor);
  CHECK(std::abs(res.initial.modes[1]) < corridor);
}
