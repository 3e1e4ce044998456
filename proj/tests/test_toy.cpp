#include <cmath>
#include <complex>

#include "cascadelab/toy.hpp"
#include "doctest.h"

using namespace casclab;

namespace {

ToyState single_mode(int N, int j, cplx value) {
  ToyState s;
  s.modes.assign(N, cplx{0.0, 0.0});
  s.modes[j - 1] = value;
  return s;
}

// Central finite difference of the closed-form orbit, used as an independent
// oracle for the vector field at exact orbit points.
std::vector<cplx> orbit_derivative_fd(const ExactOrbit& orbit, double t) {
  const double dt = 1e-6;
  const ToyState p = exact_orbit_point(orbit, t + dt);
  const ToyState m = exact_orbit_point(orbit, t - dt);
  std::vector<cplx> d(p.modes.size());
  for (size_t i = 0; i < d.size(); ++i)
    d[i] = (p.modes[i] - m.modes[i]) / (2.0 * dt);
  return d;
}

}  // namespace

TEST_CASE("toy_rhs on a single active mode") {
  const ToyState s = single_mode(6, 3, cplx{1.0, 0.0});
  const auto rate = toy_rhs(s);
  CHECK(rate[2] == cplx{0.0, -1.0});
  for (int j = 0; j < 6; ++j) {
    if (j == 2) continue;
    CHECK(std::abs(rate[j]) == 0.0);
  }
}

TEST_CASE("toy_rhs zero state") {
  ToyState s;
  s.modes.assign(7, cplx{0.0, 0.0});
  for (const cplx& r : toy_rhs(s)) CHECK(std::abs(r) == 0.0);
}

TEST_CASE("periodic orbit satisfies the ODE") {
  for (double t : {0.0, 0.7, 2.5, -1.3}) {
    const ExactOrbit orbit{OrbitKind::PeriodicTj, 4, 0.0, 6};
    const ToyState s = exact_orbit_point(orbit, t);
    const auto rate = toy_rhs(s);
    const cplx expected = cplx{0.0, -1.0} * std::polar(1.0, -t);
    CHECK(std::abs(rate[3] - expected) < 1e-14);
  }
}

TEST_CASE("toy_hamiltonian reference values") {
  SUBCASE("single unit mode gives 1/4 for any phase") {
    for (double th : {0.0, 1.1, -2.0}) {
      const ToyState s = single_mode(6, 2, std::polar(1.0, th));
      CHECK(toy_hamiltonian(s) == doctest::Approx(0.25).epsilon(1e-14));
    }
  }
  SUBCASE("zero state") {
    ToyState s;
    s.modes.assign(5, cplx{0.0, 0.0});
    CHECK(toy_hamiltonian(s) == 0.0);
  }
  SUBCASE("heteroclinic midpoint") {
    // b_j = omega/sqrt(2), b_{j+1} = 1/sqrt(2) (relative phase omega^2):
    // quartic terms 2*(1/4)^2/4... evaluate against the frozen value 1/4.
    const ExactOrbit orbit{OrbitKind::HeteroclinicPlus, 3, 0.0, 6};
    const ToyState s = exact_orbit_point(orbit, 0.0);
    CHECK(std::abs(s.modes[2]) == doctest::Approx(1.0 / std::sqrt(2.0)));
    CHECK(std::abs(s.modes[3]) == doctest::Approx(1.0 / std::sqrt(2.0)));
    CHECK(toy_hamiltonian(s) == doctest::Approx(0.25).epsilon(1e-13));
  }
}

TEST_CASE("toy_mass reference values") {
  CHECK(toy_mass(single_mode(6, 3, cplx{1.0, 0.0})) == 1.0);
  ToyState s;
  s.modes.assign(8, cplx{1.0 / std::sqrt(8.0), 0.0});
  CHECK(toy_mass(s) == doctest::Approx(1.0).epsilon(1e-14));
  // Heteroclinic identity 1/(1+e^{2sqrt3 t}) + 1/(1+e^{-2sqrt3 t}) = 1.
  for (double t : {-2.0, -0.5, 0.0, 1.7}) {
    const ExactOrbit orbit{OrbitKind::HeteroclinicPlus, 2, 0.4, 6};
    CHECK(toy_mass(exact_orbit_point(orbit, t)) ==
          doctest::Approx(1.0).epsilon(1e-13));
  }
}

TEST_CASE("exact_orbit_point reference values") {
  const ExactOrbit per{OrbitKind::PeriodicTj, 3, 0.0, 6};
  const ToyState s = exact_orbit_point(per, M_PI);
  CHECK(std::abs(s.modes[2] - cplx{-1.0, 0.0}) < 1e-15);

  const ExactOrbit het{OrbitKind::HeteroclinicPlus, 3, 0.0, 6};
  const ToyState h0 = exact_orbit_point(het, 0.0);
  CHECK(std::abs(h0.modes[2]) == doctest::Approx(1.0 / std::sqrt(2.0)));
  // Relative phase of the two active modes is omega^2.
  const cplx ratio = h0.modes[3] / h0.modes[2];
  CHECK(std::abs(ratio - kOmegaSq / std::abs(kOmegaSq)) < 1e-13);

  const ToyState hinf = exact_orbit_point(het, 30.0);
  CHECK(std::abs(hinf.modes[3]) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(std::abs(hinf.modes[2]) < 1e-12);
}

TEST_CASE("heteroclinic closed forms satisfy the ODE (both branches)") {
  for (OrbitKind kind :
       {OrbitKind::HeteroclinicPlus, OrbitKind::HeteroclinicMinus}) {
    for (double t : {-2.0, -0.6, 0.0, 0.9, 2.4}) {
      const ExactOrbit orbit{kind, 3, 0.3, 6};
      const ToyState s = exact_orbit_point(orbit, t);
      const auto rate = toy_rhs(s);
      const auto fd = orbit_derivative_fd(orbit, t);
      for (size_t i = 0; i < rate.size(); ++i)
        CHECK(std::abs(rate[i] - fd[i]) < 1e-8);
    }
  }
}

TEST_CASE("gauge symmetry of the vector field") {
  ToyState s;
  s.modes = {cplx{0.3, 0.1},  cplx{-0.2, 0.4}, cplx{0.5, -0.3},
             cplx{0.1, 0.05}, cplx{0.0, 0.2},  cplx{-0.1, -0.1}};
  const cplx phase = std::polar(1.0, 0.83);
  ToyState rotated = s;
  for (cplx& b : rotated.modes) b *= phase;
  const auto r1 = toy_rhs(s);
  const auto r2 = toy_rhs(rotated);
  for (size_t i = 0; i < r1.size(); ++i)
    CHECK(std::abs(r2[i] - phase * r1[i]) < 1e-14);
}

TEST_CASE("flatten round trip and flat rhs agreement") {
  ToyState s;
  s.modes = {cplx{0.3, 0.1}, cplx{-0.2, 0.4}, cplx{0.5, -0.3}, cplx{0.1, 0.0},
             cplx{0.0, 0.2}};
  const auto y = flatten(s);
  const ToyState back = unflatten(y);
  for (size_t i = 0; i < s.modes.size(); ++i)
    CHECK(s.modes[i] == back.modes[i]);

  std::vector<double> dy;
  toy_rhs_flat(y, dy);
  const auto rate = toy_rhs(s);
  for (size_t i = 0; i < rate.size(); ++i) {
    CHECK(dy[2 * i] == doctest::Approx(rate[i].real()).epsilon(1e-15));
    CHECK(dy[2 * i + 1] == doctest::Approx(rate[i].imag()).epsilon(1e-15));
  }
}

TEST_CASE("ToyParams validation") {
  ToyParams ok;
  CHECK_NOTHROW(ok.validate());
  CHECK(ok.gamma() == doctest::Approx(std::log(1e3) / 6.0));
  ToyParams bad = ok;
  bad.N = 4;
  CHECK_THROWS_AS(bad.validate(), PreconditionViolation);
  bad = ok;
  bad.delta = 0.5;  // not below sigma
  CHECK_THROWS_AS(bad.validate(), PreconditionViolation);
}
