#include <cmath>
#include <random>
#include <vector>

#include "cascadelab/galerkin.hpp"
#include "cascadelab/integrator.hpp"
#include "cascadelab/lattice.hpp"
#include "cascadelab/toy.hpp"
#include "doctest.h"

using namespace casclab;

namespace {

const LambdaSet& built_lambda() {
  static LambdaSet L = build_lambda(3, 4, 10000, 11);
  return L;
}

RhsFn toy_fn() {
  return [](double, const std::vector<double>& y, std::vector<double>& dy) {
    toy_rhs_flat(y, dy);
  };
}

// Two-generation set on the unit square, fully linked by hand.
LambdaSet unit_square_lambda() {
  LambdaSet L;
  L.points = {{0, 0}, {1, 1}, {0, 1}, {1, 0}};
  L.generations = {{0, 1}, {2, 3}};
  L.links.assign(4, {});
  L.links[0].spouse = 1;
  L.links[1].spouse = 0;
  L.links[0].children = {2, 3};
  L.links[1].children = {2, 3};
  L.links[2].sibling = 3;
  L.links[3].sibling = 2;
  L.links[2].parents = {0, 1};
  L.links[3].parents = {0, 1};
  L.families.push_back({{0, 2, 1, 3}, 1});
  return L;
}

}  // namespace

TEST_CASE("resonance partners on the unit square") {
  std::vector<LatticePoint> support{{0, 0}, {1, 0}, {1, 1}, {0, 1}};
  const LatticePoint n{0, 1};
  auto triples = resonance_partners(n, support);
  int proper = 0;
  bool has_rectangle = false, has_self = false;
  for (const auto& t : triples) {
    CHECK(t.n1[0] - t.n2[0] + t.n3[0] == n[0]);
    CHECK(t.n1[1] - t.n2[1] + t.n3[1] == n[1]);
    CHECK(norm2(t.n1) - norm2(t.n2) + norm2(t.n3) == norm2(n));
    if (t.proper) ++proper;
    if (t.n1 == LatticePoint{0, 0} && t.n2 == LatticePoint{1, 0} &&
        t.n3 == LatticePoint{1, 1}) {
      has_rectangle = true;
      CHECK(t.proper);
    }
    if (t.n1 == n && t.n2 == n && t.n3 == n) has_self = true;
  }
  CHECK(has_rectangle);
  CHECK(has_self);
  CHECK(proper == 2);  // the rectangle read in both orientations
}

TEST_CASE("resonance partners of an isolated mode") {
  const LatticePoint n{5, -2};
  auto triples = resonance_partners(n, {n});
  REQUIRE(triples.size() == 1);
  CHECK(triples[0].n1 == n);
  CHECK(triples[0].n2 == n);
  CHECK(triples[0].n3 == n);
  CHECK(!triples[0].proper);  // A(n) is empty, A0(n) keeps the self triple
}

TEST_CASE("convolution closure of a segment") {
  auto cl = convolution_closure({{0, 0}, {1, 0}});
  REQUIRE(cl.size() == 4);
  CHECK(cl[0] == LatticePoint{-1, 0});
  CHECK(cl[3] == LatticePoint{2, 0});
}

TEST_CASE("full rhs on a single mode") {
  GalerkinState a = make_state({{2, 1}});
  SUBCASE("zero state has zero rate") {
    auto dy = full_rhs(a);
    CHECK(std::abs(dy[0]) == 0.0);
  }
  SUBCASE("i (|n|^2 A + |A|^2 A)") {
    const cplx A{0.3, 0.4};
    a.amplitudes[0] = A;
    auto dy = full_rhs(a);
    const cplx expect = cplx{0.0, 1.0} * (5.0 * A + std::norm(A) * A);
    CHECK(std::abs(dy[0] - expect) < 1e-15);
  }
}

TEST_CASE("full rhs: serial agreement and mass conservation") {
  std::vector<LatticePoint> support;
  for (long long x = -2; x <= 2; ++x)
    for (long long y = -1; y <= 1; ++y)
      if ((x + 2 * y) % 3 != 1) support.push_back({x, y});
  GalerkinState a = make_state(support);
  std::mt19937 rng(42);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (auto& amp : a.amplitudes) amp = {u(rng), u(rng)};
  auto par = full_rhs(a);
  auto ser = full_rhs_serial(a);
  REQUIRE(par.size() == ser.size());
  for (std::size_t i = 0; i < par.size(); ++i) CHECK(par[i] == ser[i]);
  // d/dt sum |a_n|^2 = 2 Re sum conj(a_n) a'_n vanishes identically.
  double drift = 0.0;
  for (std::size_t i = 0; i < par.size(); ++i)
    drift += (std::conj(a.amplitudes[i]) * par[i]).real();
  CHECK(std::abs(drift) < 1e-12);
}

TEST_CASE("resonant rhs: single point, zero state, unlinked point") {
  LambdaSet L;
  L.points = {{3, 2}};
  L.links.assign(1, {});
  L.generations = {{0}};
  GalerkinState beta = make_state({{3, 2}});
  SUBCASE("zero state") {
    auto dy = resonant_rhs(beta, L);
    CHECK(std::abs(dy[0]) == 0.0);
  }
  SUBCASE("unit amplitude evolves as -i") {
    beta.amplitudes[0] = 1.0;
    auto dy = resonant_rhs(beta, L);
    CHECK(std::abs(dy[0] - cplx{0.0, -1.0}) < 1e-15);
  }
  SUBCASE("foreign support point throws") {
    GalerkinState bad = make_state({{3, 2}, {0, 0}});
    CHECK_THROWS_AS(resonant_rhs(bad, L), UnlinkedPoint);
  }
}

TEST_CASE("generation-constant states reproduce the toy rhs") {
  const LambdaSet& L = built_lambda();
  ToyState b;
  b.modes = {cplx{0.9, 0.0}, cplx{0.4, 0.1}, cplx{0.2, -0.3}};
  GalerkinState beta;
  beta.support = L.points;
  beta.amplitudes.assign(L.points.size(), {});
  for (int j = 0; j < L.N(); ++j)
    for (int idx : L.generations[j]) beta.amplitudes[idx] = b.modes[j];
  auto dy = resonant_rhs(beta, L);
  auto db = toy_rhs(b);
  for (int j = 0; j < L.N(); ++j)
    for (int idx : L.generations[j])
      CHECK(std::abs(dy[idx] - db[j]) < 1e-13);
}

TEST_CASE("resonant flow: invariant manifold and toy reduction") {
  const LambdaSet& L = built_lambda();
  ToyState b0;
  b0.modes = {cplx{0.8, 0.1}, cplx{0.45, -0.2}, cplx{0.3, 0.25}};
  std::vector<double> y0(2 * L.points.size());
  for (int j = 0; j < L.N(); ++j)
    for (int idx : L.generations[j]) {
      y0[2 * idx] = b0.modes[j].real();
      y0[2 * idx + 1] = b0.modes[j].imag();
    }
  IntegratorConfig cfg;
  const double T = 1.0;
  Trajectory lam = integrate(make_resonant_rhs_fn(L), y0, 0.0, T, cfg);
  Trajectory toy = integrate(toy_fn(), flatten(b0), 0.0, T, cfg);
  GalerkinState bT = unflatten_state(L.points, lam.final_state(), T);
  ToyState bt = unflatten(toy.final_state(), T);

  double mass0 = 0.0, massT = 0.0;
  for (const auto& amp : bT.amplitudes) massT += std::norm(amp);
  for (std::size_t i = 0; i < y0.size(); i += 2)
    mass0 += y0[i] * y0[i] + y0[i + 1] * y0[i + 1];
  CHECK(std::abs(massT - mass0) < 1e-9);

  for (int j = 0; j < L.N(); ++j) {
    // The generation-constant manifold is invariant...
    const cplx ref = bT.amplitudes[L.generations[j][0]];
    for (int idx : L.generations[j])
      CHECK(std::abs(bT.amplitudes[idx] - ref) < 1e-9);
    // ...and the reduced dynamics is the toy flow.
    for (int idx : L.generations[j])
      CHECK(std::abs(bT.amplitudes[idx] - bt.modes[j]) < 1e-8);
  }
}

TEST_CASE("lift of a toy orbit: values, residual identity, window") {
  const LambdaSet& L = built_lambda();
  ToyState b0;
  b0.modes = {cplx{0.7, -0.1}, cplx{0.5, 0.2}, cplx{0.35, 0.15}};
  IntegratorConfig cfg;
  Trajectory toy = integrate(toy_fn(), flatten(b0), 0.0, 2.0, cfg);
  LiftConfig lc;
  lc.lambda = 10.0;
  GalerkinState lifted = lift_toy_orbit(toy, L, lc, 50.0);  // s = 0.5
  ToyState bs = unflatten(toy.eval(0.5), 0.5);
  for (int j = 0; j < L.N(); ++j)
    for (int idx : L.generations[j])
      CHECK(std::abs(lifted.amplitudes[idx] - bs.modes[j] / 10.0) < 1e-14);

  // beta' = lambda^{-3} b'(s): the lift solves the resonant system exactly.
  auto dy = resonant_rhs(lifted, L);
  auto db = toy_rhs(bs);
  for (int j = 0; j < L.N(); ++j)
    for (int idx : L.generations[j])
      CHECK(std::abs(dy[idx] - db[j] / 1000.0) < 1e-13);

  CHECK_THROWS_AS(lift_toy_orbit(toy, L, lc, 250.0), OutOfWindow);
  CHECK_THROWS_AS(lift_toy_orbit(toy, L, lc, -1.0), OutOfWindow);
}

TEST_CASE("gauge transform: identity at t=0, round trip, modulus") {
  GalerkinState s = make_state({{0, 0}, {3, 1}, {-2, 5}});
  s.amplitudes = {cplx{0.2, -0.7}, cplx{1.1, 0.4}, cplx{-0.3, 0.9}};
  const double G = 2.37;
  GalerkinState at0 = gauge_transform(s, G, 0.0, +1);
  for (std::size_t i = 0; i < s.amplitudes.size(); ++i)
    CHECK(at0.amplitudes[i] == s.amplitudes[i]);
  GalerkinState fwd = gauge_transform(s, G, 0.7, +1);
  GalerkinState back = gauge_transform(fwd, G, 0.7, -1);
  for (std::size_t i = 0; i < s.amplitudes.size(); ++i) {
    CHECK(std::abs(back.amplitudes[i] - s.amplitudes[i]) < 1e-15);
    CHECK(std::abs(std::abs(fwd.amplitudes[i]) - std::abs(s.amplitudes[i])) <
          1e-15);
  }
  CHECK_THROWS_AS(gauge_transform(s, G, 0.7, 0), PreconditionViolation);
}

TEST_CASE("gauge covariance on the unit-square family") {
  // Evolving beta and gauging commutes with gauging and evolving alpha
  // under  alpha' = i (G + |n|^2) alpha + i R(alpha).
  LambdaSet L = unit_square_lambda();
  GalerkinState beta0;
  beta0.support = L.points;
  beta0.amplitudes = {cplx{0.5, 0.1}, cplx{0.4, -0.2}, cplx{0.3, 0.3},
                      cplx{0.2, -0.1}};
  const double G = derive_gauge(beta0);
  IntegratorConfig cfg;
  const double T = 0.8;
  Trajectory bt = integrate(make_resonant_rhs_fn(L), flatten(beta0), 0.0, T,
                            cfg);
  GalerkinState betaT = unflatten_state(L.points, bt.final_state(), T);
  GalerkinState alphaT = gauge_transform(betaT, G, T, +1);

  RhsFn res = make_resonant_rhs_fn(L);
  std::vector<double> lin;
  for (const auto& p : L.points) lin.push_back(G + norm2(p));
  RhsFn alpha_rhs = [res, lin](double t, const std::vector<double>& y,
                               std::vector<double>& dy) {
    res(t, y, dy);
    for (std::size_t i = 0; i < lin.size(); ++i) {
      const cplx a{y[2 * i], y[2 * i + 1]};
      const cplx d = cplx{dy[2 * i], dy[2 * i + 1]} + cplx{0.0, lin[i]} * a;
      dy[2 * i] = d.real();
      dy[2 * i + 1] = d.imag();
    }
  };
  Trajectory at = integrate(alpha_rhs, flatten(beta0), 0.0, T, cfg);
  GalerkinState alphaT2 = unflatten_state(L.points, at.final_state(), T);
  CHECK(l1_distance(alphaT, alphaT2) < 1e-8);
}

TEST_CASE("sobolev norms") {
  GalerkinState s = make_state({{1, 0}});
  s.amplitudes[0] = 1.0;
  CHECK(sobolev_norm(s, 1.0) == doctest::Approx(std::sqrt(2.0)));

  const LambdaSet& L = built_lambda();
  GalerkinState ones;
  ones.support = L.points;
  ones.amplitudes.assign(L.points.size(), cplx{1.0, 0.0});
  auto per_gen = generation_sobolev(ones, L, 1.5);
  auto sums = sobolev_sums(L, 1.5);
  REQUIRE(per_gen.size() == sums.S.size());
  for (std::size_t j = 0; j < per_gen.size(); ++j)
    CHECK(per_gen[j] == doctest::Approx(sums.S[j]).epsilon(1e-12));
}

TEST_CASE("rotating frame tracks the lifted orbit, improving with lambda") {
  const LambdaSet& L = built_lambda();
  ToyState b0;
  b0.modes = {cplx{0.7, -0.1}, cplx{0.5, 0.2}, cplx{0.35, 0.15}};
  IntegratorConfig cfg;
  Trajectory toy = integrate(toy_fn(), flatten(b0), 0.0, 0.3, cfg);

  auto max_deviation = [&](double lambda, double dt) {
    LiftConfig lc;
    lc.lambda = lambda;
    GalerkinState lift0 = lift_toy_orbit(toy, L, lc, 0.0);
    lc.G = derive_gauge(lift0);
    RotatingSystem sys = make_rotating_system(L, lc.G);
    auto samples = integrate_rotating(sys, lift0, 1.0, dt, 8);
    // Lab-frame theorem expression; phases cancel mode by mode, so this
    // equals the rotating-frame l1 distance.
    std::vector<GalerkinState> alphas;
    for (const auto& s : samples)
      alphas.push_back(gauge_transform(s, lc.G, s.time, +1));
    double dev = 0.0;
    for (const auto& [t, err] : approximation_error(alphas, toy, L, lc))
      dev = std::max(dev, err);
    return dev;
  };

  const double dev4 = max_deviation(4.0, 0.01);
  const double dev8 = max_deviation(8.0, 0.01);
  CHECK(dev4 < 5e-2);
  CHECK(dev8 < dev4);

  // Self-convergence of the exponential midpoint scheme.
  const double coarse = max_deviation(4.0, 0.02);
  CHECK(std::abs(coarse - dev4) < 1e-4);
}
