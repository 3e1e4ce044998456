#include <algorithm>
#include <cmath>
#include <set>

#include "cascadelab/lattice.hpp"
#include "doctest.h"

using namespace casclab;

TEST_CASE("unit square is the unique resonant rectangle") {
  std::vector<LatticePoint> pts{{0, 0}, {1, 0}, {1, 1}, {0, 1}};
  auto rects = enumerate_resonant_rectangles(pts);
  REQUIRE(rects.size() == 1);
  // Canonical order: parents (0,0),(1,1); children (0,1),(1,0).
  CHECK(rects[0][0] == LatticePoint{0, 0});
  CHECK(rects[0][2] == LatticePoint{1, 1});
  CHECK(rects[0][1] == LatticePoint{0, 1});
  CHECK(rects[0][3] == LatticePoint{1, 0});
  // Frequency condition: 0 - 1 + 2 = 1.
  CHECK(norm2(rects[0][0]) - norm2(rects[0][1]) + norm2(rects[0][2]) ==
        norm2(rects[0][3]));
}

TEST_CASE("collinear points admit no rectangle") {
  std::vector<LatticePoint> pts{{0, 0}, {1, 0}, {2, 0}};
  CHECK(enumerate_resonant_rectangles(pts).empty());
}

TEST_CASE("degenerate quadruples are excluded") {
  std::vector<LatticePoint> pts{{0, 0}, {1, 0}};
  CHECK(enumerate_resonant_rectangles(pts).empty());
  std::vector<LatticePoint> one{{2, 3}};
  CHECK(enumerate_resonant_rectangles(one).empty());
}

TEST_CASE("closure_points admit the fourth vertex from the wider set") {
  std::vector<LatticePoint> pts{{0, 0}, {1, 0}, {1, 1}};
  CHECK(enumerate_resonant_rectangles(pts).empty());
  std::vector<LatticePoint> wider{{0, 1}};
  auto rects = enumerate_resonant_rectangles(pts, &wider);
  REQUIRE(rects.size() == 1);
  CHECK(rects[0][1] == LatticePoint{0, 1});
}

TEST_CASE("parallel and serial enumeration agree on a structured cloud") {
  std::vector<LatticePoint> pts;
  for (long long x = -4; x <= 4; ++x)
    for (long long y = -4; y <= 4; ++y)
      if ((3 * x + 5 * y) % 4 != 1) pts.push_back({x, y});
  auto par = enumerate_resonant_rectangles(pts);
  auto ser = enumerate_resonant_rectangles_serial(pts);
  CHECK(par == ser);
  CHECK(!par.empty());
  // Independent geometric cross-check: equal-length diagonals sharing a
  // midpoint, and a right angle at n2 (sides (n2, n1) and (n2, n3)).
  for (const Rectangle& r : par) {
    const LatticePoint d1{r[2][0] - r[0][0], r[2][1] - r[0][1]};
    const LatticePoint d2{r[3][0] - r[1][0], r[3][1] - r[1][1]};
    CHECK(r[0][0] + r[2][0] == r[1][0] + r[3][0]);
    CHECK(r[0][1] + r[2][1] == r[1][1] + r[3][1]);
    CHECK(norm2(d1) == norm2(d2));
    const LatticePoint s1{r[0][0] - r[1][0], r[0][1] - r[1][1]};
    const LatticePoint s2{r[2][0] - r[1][0], r[2][1] - r[1][1]};
    CHECK(s1[0] * s2[0] + s1[1] * s2[1] == 0);  // perpendicular sides
  }
}

TEST_CASE("build_lambda N=2: one verified family") {
  LambdaSet L = build_lambda(2, 2, 100, 7);
  REQUIRE(L.families.size() == 1);
  CHECK(L.generations[0].size() == 2);
  CHECK(L.generations[1].size() == 2);
  CHECK(verify_lambda(L).all());
  CHECK(enumerate_resonant_rectangles(L.points).size() == 1);
}

TEST_CASE("build_lambda N=3, four per generation: verified, bidirectional") {
  LambdaSet L = build_lambda(3, 4, 10000, 11);
  REQUIRE(L.N() == 3);
  for (const auto& gen : L.generations) CHECK(gen.size() == 4);
  VerificationVerdict v = verify_lambda(L);
  CHECK(v.closure);
  CHECK(v.spouse_children);
  CHECK(v.sibling_parents);
  CHECK(v.nondegeneracy);
  CHECK(v.faithfulness);
  CHECK(v.no_spreading);

  // Generations pairwise disjoint.
  std::set<LatticePoint> seen;
  for (const auto& gen : L.generations)
    for (int idx : gen) CHECK(seen.insert(L.points[idx]).second);

  // Spouse/sibling involutions, parent/child bidirectionality.
  for (int i = 0; i < static_cast<int>(L.points.size()); ++i) {
    if (L.links[i].spouse >= 0) CHECK(L.links[L.links[i].spouse].spouse == i);
    if (L.links[i].sibling >= 0)
      CHECK(L.links[L.links[i].sibling].sibling == i);
    for (int c : L.links[i].children) {
      if (c < 0) continue;
      CHECK((L.links[c].parents[0] == i || L.links[c].parents[1] == i));
    }
  }
  // Every family is a resonant rectangle.
  for (const auto& fam : L.families) {
    const LatticePoint& n1 = L.points[fam.n[0]];
    const LatticePoint& n2 = L.points[fam.n[1]];
    const LatticePoint& n3 = L.points[fam.n[2]];
    const LatticePoint& n4 = L.points[fam.n[3]];
    CHECK(n1[0] - n2[0] + n3[0] == n4[0]);
    CHECK(n1[1] - n2[1] + n3[1] == n4[1]);
    CHECK(norm2(n1) - norm2(n2) + norm2(n3) == norm2(n4));
  }
}

TEST_CASE("infeasible radius raises PlacementExhausted") {
  CHECK_THROWS_AS(build_lambda(3, 4, 1, 3), PlacementExhausted);
}

TEST_CASE("injected rectangle pair breaks faithfulness with a witness") {
  LambdaSet L = build_lambda(3, 4, 10000, 11);
  // In a closed set every right-angle triple completes inside, so a single
  // extra point cannot create an all-inside rectangle.  Translating a family
  // side by a fresh perpendicular offset injects a full non-family rectangle.
  std::set<LatticePoint> inside(L.points.begin(), L.points.end());
  const LatticePoint a = L.points[L.families[0].n[0]];
  const LatticePoint b = L.points[L.families[0].n[1]];
  const LatticePoint w{-(b[1] - a[1]), b[0] - a[0]};
  LatticePoint x{0, 0}, y{0, 0};
  bool found = false;
  for (long long k = 1; k <= 50 && !found; ++k) {
    x = {a[0] + k * w[0], a[1] + k * w[1]};
    y = {b[0] + k * w[0], b[1] + k * w[1]};
    if (!inside.count(x) && !inside.count(y)) found = true;
  }
  REQUIRE(found);
  for (const LatticePoint& p : {x, y}) {
    L.points.push_back(p);
    L.links.emplace_back();
    L.generations.back().push_back(static_cast<int>(L.points.size()) - 1);
  }
  VerificationVerdict v = verify_lambda(L);
  CHECK(!v.faithfulness);
  REQUIRE(!v.faithfulness_witnesses.empty());
  bool witnessed = false;
  for (const Rectangle& r : v.faithfulness_witnesses)
    for (const LatticePoint& p : r)
      if (p == x || p == y) witnessed = true;
  CHECK(witnessed);
}

TEST_CASE("missing fourth vertex breaks closure") {
  LambdaSet L;
  L.points = {{0, 0}, {2, 2}, {2, 0}};
  L.links.assign(3, {});
  L.generations = {{0, 1}, {2}};
  VerificationVerdict v = verify_lambda(L);
  CHECK(!v.closure);
  REQUIRE(!v.closure_witnesses.empty());
  bool has = false;
  for (const Rectangle& r : v.closure_witnesses)
    for (const LatticePoint& p : r)
      if (p == LatticePoint{0, 2}) has = true;
  CHECK(has);
}

TEST_CASE("third external rectangle at a vertex breaks only no_spreading") {
  // Orthogonal pairs through the origin: (0,0) is a vertex of three
  // rectangles with diagonals {(1,0),(0,7)}, {(3,0),(0,5)}, {(2,0),(0,3)}.
  LambdaSet L;
  L.points = {{1, 0}, {0, 7}, {3, 0}, {0, 5}, {2, 0}, {0, 3}};
  L.links.assign(6, {});
  L.generations = {{0, 1, 2, 3, 4, 5}};
  VerificationVerdict v = verify_lambda(L, 12);
  CHECK(v.closure);
  CHECK(v.spouse_children);  // N = 1: no parent generations required
  CHECK(v.faithfulness);
  CHECK(!v.no_spreading);
  bool origin = false;
  for (const LatticePoint& p : v.spreading_witnesses)
    if (p == LatticePoint{0, 0}) origin = true;
  CHECK(origin);
}

TEST_CASE("external census: parallel equals serial") {
  LambdaSet L = build_lambda(3, 4, 10000, 11);
  auto par = external_rectangle_census(L.points, 50, 1);
  auto ser = external_rectangle_census_serial(L.points, 50, 1);
  CHECK(par == ser);
}

TEST_CASE("sobolev sums: examples, homogeneity, growth") {
  LambdaSet L;
  L.points = {{1, 0}, {0, 1}};
  L.links.assign(2, {});
  L.generations = {{0, 1}};
  CHECK(sobolev_sums(L, 1.0).S[0] == doctest::Approx(2.0));
  CHECK_THROWS_AS(sobolev_sums(L, 0.0), NonPositiveInput);

  LambdaSet B = build_lambda(3, 4, 10000, 11);
  const double s = 1.5;
  SobolevSums base = sobolev_sums(B, s);
  LambdaSet scaled = B;
  for (auto& p : scaled.points) {
    p[0] *= 3;
    p[1] *= 3;
  }
  SobolevSums big = sobolev_sums(scaled, s);
  for (int j = 0; j < 3; ++j)
    CHECK(big.S[j] == doctest::Approx(std::pow(3.0, 2 * s) * base.S[j]));

  // Direct-sum cross-check.
  long double direct = 0.0L;
  for (int idx : B.generations[1])
    direct += std::pow(static_cast<long double>(norm2(B.points[idx])),
                       static_cast<long double>(s));
  CHECK(base.S[1] == doctest::Approx(static_cast<double>(direct)));
}
