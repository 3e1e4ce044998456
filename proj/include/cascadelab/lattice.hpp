#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "cascadelab/types.hpp"

namespace casclab {

using LatticePoint = std::array<long long, 2>;

// A resonant rectangle (n1, n2, n3, n4): n1 - n2 + n3 = n4 and
// |n1|^2 - |n2|^2 + |n3|^2 = |n4|^2, i.e. diagonals (n1, n3) and (n2, n4)
// share their midpoint and have equal length.  Stored in canonical order:
// n1 is the lexicographic minimum of the four vertices, n3 its diagonal
// partner, n2 the lexicographic minimum of the other diagonal.
using Rectangle = std::array<LatticePoint, 4>;

long long norm2(const LatticePoint& p);

Rectangle canonical_rectangle(const LatticePoint& a1, const LatticePoint& a2,
                              const LatticePoint& b1, const LatticePoint& b2);

// All resonant rectangles with vertices in `points`; when `closure_points`
// is given, the fourth vertex may also come from that wider set (used for
// closure checking).  Trivial permutations are deduplicated to the canonical
// order above.  The unsuffixed version parallelizes over diagonal pairs; the
// serial version is the reference implementation.
std::vector<Rectangle> enumerate_resonant_rectangles(
    const std::vector<LatticePoint>& points,
    const std::vector<LatticePoint>* closure_points = nullptr);
std::vector<Rectangle> enumerate_resonant_rectangles_serial(
    const std::vector<LatticePoint>& points,
    const std::vector<LatticePoint>* closure_points = nullptr);

struct LambdaSet {
  std::vector<LatticePoint> points;
  std::vector<std::vector<int>> generations;  // indices into points

  // Family (n1, n2, n3, n4): parents n[0], n[2] in `generation`, children
  // n[1], n[3] in generation + 1 (1-based generation tag).
  struct Family {
    std::array<int, 4> n;
    int generation = 0;
  };
  std::vector<Family> families;

  struct Links {
    int spouse = -1;
    int sibling = -1;
    std::array<int, 2> parents{-1, -1};
    std::array<int, 2> children{-1, -1};
  };
  std::vector<Links> links;  // parallel to points

  int N() const { return static_cast<int>(generations.size()); }
};

// Iterative construction: the first generation sits on a lattice circle with
// many integer points; each spouse pair's children are chosen among the
// integer points of the circle having the parents' segment as diameter
// (equivalent to enumerating Pythagorean angles), biased toward eccentric
// child pairs so Sobolev mass spreads, with a seeded generator breaking
// ties.  Children are cross-paired into the next generation's families so a
// spouse is never a sibling.  When a generation's circles run out of integer
// points, the whole configuration is multiplied by a prime congruent to
// 1 mod 4, which multiplies every circle's lattice-point count while
// preserving all structural conditions.  The returned set always passes
// verify_lambda.
LambdaSet build_lambda(int N, int gen_size, long long radius_bound,
                       std::uint64_t rng_seed);

struct VerificationVerdict {
  bool closure = true;          // 3 vertices in Lambda force the 4th
  bool spouse_children = true;  // unique family as parent, gens 1..N-1
  bool sibling_parents = true;  // unique family as child, gens 2..N
  bool nondegeneracy = true;    // spouse != sibling
  bool faithfulness = true;     // every all-in-Lambda rectangle is a family
  bool no_spreading = true;     // external vertices touch <= 2 rectangles

  std::vector<Rectangle> closure_witnesses;
  std::vector<LatticePoint> link_witnesses;  // 2/3/4-condition offenders
  std::vector<Rectangle> faithfulness_witnesses;
  std::vector<LatticePoint> spreading_witnesses;
  std::vector<Rectangle> spreading_rectangles;  // the >2 rectangles found

  bool all() const {
    return closure && spouse_children && sibling_parents && nondegeneracy &&
           faithfulness && no_spreading;
  }
};

// Exhaustive check of the six structural conditions.  closure_radius bounds
// the box scanned for external rectangle vertices; 0 means 3 * max |n|.
VerificationVerdict verify_lambda(const LambdaSet& lambda,
                                  long long closure_radius = 0);

// Kernel behind the no-spreading check: for every point outside `points`
// within the box |x|,|y| <= radius, the distinct rectangles having it as a
// vertex and at least two vertices in `points`.  Only points on >= `min_count`
// rectangles are reported.  Parallel and serial reference variants.
std::vector<std::pair<LatticePoint, std::vector<Rectangle>>>
external_rectangle_census(const std::vector<LatticePoint>& points,
                          long long radius, std::size_t min_count);
std::vector<std::pair<LatticePoint, std::vector<Rectangle>>>
external_rectangle_census_serial(const std::vector<LatticePoint>& points,
                                 long long radius, std::size_t min_count);

struct SobolevSums {
  std::vector<double> S;       // S_j = sum_{n in Lambda_j} |n|^{2s}, j = 1..N
  double growth_ratio = 0.0;   // S_{N-1} / S_3 (0 when N < 4)
};

SobolevSums sobolev_sums(const LambdaSet& lambda, double s);

}  // namespace casclab
