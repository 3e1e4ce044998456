// Parallel vs serial reference implementations of the three hot kernels:
// resonant rectangle enumeration, the external rectangle census behind the
// no-spreading check, and the full cubic right-hand side.

#include <benchmark/benchmark.h>

#include <cmath>
#include <random>
#include <vector>

#include "cascadelab/galerkin.hpp"
#include "cascadelab/lattice.hpp"

namespace {

using namespace casclab;

std::vector<LatticePoint> random_points(int count, long long radius,
                                        unsigned seed) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<long long> coord(-radius, radius);
  std::vector<LatticePoint> pts;
  while (static_cast<int>(pts.size()) < count) {
    LatticePoint p{coord(rng), coord(rng)};
    bool dup = false;
    for (const auto& q : pts) dup = dup || q == p;
    if (!dup) pts.push_back(p);
  }
  return pts;
}

GalerkinState random_galerkin(int count, long long radius, unsigned seed) {
  GalerkinState s = make_state(random_points(count, radius, seed));
  std::mt19937 rng(seed + 1);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (auto& a : s.amplitudes) a = cplx{u(rng), u(rng)};
  return s;
}

void BM_EnumerateRectangles(benchmark::State& state) {
  const auto pts =
      random_points(static_cast<int>(state.range(0)), 50, 12345);
  for (auto _ : state)
    benchmark::DoNotOptimize(enumerate_resonant_rectangles(pts));
  state.SetComplexityN(state.range(0));
}

void BM_EnumerateRectanglesSerial(benchmark::State& state) {
  const auto pts =
      random_points(static_cast<int>(state.range(0)), 50, 12345);
  for (auto _ : state)
    benchmark::DoNotOptimize(enumerate_resonant_rectangles_serial(pts));
  state.SetComplexityN(state.range(0));
}

void BM_ExternalCensus(benchmark::State& state) {
  const auto pts = random_points(12, state.range(0), 999);
  for (auto _ : state)
    benchmark::DoNotOptimize(external_rectangle_census(pts, state.range(0), 2));
}

void BM_ExternalCensusSerial(benchmark::State& state) {
  const auto pts = random_points(12, state.range(0), 999);
  for (auto _ : state)
    benchmark::DoNotOptimize(
        external_rectangle_census_serial(pts, state.range(0), 2));
}

void BM_FullRhs(benchmark::State& state) {
  const GalerkinState s =
      random_galerkin(static_cast<int>(state.range(0)), 40, 777);
  for (auto _ : state) benchmark::DoNotOptimize(full_rhs(s));
  state.SetComplexityN(state.range(0));
}

void BM_FullRhsSerial(benchmark::State& state) {
  const GalerkinState s =
      random_galerkin(static_cast<int>(state.range(0)), 40, 777);
  for (auto _ : state) benchmark::DoNotOptimize(full_rhs_serial(s));
  state.SetComplexityN(state.range(0));
}

BENCHMARK(BM_EnumerateRectangles)->Arg(32)->Arg(64)->Arg(128);
BENCHMARK(BM_EnumerateRectanglesSerial)->Arg(32)->Arg(64)->Arg(128);
BENCHMARK(BM_ExternalCensus)->Arg(20)->Arg(40);
BENCHMARK(BM_ExternalCensusSerial)->Arg(20)->Arg(40);
BENCHMARK(BM_FullRhs)->Arg(16)->Arg(32)->Arg(64);
BENCHMARK(BM_FullRhsSerial)->Arg(16)->Arg(32)->Arg(64);

}  // namespace

BENCHMARK_MAIN();
