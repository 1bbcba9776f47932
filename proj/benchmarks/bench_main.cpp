#include <benchmark/benchmark.h>

#include "tstab/fan.hpp"
#include "tstab/mt_functionals.hpp"
#include "tstab/polytope.hpp"
#include "tstab/thresholds.hpp"
#include "tstab/toric.hpp"

namespace {

using namespace tstab;
using namespace tstab::mt;

void BM_DeltaDelPezzo(benchmark::State& state) {
  auto l = anticanonical(builtin_variety("dP1"));
  for (auto _ : state) benchmark::DoNotOptimize(delta(l));
}
BENCHMARK(BM_DeltaDelPezzo);

void BM_DeltaP3(benchmark::State& state) {
  auto l = anticanonical(builtin_variety("P3"));
  for (auto _ : state) benchmark::DoNotOptimize(delta(l));
}
BENCHMARK(BM_DeltaP3);

// Cube [-k, k]^3 cut by the eight corner halfspaces.
void BM_VertexEnumeration(benchmark::State& state) {
  const long k = state.range(0);
  HPolytope p;
  p.dim = 3;
  for (int i = 0; i < 3; ++i) {
    RatVector e(3, Rational(0));
    e[i] = 1;
    p.add(e, Rational(-k));
    e[i] = -1;
    p.add(e, Rational(-k));
  }
  for (int s = 0; s < 8; ++s) {
    RatVector w{Rational(s & 1 ? 1 : -1), Rational(s & 2 ? 1 : -1), Rational(s & 4 ? 1 : -1)};
    p.add(w, Rational(-2 * k));
  }
  for (auto _ : state) benchmark::DoNotOptimize(enumerate_vertices(p));
}
BENCHMARK(BM_VertexEnumeration)->Arg(1)->Arg(7);

void BM_CommonRefinement(benchmark::State& state) {
  auto x = builtin_variety("dP1");
  auto sections = section_vertices(anticanonical(x));
  Fan f = normal_fan(sections);
  Fan g = x->fan();
  for (auto _ : state) benchmark::DoNotOptimize(common_refinement(f, g));
}
BENCHMARK(BM_CommonRefinement);

void BM_Functionals2D(benchmark::State& state) {
  auto grid = LogGrid::create(2, {1.0, 1.0}, static_cast<int>(state.range(0)), 16.0);
  FunctionalContext ctx(grid, 1.0);
  auto u = random_potential(grid, 3);
  for (auto _ : state) {
    benchmark::DoNotOptimize(functional_J(ctx, u));
    benchmark::DoNotOptimize(entropy(ctx, u));
  }
}
BENCHMARK(BM_Functionals2D)->Arg(64)->Arg(96);

}  // namespace

BENCHMARK_MAIN();
