#include <benchmark/benchmark.h>

#include "hgs/quadrature.hpp"

static void GaussLegendreNodes(benchmark::State& state) {
  for (auto _ : state) {
    auto r = hgs::gauss_legendre(static_cast<int>(state.range(0)));
    benchmark::DoNotOptimize(r.x.data());
  }
  state.SetComplexityN(state.range(0));
}
BENCHMARK(GaussLegendreNodes)->RangeMultiplier(4)->Range(16, 1024)->Complexity();

static void HyperboloidRuleBuild(benchmark::State& state) {
  for (auto _ : state) {
    auto h = hgs::hyperboloid_quadrature(2, 6.0,
                                         static_cast<int>(state.range(0)), 32,
                                         "r");
    benchmark::DoNotOptimize(h.w.data());
  }
}
BENCHMARK(HyperboloidRuleBuild)->Arg(16)->Arg(32)->Arg(64);

static void GroupRuleBuild(benchmark::State& state) {
  for (auto _ : state) {
    auto g = hgs::group_quadrature(2, 8.0, 8.0,
                                   static_cast<int>(state.range(0)),
                                   static_cast<int>(state.range(0)), 16);
    benchmark::DoNotOptimize(g.w.data());
  }
}
BENCHMARK(GroupRuleBuild)->Arg(16)->Arg(32);
