#include <benchmark/benchmark.h>

#include "hgs/fiber.hpp"

namespace {

hgs::KernelSpec spec() {
  hgs::KernelSpec s;
  s.h = {hgs::FactorFamily::gauss_cosh, 1.0};
  s.w = hgs::LinkFactor{hgs::FactorFamily::gauss_cosh, 1.0};
  return s;
}

}  // namespace

static void FiberAssembly(benchmark::State& state) {
  const hgs::KernelSpec s = spec();
  hgs::FiberGridParams p;
  p.radial = static_cast<int>(state.range(0));
  p.angular = 2 * p.radial;
  for (auto _ : state) {
    auto f = hgs::fiber_kernel(s, 0.7, p);
    benchmark::DoNotOptimize(f.mat.data());
  }
}
BENCHMARK(FiberAssembly)->Arg(8)->Arg(12)->Arg(16)->Unit(benchmark::kMillisecond);

static void FiberNorm(benchmark::State& state) {
  const hgs::KernelSpec s = spec();
  hgs::FiberGridParams p;
  p.radial = 12;
  p.angular = 24;
  const auto f = hgs::fiber_kernel(s, 0.7, p);
  for (auto _ : state) {
    benchmark::DoNotOptimize(hgs::fiber_norm(f));
  }
}
BENCHMARK(FiberNorm)->Unit(benchmark::kMillisecond);
