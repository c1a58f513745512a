#include <benchmark/benchmark.h>

#include <random>

#include "hgs/transfer.hpp"

namespace {

hgs::KernelSpec spec() {
  hgs::KernelSpec s;
  s.h = {hgs::FactorFamily::gauss_cosh, 1.0};
  s.w = hgs::LinkFactor{hgs::FactorFamily::gauss_cosh, 1.0};
  return s;
}

}  // namespace

static void KernelEval(benchmark::State& state) {
  const hgs::KernelSpec s = spec();
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> u(0.0, 2.0);
  Eigen::VectorXd d(2);
  d << 1.0, 0.0;
  const hgs::Config m{{hgs::hpoint_polar(u(rng), d),
                       hgs::hpoint_polar(u(rng), d)}};
  const hgs::Config mp{{hgs::hpoint_polar(u(rng), d),
                        hgs::hpoint_polar(u(rng), d)}};
  for (auto _ : state) {
    benchmark::DoNotOptimize(hgs::kernel_eval(s, m, mp));
  }
}
BENCHMARK(KernelEval);

static void ConfigMatrixAssembly(benchmark::State& state) {
  const hgs::KernelSpec s = spec();
  hgs::ConfigGrid grid{
      hgs::hyperboloid_quadrature(2, 3.5, static_cast<int>(state.range(0)),
                                  static_cast<int>(state.range(0)), "r"),
      2};
  for (auto _ : state) {
    auto B = hgs::assemble_config_matrix(s, grid);
    benchmark::DoNotOptimize(B.data());
  }
}
BENCHMARK(ConfigMatrixAssembly)->Arg(4)->Arg(6)->Arg(8);
