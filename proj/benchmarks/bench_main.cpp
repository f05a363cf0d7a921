#include <benchmark/benchmark.h>

#include "biharm/branch_continuation.hpp"
#include "biharm/counterexample.hpp"
#include "biharm/green_kernels.hpp"
#include "biharm/nonlinearity.hpp"
#include "biharm/radial_solver.hpp"

using namespace biharm;

static void BM_SolveGelfand(benchmark::State& state) {
  const auto grid = RadialGrid::graded(static_cast<std::size_t>(state.range(0)), 1.0, 3.0, 0.3);
  const auto spec = NonlinearitySpec::pure_exp(1.0);
  for (auto _ : state) {
    auto sol = solve(spec, 50.0, BoundaryCondition::Dirichlet, grid);
    benchmark::DoNotOptimize(sol.u.data());
  }
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_SolveGelfand)->RangeMultiplier(2)->Range(129, 2049)->Complexity();

static void BM_GreenLaplaceBall(benchmark::State& state) {
  const auto pairs = sample_pairs(4096, 42);
  const bool grad = state.range(0) != 0;
  std::size_t i = 0;
  for (auto _ : state) {
    const auto& [x, y] = pairs[i++ & 4095];
    benchmark::DoNotOptimize(green_laplace_ball(x, y, grad));
  }
}
BENCHMARK(BM_GreenLaplaceBall)->Arg(0)->Arg(1);

static void BM_TraceBranch(benchmark::State& state) {
  const auto grid = RadialGrid::graded(257, 50.0, 3.0, 0.1);
  const auto spec = NonlinearitySpec::pure_exp(1.0);
  for (auto _ : state) {
    auto br = trace(spec, BoundaryCondition::Dirichlet, grid, {}, 0.25, 10.0, 0.25);
    benchmark::DoNotOptimize(br.points.data());
  }
}
BENCHMARK(BM_TraceBranch)->Unit(benchmark::kMillisecond);

static void BM_Certify(benchmark::State& state) {
  const auto p = params_for_rho(1.5, 1000.0);
  const auto ells = geometric_ell_grid(1000.0, 1e6, static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) {
    auto cert = certify(p, ells);
    benchmark::DoNotOptimize(&cert);
  }
}
BENCHMARK(BM_Certify)->Arg(201)->Arg(2001)->Unit(benchmark::kMillisecond);
BENCHMARK_MAIN();
