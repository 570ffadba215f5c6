// Copyright krein-bem contributors.
// SPDX-License-Identifier: Apache-2.0

#include <benchmark/benchmark.h>

#include <array>

#include "kreinbem/kreinbem.hpp"

namespace kb = kreinbem;
using kb::cplx;

namespace
{

void BM_Hankel1(benchmark::State &state)
{
  const auto order = static_cast<int>(state.range(0));
  cplx z(0.3, 0.1);
  for (auto _ : state)
  {
    benchmark::DoNotOptimize(kb::hankel1(order, z));
    z += cplx(1e-6, 0.0);
  }
}
BENCHMARK(BM_Hankel1)->Arg(0)->Arg(1)->Arg(8);

void BM_FundamentalSolution2D(benchmark::State &state)
{
  const kb::SpectralParameter z(cplx(2.0, 1.0));
  std::array<double, 2> x{0.3, -0.2};
  for (auto _ : state)
  {
    benchmark::DoNotOptimize(kb::fundamental_solution(2, z, x));
    x[0] += 1e-9;
  }
}
BENCHMARK(BM_FundamentalSolution2D);

void BM_AssembleLayers(benchmark::State &state)
{
  const auto mesh = kb::build_mesh(kb::DomainSpec::disk(1.0, static_cast<int>(state.range(0))));
  for (auto _ : state)
  {
    benchmark::DoNotOptimize(kb::assemble_layer_operators(mesh, cplx(2.0, 1.0)));
  }
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_AssembleLayers)->RangeMultiplier(2)->Range(64, 512)->Unit(benchmark::kMillisecond)->Complexity();

void BM_LuSolve(benchmark::State &state)
{
  const auto mesh = kb::build_mesh(kb::DomainSpec::disk(1.0, static_cast<int>(state.range(0))));
  const auto s = kb::assemble_single_layer(mesh, cplx(2.0, 1.0));
  const Eigen::VectorXcd b = Eigen::VectorXcd::Ones(mesh.size());
  for (auto _ : state)
  {
    const kb::LuSolver lu(s.matrix, cplx(2.0, 1.0), "S");
    benchmark::DoNotOptimize(lu.solve(b));
  }
}
BENCHMARK(BM_LuSolve)->RangeMultiplier(2)->Range(64, 512)->Unit(benchmark::kMillisecond);

void BM_NewtonPotentialOnGrid(benchmark::State &state)
{
  const auto spec = kb::DomainSpec::disk(1.0, 128);
  const auto grid = kb::interior_grid(spec, 1.0 / static_cast<double>(state.range(0)), 0.0);
  const auto f = kb::SourceField::gaussian({0.1, 0.0}, 0.1, 1.0);
  for (auto _ : state)
  {
    benchmark::DoNotOptimize(kb::newton_potential_on_grid(grid, f, cplx(2.0, 1.0)));
  }
  state.counters["points"] = static_cast<double>(grid.points.size());
}
BENCHMARK(BM_NewtonPotentialOnGrid)->Arg(80)->Arg(112)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
