#include <benchmark/benchmark.h>

#include "degen/entropy_audit.hpp"
#include "degen/problems.hpp"
#include "degen/scheme.hpp"

using namespace degen;

static void BM_ExplicitStep(benchmark::State& state) {
  ProblemModel m = strongly_degenerate_benchmark();
  SplitFlux split = engquist_osher(m);
  Grid1D g = m.make_grid(static_cast<int>(state.range(0)));
  GridFunction u = cell_average_project(m.u0, g);
  SchemeConfig cfg;
  const double dt = cfl_max_dt(m.range_min, m.range_max, split, m, g.dx, cfg);
  for (auto _ : state) {
    auto next = explicit_step(u, dt, split, m);
    benchmark::DoNotOptimize(next.values.data());
  }
  state.SetItemsProcessed(state.iterations() * g.n_cells);
}
BENCHMARK(BM_ExplicitStep)->Arg(256)->Arg(1024)->Arg(4096);

static void BM_ImplicitStep(benchmark::State& state) {
  ProblemModel m = strongly_degenerate_benchmark();
  SplitFlux split = engquist_osher(m);
  Grid1D g = m.make_grid(static_cast<int>(state.range(0)));
  GridFunction u = cell_average_project(m.u0, g);
  SchemeConfig cfg;
  cfg.kind = SchemeKind::Implicit;
  for (auto _ : state) {
    auto next = implicit_step(u, g.dx, split, m, cfg);
    benchmark::DoNotOptimize(next.values.data());
  }
  state.SetItemsProcessed(state.iterations() * g.n_cells);
}
BENCHMARK(BM_ImplicitStep)->Arg(256)->Arg(1024)->Arg(4096);

static void BM_EntropyResidual(benchmark::State& state) {
  ProblemModel m = strongly_degenerate_benchmark();
  SplitFlux split = engquist_osher(m);
  Grid1D g = m.make_grid(static_cast<int>(state.range(0)));
  GridFunction u = cell_average_project(m.u0, g);
  const double eps = default_eps(m);
  auto cs = default_constants(m);
  for (auto _ : state) {
    auto rep = semidiscrete_entropy_residual(u, split, m, eps, cs);
    benchmark::DoNotOptimize(rep.worst_violation);
  }
}
BENCHMARK(BM_EntropyResidual)->Arg(64)->Arg(256);

BENCHMARK_MAIN();
