#include <benchmark/benchmark.h>

#include "sedflow/cases.hpp"
#include "sedflow/scheme.hpp"

using namespace sedflow;

namespace {

struct Setup {
  CaseConfig cfg;
  Grid2D grid;
  StateField state;
  StateField rhs;

  explicit Setup(int n)
      : cfg(sized(n)), grid(make_grid(cfg)), state(init_case(cfg, grid)), rhs(grid) {}

  static CaseConfig sized(int n)
  {
    CaseConfig c = default_config(CaseKind::riemann2d);
    c.nx = c.ny = n;
    return c;
  }
};

void rhs_openmp(benchmark::State& st)
{
  Setup s(static_cast<int>(st.range(0)));
  RhsOperator op(s.grid, s.cfg.bc, s.cfg.params, s.cfg.scheme);
  for (auto _ : st) benchmark::DoNotOptimize(op(s.state, s.rhs));
  st.SetItemsProcessed(st.iterations() * st.range(0) * st.range(0));
}

void rhs_serial(benchmark::State& st)
{
  Setup s(static_cast<int>(st.range(0)));
  for (auto _ : st)
    benchmark::DoNotOptimize(assemble_rhs_reference(s.state, s.grid, s.cfg.bc, s.cfg.params, s.cfg.scheme, s.rhs));
  st.SetItemsProcessed(st.iterations() * st.range(0) * st.range(0));
}

}  // namespace

BENCHMARK(rhs_openmp)->Arg(64)->Arg(128)->Arg(256)->Unit(benchmark::kMillisecond);
BENCHMARK(rhs_serial)->Arg(64)->Arg(128)->Arg(256)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
