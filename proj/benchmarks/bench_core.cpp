#include <benchmark/benchmark.h>

#include <vector>

#include "hustab/approximant.hpp"
#include "hustab/equation.hpp"
#include "hustab/generators.hpp"
#include "hustab/infomeasure.hpp"
#include "hustab/wide.hpp"

namespace {

using namespace hustab;

void BM_WidePow(benchmark::State& state) {
  Wide x = 0.123456789;
  for (auto _ : state) {
    benchmark::DoNotOptimize(pow(x, -2.5));
    x = x + 1e-9;
  }
}
BENCHMARK(BM_WidePow);

void BM_Defect(benchmark::State& state) {
  const FunctionSpec f = make_exact_power(2.0, -1.0, Alpha(-0.5));
  double y = 0.2;
  for (auto _ : state) {
    benchmark::DoNotOptimize(defect(f, Alpha(-0.5), 0.3, y));
    y = y < 0.6 ? y + 1e-7 : 0.2;
  }
}
BENCHMARK(BM_Defect);

void BM_ResidualSup(benchmark::State& state) {
  const int m = static_cast<int>(state.range(0));
  const DomainGrid grid = make_interior_grid(1e-3, m);
  const FunctionSpec f = make_exact_power(2.0, -1.0, Alpha(-5.0));
  for (auto _ : state) benchmark::DoNotOptimize(residual_sup(f, Alpha(-5.0), grid));
  state.SetItemsProcessed(state.iterations() * static_cast<int64_t>(grid.size()));
}
BENCHMARK(BM_ResidualSup)->Arg(50)->Arg(200)->Unit(benchmark::kMillisecond);

void BM_OracleScan(benchmark::State& state) {
  const DomainGrid grid = make_interior_grid(1e-3, 50);
  const FunctionSpec f = make_exact_power(2.0, -1.0, Alpha(-5.0));
  for (auto _ : state) benchmark::DoNotOptimize(oracle_defect_scan(f, Alpha(-5.0), grid));
  state.SetItemsProcessed(state.iterations() * static_cast<int64_t>(grid.size()));
}
BENCHMARK(BM_OracleScan)->Unit(benchmark::kMillisecond);

void BM_Certify(benchmark::State& state) {
  const DomainGrid grid = make_interior_grid(1e-2, 150);
  const FunctionSpec f = perturb(make_exact_power(1.0, 0.0, Alpha(-1.0)), {1e-3, 7, NoiseKind::comb});
  const ResidualEstimate eps = noise_residual_bound(1e-3, Alpha(-1.0), grid);
  for (auto _ : state) benchmark::DoNotOptimize(certify(f, Alpha(-1.0), grid, eps));
}
BENCHMARK(BM_Certify)->Unit(benchmark::kMillisecond);

void BM_CertifyFamily(benchmark::State& state) {
  const MeasureFamily family = make_canonical_family(PowerFamily{3.0, 1.0}, Alpha(-1.0), 6);
  for (auto _ : state) benchmark::DoNotOptimize(certify_family(family, Alpha(-1.0), 6, 50, 1));
}
BENCHMARK(BM_CertifyFamily)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
