#include <benchmark/benchmark.h>

#include "qstates/specfun.hpp"

using namespace qstates;

namespace {

LauricellaArgs interior() { return {1.2, {0.4, 0.3, 0.2, 0.1}, 2.5, {0.3, -0.2, 0.1, 0.25}}; }

void BM_HermiteFunction(benchmark::State& st) {
  const int n = static_cast<int>(st.range(0));
  for (auto _ : st) benchmark::DoNotOptimize(hermite_function(n, 1.3));
}
BENCHMARK(BM_HermiteFunction)->Arg(10)->Arg(100)->Arg(1000);

void BM_KummerSeries(benchmark::State& st) {
  for (auto _ : st) benchmark::DoNotOptimize(kummer_phi(cplx(2.0), cplx(4.0), cplx(0.0, -5.0)));
}
BENCHMARK(BM_KummerSeries);

void BM_KummerLarge(benchmark::State& st) {
  for (auto _ : st) benchmark::DoNotOptimize(kummer_phi(cplx(2.0), cplx(4.0), cplx(0.0, -60.0)));
}
BENCHMARK(BM_KummerLarge);

void BM_LauricellaSeries(benchmark::State& st) {
  const auto args = interior();
  for (auto _ : st) benchmark::DoNotOptimize(lauricella_fd_series(args, 1e-12));
}
BENCHMARK(BM_LauricellaSeries);

void BM_LauricellaIntegral(benchmark::State& st) {
  const auto args = interior();
  for (auto _ : st) benchmark::DoNotOptimize(lauricella_fd_integral(args, 1e-12));
}
BENCHMARK(BM_LauricellaIntegral);

} // namespace
