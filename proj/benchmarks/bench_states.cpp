#include <benchmark/benchmark.h>

#include "qstates/closed_form.hpp"
#include "qstates/moments.hpp"
#include "qstates/momentum.hpp"
#include "qstates/states.hpp"

using namespace qstates;

namespace {

void BM_OracleNormalization(benchmark::State& st) {
  for (auto _ : st) benchmark::DoNotOptimize(normalization_constant(1.5, cplx(0.3, 0.1), Method::oracle));
}
BENCHMARK(BM_OracleNormalization)->Unit(benchmark::kMicrosecond);

void BM_ClosedNormalization(benchmark::State& st) {
  closed::anchor_calibration();
  for (auto _ : st) benchmark::DoNotOptimize(closed::norm_constant(1.5, cplx(0.3, 0.1), closed::calibrated()));
}
BENCHMARK(BM_ClosedNormalization)->Unit(benchmark::kMicrosecond);

void BM_MomentsOracle(benchmark::State& st) {
  const double q = st.range(0) / 100.0;
  for (auto _ : st) benchmark::DoNotOptimize(moments_oracle(q, 0.5));
}
BENCHMARK(BM_MomentsOracle)->Arg(102)->Arg(150)->Arg(220)->Unit(benchmark::kMillisecond);

void BM_MomentumAmplitudeOracle(benchmark::State& st) {
  for (auto _ : st) benchmark::DoNotOptimize(momentum_amplitude_oracle(1.5, 0.3, 1.0));
}
BENCHMARK(BM_MomentumAmplitudeOracle)->Unit(benchmark::kMicrosecond);

} // namespace
