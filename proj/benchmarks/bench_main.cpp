#include <benchmark/benchmark.h>

#include "pspectral/critical_set.hpp"
#include "pspectral/eigen_bounds.hpp"
#include "pspectral/frequency.hpp"
#include "pspectral/ode_model.hpp"
#include "pspectral/ptrig.hpp"

namespace {

void BM_SinP(benchmark::State& state) {
  double x = 0.1;
  for (auto _ : state) {
    benchmark::DoNotOptimize(pspectral::sin_p(1.5, x));
    x += 1e-3;
    if (x > 4.0) x = 0.1;
  }
}
BENCHMARK(BM_SinP);

void BM_ProfileFlatRadial(benchmark::State& state) {
  const pspectral::ModelProblem pr{2.0, 3.0, 0.0, 1.0,
                                   pspectral::ModelFamily::FlatRadial, 0.0};
  for (auto _ : state) benchmark::DoNotOptimize(pspectral::profile(pr).b);
}
BENCHMARK(BM_ProfileFlatRadial)->Unit(benchmark::kMillisecond);

void BM_SharpGap(benchmark::State& state) {
  const double p = static_cast<double>(state.range(0)) / 10.0;
  for (auto _ : state) benchmark::DoNotOptimize(pspectral::sharp_gap(p, 3.0, -1.0, 2.0));
}
BENCHMARK(BM_SharpGap)->Arg(15)->Arg(20)->Arg(30)->Unit(benchmark::kMillisecond);

void BM_FrequencyEval(benchmark::State& state) {
  const pspectral::HarmonicPolynomial u(pspectral::real_power(3, static_cast<int>(state.range(0))));
  const std::vector<double> x{0.1, -0.2, 0.05};
  for (auto _ : state) benchmark::DoNotOptimize(pspectral::frequency_eval(u, x, 0.5).N);
}
BENCHMARK(BM_FrequencyEval)->Arg(2)->Arg(4)->Arg(8);

void BM_Minkowski(benchmark::State& state) {
  const auto u = pspectral::real_power(2, 3);
  for (auto _ : state) {
    benchmark::DoNotOptimize(pspectral::minkowski_report(u, {0.02, 0.05, 0.1}).exponent);
  }
}
BENCHMARK(BM_Minkowski)->Unit(benchmark::kMillisecond);

}  // namespace
