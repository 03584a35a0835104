#include <benchmark/benchmark.h>

#include <memory>
#include <vector>

#include "curvcompat/catalog.hpp"
#include "curvcompat/compat.hpp"
#include "curvcompat/jet.hpp"
#include "curvcompat/local_geometry.hpp"
#include "curvcompat/random.hpp"

namespace cc = curvcompat;

static void BM_CompatDefect(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const auto g = cc::MetricValue::minkowski(n);
  const auto k = cc::random_gct({1}, cc::Dim(n));
  const auto b = cc::random_sym2({2}, cc::Dim(n));
  for (auto _ : state) benchmark::DoNotOptimize(cc::compat_defect(b, k, g).residual);
}
BENCHMARK(BM_CompatDefect)->Arg(4)->Arg(5);

static void BM_LocalGeometrySchwarzschild(benchmark::State& state) {
  const int order = static_cast<int>(state.range(0));
  const auto fx = cc::get_fixture("schwarzschild");
  const std::vector<double> p = fx.probes.front();
  for (auto _ : state) {
    const cc::LocalGeometry geom(fx.chart, p, order);
    benchmark::DoNotOptimize(geom.pack().scalar);
  }
}
BENCHMARK(BM_LocalGeometrySchwarzschild)->Arg(2)->Arg(4)->Unit(benchmark::kMicrosecond);

static void BM_JetMultiply(benchmark::State& state) {
  const int order = static_cast<int>(state.range(0));
  const auto space = std::make_shared<const cc::JetSpace>(4, order);
  std::vector<cc::Jet> x;
  for (int i = 0; i < 4; ++i) x.push_back(cc::Jet::variable(space, i, 0.1 * (i + 1), order));
  const cc::Jet a = x[0] * x[1] + x[2];
  const cc::Jet b = x[3] * x[3] - x[0];
  for (auto _ : state) benchmark::DoNotOptimize(a * b);
}
BENCHMARK(BM_JetMultiply)->Arg(2)->Arg(4);
BENCHMARK_MAIN();
