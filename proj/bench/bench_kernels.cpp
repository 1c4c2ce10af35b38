#include <benchmark/benchmark.h>

#include "cactus/builder.hpp"
#include "cactus/generators.hpp"
#include "cactus/paths.hpp"
#include "cactus/separation.hpp"
#include "cactus/verify.hpp"

using namespace cactus;

namespace {

const MetricGraph& disk() {
  static const MetricGraph g = [] {
    PlanarDiskSpec spec;
    spec.rings = 8;
    return subdivide(planar_disk(spec), Rational(1, 2));
  }();
  return g;
}

const CactusApprox& approx() {
  static const CactusApprox a = [] {
    RandomCactusSpec spec;
    spec.cycle_count = 8;
    spec.seed = 5;
    return build_cactus(random_cactus(spec), 0, Rational(1), Rational(40));
  }();
  return a;
}

void BM_DistanceTable(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(DistanceTable::compute(disk()));
}
void BM_DistanceTableSerial(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(DistanceTable::compute_serial(disk()));
}

void sharp(benchmark::State& state, bool parallel) {
  auto g = grid_graph(14, 14);
  SharpOptions opts;
  opts.granularity = Rational(1);
  for (auto _ : state) {
    auto r = parallel ? check_sharp(g, Rational(1), opts) : check_sharp_serial(g, Rational(1), opts);
    benchmark::DoNotOptimize(r.pairs_checked);
  }
}
void BM_CheckSharp(benchmark::State& state) { sharp(state, true); }
void BM_CheckSharpSerial(benchmark::State& state) { sharp(state, false); }

void BM_Distortion(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(distortion_profile(approx()).pairs);
}
void BM_DistortionSerial(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(distortion_profile_serial(approx()).pairs);
}

}  // namespace

BENCHMARK(BM_DistanceTable)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_DistanceTableSerial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_CheckSharp)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_CheckSharpSerial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Distortion)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_DistortionSerial)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
