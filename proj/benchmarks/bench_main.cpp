#include <benchmark/benchmark.h>

#include "levysearch/steplaw.hpp"
#include "levysearch/target.hpp"
#include "levysearch/walk.hpp"

using namespace levysearch;

namespace {

constexpr double kSide = 100.0;

void BM_SampleLevy(benchmark::State& state) {
  const StepSampler sampler(WalkSpec::levy(static_cast<double>(state.range(0)) / 10.0, 50));
  Rng rng = Rng::stream(1, 0);
  for (auto _ : state) benchmark::DoNotOptimize(sampler(rng));
}
BENCHMARK(BM_SampleLevy)->Arg(15)->Arg(20)->Arg(30);

void BM_SampleTwoScales(benchmark::State& state) {
  const StepSampler sampler(WalkSpec::two_scales(40, 0.1));
  Rng rng = Rng::stream(1, 0);
  for (auto _ : state) benchmark::DoNotOptimize(sampler(rng));
}
BENCHMARK(BM_SampleTwoScales);

void BM_TorusStep(benchmark::State& state) {
  const StepSampler sampler(WalkSpec::torus_levy(2, kSide * kSide));
  Rng rng = Rng::stream(1, 0);
  TorusWalkState walk{wrap({0, 0}, kSide), 0, 0.0};
  for (auto _ : state) benchmark::DoNotOptimize(step(walk, sampler, rng));
}
BENCHMARK(BM_TorusStep);

// Detector queries at uniform points, for each target shape.
void BM_Detect(benchmark::State& state) {
  const TorusPoint c = wrap({0, 0}, kSide);
  const Target targets[] = {Target::disc(c, 5), Target::segment(c, 10, 0.3),
                            Target::square_perimeter(c, 10, 0.3), Target::lshape(c, 10, 0.3)};
  const Target& t = targets[state.range(0)];
  Rng rng = Rng::stream(1, 0);
  for (auto _ : state) {
    const TorusPoint p = wrap({kSide * rng.uniform(), kSide * rng.uniform()}, kSide);
    benchmark::DoNotOptimize(t.detects(p));
  }
}
BENCHMARK(BM_Detect)->DenseRange(0, 3);

void BM_SearchCauchy(benchmark::State& state) {
  const double side = static_cast<double>(state.range(0));
  const StepSampler sampler(WalkSpec::torus_levy(2, side * side));
  const Target target = Target::disc(wrap({side / 2 - 1, 0}, side), 2.5);
  std::uint64_t trial = 0;
  for (auto _ : state) {
    Rng rng = Rng::stream(1, trial++);
    benchmark::DoNotOptimize(
        run_until(sampler, [&](const TorusPoint& p) { return target.detects(p); }, wrap({0, 0}, side), Caps{}, rng));
  }
}
BENCHMARK(BM_SearchCauchy)->Arg(32)->Arg(100);

}  // namespace

BENCHMARK_MAIN();
