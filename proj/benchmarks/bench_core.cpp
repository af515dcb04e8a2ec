#include <benchmark/benchmark.h>

#include <random>

#include "trk/enumerate.hpp"
#include "trk/experiment.hpp"
#include "trk/intersection.hpp"
#include "trk/overlay.hpp"

using namespace trk;

namespace {

std::vector<std::pair<NormalCurve, NormalCurve>> pairs(int bound, int n) {
  const auto curves = enumerate_curves(chart_s05(), bound);
  std::mt19937_64 rng(1);
  std::uniform_int_distribution<std::size_t> pick(0, curves.size() - 1);
  std::vector<std::pair<NormalCurve, NormalCurve>> out;
  for (int k = 0; k < n; ++k) out.emplace_back(curves[pick(rng)], curves[pick(rng)]);
  return out;
}

void BM_Intersection(benchmark::State& state) {
  const auto ps = pairs(4, 256);
  std::size_t k = 0;
  for (auto _ : state) {
    const auto& [a, b] = ps[k++ % ps.size()];
    benchmark::DoNotOptimize(intersection_number(a, b));
  }
}
BENCHMARK(BM_Intersection);

void BM_OverlayIntersection(benchmark::State& state) {
  const auto ps = pairs(4, 256);
  std::size_t k = 0;
  for (auto _ : state) {
    const auto& [a, b] = ps[k++ % ps.size()];
    benchmark::DoNotOptimize(overlay_intersection(a, b));
  }
}
BENCHMARK(BM_OverlayIntersection);

void BM_ExtremeRays(benchmark::State& state) {
  const TrainTrack t = adapted_track(state.range(0) == 0 ? "s05" : "s12").track;
  for (auto _ : state) benchmark::DoNotOptimize(extreme_ray_measures(t));
}
BENCHMARK(BM_ExtremeRays)->Arg(0)->Arg(1);

void BM_TrainpathVertexMeasures(benchmark::State& state) {
  const TrainTrack t = adapted_track("s05").track;
  for (auto _ : state) benchmark::DoNotOptimize(trainpath_vertex_measures(t));
}
BENCHMARK(BM_TrainpathVertexMeasures);

void BM_UniverseBuild(benchmark::State& state) {
  for (auto _ : state) {
    const CurveGraphIndex g(chart_s05(), static_cast<int>(state.range(0)), 8);
    benchmark::DoNotOptimize(g.size());
  }
}
BENCHMARK(BM_UniverseBuild)->Arg(3)->Arg(4)->Unit(benchmark::kMillisecond);

void BM_Distance(benchmark::State& state) {
  const auto ps = pairs(4, 256);
  for (auto _ : state) {
    // fresh index so the cache does not answer
    const CurveGraphIndex g(chart_s05(), 4, 8);
    for (const auto& [a, b] : ps) benchmark::DoNotOptimize(g.distance(a, b));
  }
}
BENCHMARK(BM_Distance)->Unit(benchmark::kMillisecond);

void BM_GuidedSequence(benchmark::State& state) {
  const TrainTrack t = adapted_track("s05").track;
  const auto vc = vertex_cycles(t);
  auto rng = task_rng(1, 0);
  const Measure guide = random_guide(t, vc, 10, true, rng);
  for (auto _ : state) benchmark::DoNotOptimize(run_splitting_sequence(t, guide, 60));
}
BENCHMARK(BM_GuidedSequence)->Unit(benchmark::kMillisecond);

}  // namespace
BENCHMARK_MAIN();
