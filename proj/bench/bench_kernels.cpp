#include <benchmark/benchmark.h>
#include <map>

#include "swseg/metrics.hpp"
#include "swseg/synthetic.hpp"

using namespace swseg;

namespace {

const PointCloud& sheet(int extent) {
  static std::map<int, PointCloud> cache;
  auto it = cache.find(extent);
  if (it == cache.end())
    it = cache
             .emplace(extent, gen_synthetic(SynthKind::FoldedSheet,
                                            {{"extent", extent}, {"amplitude", 8}, {"period", 16}}, 1))
             .first;
  return it->second;
}

void BM_CandidatesSerial(benchmark::State& state) {
  const auto& c = sheet(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(candidate_table_serial(c, SlicerConfig{}));
  state.counters["points"] = static_cast<double>(c.size());
}

void BM_CandidatesParallel(benchmark::State& state) {
  const auto& c = sheet(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(candidate_table_parallel(c, SlicerConfig{}));
  state.counters["points"] = static_cast<double>(c.size());
}

void BM_PlanSerial(benchmark::State& state) {
  const auto& c = sheet(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(build_plan(c, SlicerConfig{}, Exec::Serial));
}

void BM_PlanParallel(benchmark::State& state) {
  const auto& c = sheet(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(build_plan(c, SlicerConfig{}, Exec::Parallel));
}

}  // namespace

BENCHMARK(BM_CandidatesSerial)->Arg(32)->Arg(64)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_CandidatesParallel)->Arg(32)->Arg(64)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_PlanSerial)->Arg(32)->Arg(64)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_PlanParallel)->Arg(32)->Arg(64)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
