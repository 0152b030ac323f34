#include <benchmark/benchmark.h>

#include "qseg/qseg.hpp"

using namespace qseg;

namespace {

GrayImage synthetic(std::size_t n, std::size_t q) { return generate_synthetic({.n = n, .q = q, .seed = 42}).image; }

void BM_BuildCircuit(benchmark::State& st) {
  const GrayImage img = synthetic(static_cast<std::size_t>(st.range(0)), 3);
  for (auto _ : st) benchmark::DoNotOptimize(build_full_circuit(img, {}));
}
BENCHMARK(BM_BuildCircuit)->Arg(1)->Arg(2)->Arg(3);

void BM_SegmentBranch(benchmark::State& st) {
  const GrayImage img = synthetic(static_cast<std::size_t>(st.range(0)), static_cast<std::size_t>(st.range(1)));
  const Circuit c = build_full_circuit(img, {});
  for (auto _ : st) benchmark::DoNotOptimize(segment(img, {}, c));
}
BENCHMARK(BM_SegmentBranch)->Args({2, 3})->Args({3, 3})->Args({3, 8})->Unit(benchmark::kMillisecond);

void BM_SegmentDense(benchmark::State& st) {
  const GrayImage img = make_image(2, 2, {0, 1, 2, 3});
  PipelineConfig cfg;
  cfg.z = 0;
  cfg.backend = Backend::Dense;
  const Circuit c = build_full_circuit(img, cfg);
  for (auto _ : st) benchmark::DoNotOptimize(segment(img, cfg, c));
}
BENCHMARK(BM_SegmentDense)->Unit(benchmark::kMillisecond);

void BM_Oracle(benchmark::State& st) {
  const GrayImage img = synthetic(static_cast<std::size_t>(st.range(0)), 8);
  for (auto _ : st) benchmark::DoNotOptimize(adaptive_threshold_segment(img, 1, WindowShape::Cross, ZPolicy::Clamp));
}
BENCHMARK(BM_Oracle)->Arg(3)->Arg(6)->Arg(8);

}  // namespace
BENCHMARK_MAIN();
