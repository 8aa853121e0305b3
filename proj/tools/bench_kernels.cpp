/* Copyright 2026 The phasenrs Authors. All Rights Reserved.
Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at
    http://www.apache.org/licenses/LICENSE-2.0
Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
==============================================================================*/

// Serial reference vs OpenMP kernels on a reduced single_line grid.

#include <benchmark/benchmark.h>

#include "phasenrs/pipeline.hpp"

namespace {

using namespace pnrs;

const RunConfig& bench_config() {
  static const RunConfig rc = [] {
    ConfigDoc doc = ConfigDoc::parse(default_config_text("single_line"));
    doc.set("scan", "count", ConfigValue{std::int64_t{24}, 0});
    return build_run_config(doc);
  }();
  return rc;
}

// Also warms the FFT plan cache, so no timed iteration pays for planning.
const PhantasyRun& bench_run() {
  static const PhantasyRun r = run_phantasy(bench_config());
  return r;
}

void BM_DetectorSerial(benchmark::State& st) {
  bench_run();
  for (auto _ : st) benchmark::DoNotOptimize(detector_intensity_serial(bench_config().experiment));
}
void BM_DetectorOmp(benchmark::State& st) {
  bench_run();
  for (auto _ : st) benchmark::DoNotOptimize(detector_intensity(bench_config().experiment));
}
void BM_FilterSerial(benchmark::State& st) {
  bench_run();
  for (auto _ : st) benchmark::DoNotOptimize(combined_filter_serial(bench_run().grid, bench_config().filter));
}
void BM_FilterOmp(benchmark::State& st) {
  bench_run();
  for (auto _ : st) benchmark::DoNotOptimize(combined_filter(bench_run().grid, bench_config().filter));
}
void BM_SweepSerial(benchmark::State& st) {
  const auto& rc = bench_config();
  bench_run();
  for (auto _ : st)
    benchmark::DoNotOptimize(sweep_phantasy_serial(bench_run().fit, rc.experiment.target, rc.sweep_t1_ns, rc.sweep_t2_ns));
}
void BM_SweepOmp(benchmark::State& st) {
  const auto& rc = bench_config();
  bench_run();
  for (auto _ : st)
    benchmark::DoNotOptimize(sweep_phantasy(bench_run().fit, rc.experiment.target, rc.sweep_t1_ns, rc.sweep_t2_ns));
}

BENCHMARK(BM_DetectorSerial)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_DetectorOmp)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_FilterSerial)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_FilterOmp)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_SweepSerial)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_SweepOmp)->Unit(benchmark::kMillisecond)->UseRealTime();

}  // namespace

BENCHMARK_MAIN();
