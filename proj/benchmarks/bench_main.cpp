// Copyright 2026 The wids3 Authors
// SPDX-License-Identifier: Apache-2.0

#include <benchmark/benchmark.h>

#include "wids3/csv.hpp"
#include "wids3/engine.hpp"
#include "wids3/pcap.hpp"
#include "wids3/synth.hpp"

namespace wids {
namespace {

const std::vector<FrameRecord>& flood_trace() {
  static const auto frames = gen(Scenario::defaults(ScenarioKind::AuthFlood));
  return frames;
}

void BM_PcapParse(benchmark::State& state) {
  const auto bytes = pcap_bytes(flood_trace());
  for (auto _ : state) benchmark::DoNotOptimize(read_pcap(bytes));
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(flood_trace().size()));
  state.SetBytesProcessed(state.iterations() * static_cast<std::int64_t>(bytes.size()));
}
BENCHMARK(BM_PcapParse)->Unit(benchmark::kMillisecond);

void BM_CsvParse(benchmark::State& state) {
  const auto text = write_csv(flood_trace());
  for (auto _ : state) benchmark::DoNotOptimize(read_csv_text(text));
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(flood_trace().size()));
}
BENCHMARK(BM_CsvParse)->Unit(benchmark::kMillisecond);

void BM_EngineFlood(benchmark::State& state) {
  const auto cfg = config_for(Scenario::defaults(ScenarioKind::AuthFlood));
  for (auto _ : state) benchmark::DoNotOptimize(analyze(flood_trace(), cfg));
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(flood_trace().size()));
}
BENCHMARK(BM_EngineFlood)->Unit(benchmark::kMillisecond);

void BM_EngineMixed(benchmark::State& state) {
  auto s = Scenario::defaults(ScenarioKind::Mixed);
  s.seed = static_cast<std::uint64_t>(state.range(0));
  const auto frames = gen(s);
  const auto cfg = config_for(s);
  for (auto _ : state) benchmark::DoNotOptimize(analyze(frames, cfg));
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(frames.size()));
}
BENCHMARK(BM_EngineMixed)->Arg(1)->Arg(2)->Unit(benchmark::kMillisecond);

void BM_SynthGen(benchmark::State& state) {
  const auto kind = static_cast<ScenarioKind>(state.range(0));
  const auto s = Scenario::defaults(kind);
  std::size_t n = 0;
  for (auto _ : state) {
    auto frames = gen(s);
    n = frames.size();
    benchmark::DoNotOptimize(frames);
  }
  state.SetLabel(std::string(to_string(kind)));
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(n));
}
BENCHMARK(BM_SynthGen)
    ->Arg(static_cast<int>(ScenarioKind::AuthFlood))
    ->Arg(static_cast<int>(ScenarioKind::BeaconFlood))
    ->Arg(static_cast<int>(ScenarioKind::Mixed))
    ->Unit(benchmark::kMillisecond);

}  // namespace
}  // namespace wids

BENCHMARK_MAIN();
