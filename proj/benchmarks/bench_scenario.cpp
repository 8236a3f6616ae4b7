// Copyright 2026 The edgefuse Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <benchmark/benchmark.h>

#include <filesystem>

#include "edgefuse/sim/runner.hpp"
#include "edgefuse/sim/scenario.hpp"

namespace edgefuse::sim {
namespace {

const Scenario& mixed_workload() {
  static const Scenario s = load_scenario(std::filesystem::path(EDGEFUSE_SOURCE_DIR) / "scenarios/mixed_workload.jsonl");
  return s;
}

void BM_ParseScenario(benchmark::State& state) {
  const std::string text = serialize_scenario(mixed_workload());
  for (auto _ : state) {
    auto s = parse_scenario(text);
    benchmark::DoNotOptimize(s.records.data());
  }
  state.SetBytesProcessed(static_cast<std::int64_t>(text.size()) * state.iterations());
}
BENCHMARK(BM_ParseScenario);

void BM_RunScenario(benchmark::State& state) {
  const auto system = kAllSystems[state.range(0)];
  const Scenario& s = mixed_workload();
  for (auto _ : state) {
    auto records = run_scenario(s, system);
    benchmark::DoNotOptimize(records.data());
  }
  state.SetLabel(std::string(to_string(system)));
  state.SetItemsProcessed(static_cast<std::int64_t>(s.records.size()) * state.iterations());
}
BENCHMARK(BM_RunScenario)->DenseRange(0, 2)->Unit(benchmark::kMillisecond);

}  // namespace
}  // namespace edgefuse::sim
