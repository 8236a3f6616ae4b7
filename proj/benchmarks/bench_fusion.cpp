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

#include <string>

#include "edgefuse/core/utf8.hpp"
#include "edgefuse/fusion/engine.hpp"
#include "edgefuse/fusion/rule_fusion.hpp"

namespace edgefuse {
namespace {

using backends::StreamScript;

std::string sentence(std::size_t words) {
  std::string s;
  for (std::size_t i = 0; i < words; ++i) {
    if (i) s += ' ';
    s += (i % 3 == 0) ? "sidewalk" : (i % 3 == 1) ? "bench" : "ahead";
  }
  return s + ".";
}

void BM_RunFusion(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto edge = StreamScript::from_text(sentence(n), Millis{150}, Millis{40});
  const auto cloud = StreamScript::from_text(sentence(n + 4), Millis{2400}, Millis{30});
  fusion::HandoffParams params;
  params.mode = state.range(1) ? fusion::HandoffMode::Additive : fusion::HandoffMode::Literal;
  for (auto _ : state) {
    VirtualClock clock;
    fusion::TtsQueue tts(clock, params.c);
    fusion::RuleFusionBackend backend(Millis{250}, Millis{40});
    auto out = fusion::run_fusion(backends::open_scripted_stream(edge, clock, BackendKind::Edge),
                                  backends::open_scripted_stream(cloud, clock, BackendKind::Cloud), backend, tts,
                                  params, clock);
    benchmark::DoNotOptimize(out.final_text.data());
  }
  state.SetItemsProcessed(state.iterations());
}
BENCHMARK(BM_RunFusion)->ArgsProduct({{8, 32, 128}, {0, 1}});

void BM_ShiftToWordBoundary(benchmark::State& state) {
  const std::u32string text = utf8::decode(sentence(static_cast<std::size_t>(state.range(0))));
  std::size_t p = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(fusion::shift_to_word_boundary(text, p, false));
    p = (p + 7) % text.size();
  }
}
BENCHMARK(BM_ShiftToWordBoundary)->Arg(16)->Arg(256);

void BM_PredictSpokenIndex(benchmark::State& state) {
  fusion::HandoffParams params;
  params.mode = fusion::HandoffMode::Additive;
  std::int64_t t2 = 1000;
  for (auto _ : state) {
    benchmark::DoNotOptimize(fusion::predict_spoken_index(params, Timestamp::from_ms(150), Timestamp::from_ms(t2)));
    t2 = 150 + (t2 + 13) % 9000;
  }
}
BENCHMARK(BM_PredictSpokenIndex);

}  // namespace
}  // namespace edgefuse
