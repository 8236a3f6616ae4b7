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
#include <vector>

#include "edgefuse/classify/lexicon.hpp"

namespace edgefuse::classify {
namespace {

const std::vector<std::string> kQueries = {
    "Quick, what is in front of me?",
    "Can you read the menu on this board for me?",
    "Who is the person standing by the door?",
    "Describe the room in detail, take your time.",
    "Is there a chair nearby?",
};

void BM_LexiconClassify(benchmark::State& state) {
  const Lexicon& lexicon = Lexicon::bundled();
  std::size_t i = 0;
  for (auto _ : state) {
    auto d = lexicon_classify(kQueries[i], lexicon);
    benchmark::DoNotOptimize(d);
    i = (i + 1) % kQueries.size();
  }
  state.SetItemsProcessed(state.iterations());
}
BENCHMARK(BM_LexiconClassify);

void BM_LexiconLongQuery(benchmark::State& state) {
  std::string text;
  for (int i = 0; i < state.range(0); ++i) text += kQueries[static_cast<std::size_t>(i) % kQueries.size()] + " ";
  const Lexicon& lexicon = Lexicon::bundled();
  for (auto _ : state) {
    auto d = lexicon_classify(text, lexicon);
    benchmark::DoNotOptimize(d);
  }
  state.SetBytesProcessed(static_cast<std::int64_t>(text.size()) * state.iterations());
}
BENCHMARK(BM_LexiconLongQuery)->Arg(4)->Arg(64);

}  // namespace
}  // namespace edgefuse::classify
