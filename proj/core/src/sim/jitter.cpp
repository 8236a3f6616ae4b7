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

#include "edgefuse/sim/jitter.hpp"

#include <random>

namespace edgefuse::sim {

namespace {

std::uint64_t fnv1a(std::uint64_t h, std::string_view s) {
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

}  // namespace

std::uint64_t derive_seed(std::uint64_t seed, std::string_view record_id, std::string_view stream) {
  std::uint64_t h = fnv1a(0xcbf29ce484222325ULL, record_id);
  h = fnv1a(h ^ 0xff, stream);
  return splitmix64(seed ^ splitmix64(h));
}

backends::StreamScript apply_jitter(const backends::StreamScript& script, Millis jitter, std::uint64_t seed) {
  if (jitter <= Millis{0}) return script;
  std::mt19937_64 rng(seed);
  const auto span = static_cast<std::uint64_t>(jitter.count()) + 1;
  auto draw = [&] { return Millis{static_cast<std::int64_t>(rng() % span)}; };
  backends::StreamScript out = script;
  out.ttft += draw();
  for (auto& t : out.tokens) t.delay += draw();
  return out;
}

}  // namespace edgefuse::sim
