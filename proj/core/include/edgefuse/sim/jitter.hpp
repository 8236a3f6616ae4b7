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

#pragma once

#include <cstdint>
#include <string_view>

#include "edgefuse/backends/backend.hpp"

namespace edgefuse::sim {

// Stable 64-bit seed for one (scenario seed, record, stream) triple.
std::uint64_t derive_seed(std::uint64_t seed, std::string_view record_id, std::string_view stream);

// Adds an independent uniform draw in [0, jitter] ms to the ttft and to every
// token delay. jitter <= 0 returns the script unchanged.
backends::StreamScript apply_jitter(const backends::StreamScript& script, Millis jitter, std::uint64_t seed);

}  // namespace edgefuse::sim
