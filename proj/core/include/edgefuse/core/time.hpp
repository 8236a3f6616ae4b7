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

#include <chrono>
#include <compare>
#include <cstdint>

namespace edgefuse {

using Millis = std::chrono::milliseconds;

// Milliseconds since run start. Virtual and wall clocks share this type.
class Timestamp {
 public:
  constexpr Timestamp() = default;
  constexpr explicit Timestamp(Millis since_start) : since_start_(since_start) {}

  static constexpr Timestamp from_ms(std::int64_t ms) { return Timestamp{Millis{ms}}; }

  constexpr Millis since_start() const { return since_start_; }
  constexpr std::int64_t ms() const { return since_start_.count(); }
  constexpr double seconds() const { return static_cast<double>(since_start_.count()) / 1000.0; }

  constexpr Timestamp operator+(Millis d) const { return Timestamp{since_start_ + d}; }
  constexpr Millis operator-(Timestamp other) const { return since_start_ - other.since_start_; }

  constexpr auto operator<=>(const Timestamp&) const = default;

 private:
  Millis since_start_{0};
};

}  // namespace edgefuse
