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

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <utility>

#include "edgefuse/core/clock.hpp"
#include "edgefuse/core/types.hpp"

namespace edgefuse::agents {

inline constexpr Millis kDefaultExpertLatency{40};

struct RawExpertResponse {
  RouteLabel route = RouteLabel::Object;
  std::string payload;  // empty: nothing detected
  Millis latency{0};

  bool operator==(const RawExpertResponse&) const = default;
};

struct ExpertEntry {
  std::string payload;
  Millis latency = kDefaultExpertLatency;

  bool operator==(const ExpertEntry&) const = default;
};

// (frame id, route) -> canned expert output.
//
// File format (JSON):
//   {"version": 1, "entries": [{"frame": "menu-01", "route": "OCR",
//                               "payload": "Soup $4.99", "latency_ms": 40}, ...]}
class ExpertFixture {
 public:
  ExpertFixture() = default;

  // Throws std::invalid_argument for the Generic route or a negative latency.
  void add(std::string frame, RouteLabel route, std::string payload, Millis latency = kDefaultExpertLatency);
  std::optional<ExpertEntry> find(std::string_view frame, RouteLabel route) const;
  std::size_t size() const { return entries_.size(); }
  // Entries of `other` replace ours on key collisions.
  void merge(const ExpertFixture& other);

  static ExpertFixture parse(std::string_view json_text, const std::string& source = "<experts>");
  static ExpertFixture load(const std::filesystem::path& path);
  static const ExpertFixture& bundled();

  Millis missing_latency = kDefaultExpertLatency;

 private:
  std::map<std::pair<std::string, RouteLabel>, ExpertEntry, std::less<>> entries_;
};

// Looks up (frame, route), charges its latency on the clock and returns the
// payload. A missing entry is an empty payload charged `missing_latency`.
// Throws std::invalid_argument for the Generic route.
RawExpertResponse run_expert(RouteLabel route, const FrameRef& frame, const ExpertFixture& fixtures, Clock& clock);

}  // namespace edgefuse::agents
