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
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "edgefuse/backends/backend.hpp"
#include "edgefuse/fusion/handoff.hpp"

namespace edgefuse::sim {

inline constexpr int kScenarioSchema = 1;

enum class System { AudoSight, EdgeOnly, CloudOnly };

std::string_view to_string(System s);  // "audo-sight", "edge-only", "cloud-only"
std::optional<System> parse_system(std::string_view s);
inline constexpr System kAllSystems[] = {System::AudoSight, System::EdgeOnly, System::CloudOnly};

// "lexicon": the bundled lexicon classifier. "truth": an oracle echoing each
// record's ground truth, for workloads whose texts are not lexicon-separable.
enum class ClassifierChoice { Lexicon, Truth };

// Optional settings layered over the defaults. Later layers win.
struct Overrides {
  std::optional<double> urgency_threshold;
  std::optional<double> route_threshold;
  std::optional<fusion::HandoffMode> handoff_mode;
  std::optional<double> c;
  std::optional<double> r_t;
  std::optional<double> k;
  std::optional<std::int64_t> classifier_overhead_ms;
  std::optional<std::int64_t> router_overhead_ms;
  std::optional<std::int64_t> editor_latency_ms;
  std::optional<std::int64_t> fusion_ttft_ms;
  std::optional<std::int64_t> jitter_ms;
  std::optional<ClassifierChoice> classifier;

  // Fields set in `top` replace ours.
  void merge(const Overrides& top);
  bool operator==(const Overrides&) const = default;
};

struct GroundTruth {
  bool urgent = false;
  RouteLabel route = RouteLabel::Generic;

  Track track() const { return select_track(urgent, route); }
  bool operator==(const GroundTruth&) const = default;
};

struct ExpertSpec {
  RouteLabel route = RouteLabel::Object;
  std::string payload;
  Millis latency{40};

  bool operator==(const ExpertSpec&) const = default;
};

struct RecordScripts {
  std::optional<backends::StreamScript> edge;
  std::optional<backends::StreamScript> cloud;
  std::optional<backends::StreamScript> fusion;  // rule-based stand-in when absent
  std::optional<backends::StreamScript> editor;  // rule-based stand-in when absent

  bool operator==(const RecordScripts&) const = default;
};

struct ScenarioRecord {
  std::string id;
  std::string query;
  std::string frame;
  GroundTruth truth;
  RecordScripts scripts;
  std::vector<ExpertSpec> experts;

  bool operator==(const ScenarioRecord&) const = default;
};

// Line-delimited JSON. The first line is a header:
//   {"kind":"header","schema":1,"seed":7,"overrides":{"handoff_mode":"additive",...}}
// then one record per line:
//   {"kind":"record","id":"q001","query":"...","frame":"menu-01",
//    "truth":{"urgent":true,"route":"OCR"},
//    "scripts":{"edge":SCRIPT,"cloud":SCRIPT,"fusion":SCRIPT,"editor":SCRIPT},
//    "experts":[{"route":"OCR","payload":"Soup $4.99","latency_ms":40}]}
// SCRIPT is {"ttft_ms":150,"tokens":[["Hi",0],[" there",40]],"terminal":"end"}
// or {"ttft_ms":150,"text":"Hi there","gap_ms":40,"terminal":"end"}.
// Unknown fields are rejected. Blank lines are skipped.
struct Scenario {
  int schema = kScenarioSchema;
  std::uint64_t seed = 0;
  Overrides overrides;
  std::vector<ScenarioRecord> records;

  bool operator==(const Scenario&) const = default;
};

// Throws ParseError (file, line, field) for malformed input and
// ValidationError listing every semantic violation.
Scenario parse_scenario(std::string_view text, const std::string& source = "<scenario>");
Scenario load_scenario(const std::filesystem::path& path);

// Throws ValidationError listing every violation.
void validate_scenario(const Scenario& s);

std::string serialize_scenario(const Scenario& s);

}  // namespace edgefuse::sim
