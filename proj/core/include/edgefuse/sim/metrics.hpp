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
#include <span>
#include <string>
#include <vector>

#include "edgefuse/fusion/engine.hpp"
#include "edgefuse/sim/scenario.hpp"

namespace edgefuse::sim {

struct FusionTrace {
  std::string mode;
  std::string winner;
  std::optional<std::int64_t> t1_ms;
  std::optional<std::int64_t> t2_ms;
  std::optional<std::int64_t> t3_ms;
  std::optional<double> p_real;
  std::optional<std::int64_t> p_raw;
  std::optional<std::int64_t> p_clamped;
  std::optional<std::int64_t> p_word;
  std::optional<std::int64_t> splice_count;
  std::optional<std::int64_t> spoken_at_t2;
  std::optional<std::int64_t> spoken_at_fusion_first;
  bool recovery = false;
  bool degraded = false;

  static FusionTrace from(const fusion::FusionOutcome& o);
  bool operator==(const FusionTrace&) const = default;
};

struct MetricsRecord {
  std::string id;
  System system = System::AudoSight;
  std::optional<Track> predicted_track;  // absent for the single-model baselines
  Track truth_track = Track::NormalGeneric;
  std::optional<std::int64_t> ttft_ms;
  std::optional<std::int64_t> turnaround_ms;
  std::int64_t edge_calls = 0;
  std::int64_t cloud_calls = 0;
  std::int64_t fusion_calls = 0;
  std::int64_t editor_calls = 0;
  std::optional<FusionTrace> fusion;
  std::vector<std::string> flags;  // sorted
  std::string final_text;
  std::optional<std::string> error;

  bool urgent() const { return is_urgent(truth_track); }
  bool operator==(const MetricsRecord&) const = default;
};

// One JSON object per line with a fixed key order.
std::string to_jsonl(const MetricsRecord& r);
MetricsRecord parse_metrics_line(std::string_view line, const std::string& source = "<metrics>", std::size_t line_no = 0);

// Throws IoError.
void export_metrics(std::span<const MetricsRecord> records, const std::filesystem::path& path);
// Throws IoError or ParseError.
std::vector<MetricsRecord> load_metrics(const std::filesystem::path& path);

struct LatencySummary {
  std::size_t count = 0;  // records with a measured latency
  std::optional<double> mean_ttft_ms;
  std::optional<double> mean_turnaround_ms;
  std::optional<double> p50_ttft_ms;
  std::optional<double> p90_ttft_ms;
  std::optional<double> p50_turnaround_ms;
  std::optional<double> p90_turnaround_ms;
};

// Means and nearest-rank percentiles over records that produced speech.
LatencySummary summarize(std::span<const MetricsRecord> records);

}  // namespace edgefuse::sim
