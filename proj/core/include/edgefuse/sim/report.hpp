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

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "edgefuse/classify/evaluation.hpp"
#include "edgefuse/sim/metrics.hpp"
#include "edgefuse/sim/runner.hpp"

namespace edgefuse::sim {

struct SystemSummary {
  System system = System::AudoSight;
  LatencySummary urgent;
  LatencySummary normal;
  LatencySummary all;
  std::int64_t edge_calls = 0;
  std::int64_t cloud_calls = 0;
  std::size_t failed = 0;  // records that produced no speech
};

// (baseline - system) / baseline; absent when either side is missing or the baseline is 0.
std::optional<double> reduction(std::optional<double> system, std::optional<double> baseline);

struct ComparisonReport {
  std::uint64_t seed = 0;
  fusion::HandoffMode mode = fusion::HandoffMode::Literal;
  std::size_t records = 0;
  std::vector<SystemSummary> systems;  // audo-sight, edge-only, cloud-only

  std::optional<double> urgent_ttft_reduction_vs_cloud;
  std::optional<double> normal_ttft_reduction_vs_cloud;
  std::optional<double> turnaround_ratio_vs_cloud;  // audo-sight mean / cloud-only mean, all records
  std::optional<double> edge_call_reduction_vs_edge_only;

  classify::EvaluationReport classifier;

  const SystemSummary& summary(System s) const;
  std::string render_text() const;
  // Stable key order; byte-identical for identical inputs.
  std::string to_json() const;
};

struct ComparisonRun {
  ComparisonReport report;
  std::map<System, std::vector<MetricsRecord>> records;
};

ComparisonReport build_report(const Scenario& s, const Settings& settings,
                              const std::map<System, std::vector<MetricsRecord>>& records);

// Runs all three systems and aggregates them.
ComparisonRun compare_systems(const Scenario& s, const Overrides& extra = {});

}  // namespace edgefuse::sim
