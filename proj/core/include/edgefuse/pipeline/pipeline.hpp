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

#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "edgefuse/agents/editor.hpp"
#include "edgefuse/agents/experts.hpp"
#include "edgefuse/backends/backend.hpp"
#include "edgefuse/classify/classifier.hpp"
#include "edgefuse/fusion/engine.hpp"

namespace edgefuse::pipeline {

inline constexpr std::string_view kFailureNotice = "Sorry, I can't answer that right now. Please try again.";
inline constexpr std::string_view kResubmitNotice = "Sorry, I couldn't get an answer. Please ask again.";

struct PipelineConfig {
  classify::ClassifierConfig classifier;
  fusion::HandoffParams handoff;
  Millis router_overhead{0};  // on top of classifier.overhead

  std::shared_ptr<const classify::Classifier> classifier_plugin;
  std::shared_ptr<backends::StreamingBackend> edge;
  std::shared_ptr<backends::StreamingBackend> cloud;
  std::shared_ptr<backends::StreamingBackend> fusion;
  std::shared_ptr<backends::StreamingBackend> editor;
  std::shared_ptr<const agents::ExpertFixture> experts;

  // Throws ValidationError listing every missing plugin or bad parameter.
  void validate() const;
};

struct QueryResult {
  std::string query_id;
  Track track = Track::NormalGeneric;
  classify::UrgencyDecision urgency;
  classify::RouteDecision route;
  std::string final_text;
  std::optional<Millis> ttft;
  std::optional<Millis> turnaround;
  std::size_t edge_mllm_calls = 0;
  std::size_t cloud_mllm_calls = 0;
  std::size_t fusion_calls = 0;
  std::size_t editor_calls = 0;
  std::size_t expert_calls = 0;
  std::optional<fusion::FusionOutcome> fusion;
  std::optional<Millis> editor_latency;
  bool editor_fallback = false;
  bool failure_notice = false;     // nothing could be answered; a notice was spoken
  bool resubmit_suggested = false;
  bool degraded = false;
};

// Classifies, charges the classification overhead, dispatches on the track
// and speaks the answer through `tts`. Latencies are measured from entry
// to the first and last character handed to the queue.
// Throws ClassifierFailure if the classifier output is unusable.
QueryResult handle_query(const Query& q, const PipelineConfig& cfg, Clock& clock, fusion::TtsQueue& tts);
QueryResult handle_query(const Query& q, const PipelineConfig& cfg, Clock& clock);

struct EdgeCallTotals {
  std::size_t queries = 0;
  std::size_t edge_calls = 0;
};

EdgeCallTotals count_edge_calls(std::span<const QueryResult> results);

struct EdgeCallComparison {
  std::size_t system_calls = 0;
  std::size_t baseline_calls = 0;
  // (baseline - system) / baseline; absent when the baseline made no calls.
  std::optional<double> reduction;
};

EdgeCallComparison compare_edge_calls(std::size_t system_calls, std::size_t baseline_calls);

}  // namespace edgefuse::pipeline
