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

#include "edgefuse/pipeline/pipeline.hpp"

#include <stdexcept>

#include "edgefuse/core/error.hpp"

namespace edgefuse::pipeline {

void PipelineConfig::validate() const {
  std::vector<std::string> problems;
  try {
    classifier.validate();
  } catch (const std::invalid_argument& e) {
    problems.emplace_back(e.what());
  }
  try {
    handoff.validate();
  } catch (const std::invalid_argument& e) {
    problems.emplace_back(e.what());
  }
  if (classifier.overhead < Millis{0} || router_overhead < Millis{0}) problems.emplace_back("negative overhead");
  if (!classifier_plugin) problems.emplace_back("no classifier configured");
  if (!edge) problems.emplace_back("no edge backend configured");
  if (!cloud) problems.emplace_back("no cloud backend configured");
  if (!fusion) problems.emplace_back("no fusion backend configured");
  if (!editor) problems.emplace_back("no editor backend configured");
  if (!experts) problems.emplace_back("no expert fixtures configured");
  if (!problems.empty()) throw ValidationError(std::move(problems));
}

namespace {

void speak_expert_payload(const agents::RawExpertResponse& raw, fusion::TtsQueue& tts) {
  if (!raw.payload.empty()) {
    tts.enqueue(raw.payload);
  } else {
    tts.enqueue(agents::rule_edit(raw.route, "", ""));
  }
}

// A backend that throws on open behaves like a stream failing at once.
backends::TokenStream open_stream(backends::StreamingBackend& backend, const backends::ModelRequest& request,
                                  Clock& clock) {
  try {
    return backend.open(request, clock);
  } catch (const std::exception&) {
    return backends::open_scripted_stream(backends::StreamScript::failing(Millis{0}), clock, backend.kind());
  }
}

// Streams one response into the queue; returns the terminal event.
TokenEvent stream_to_tts(backends::TokenStream& stream, fusion::TtsQueue& tts, Clock& clock) {
  std::optional<TokenEvent> terminal;
  stream.on_event([&](const TokenEvent& ev) {
    if (ev.terminal()) {
      terminal = ev;
    } else {
      tts.enqueue(ev.text);
    }
  });
  if (!clock.run_until([&] { return terminal.has_value(); })) {
    stream.cancel();
    terminal = TokenEvent{TokenEventKind::Error, {}, clock.now(), stream.source(), "stream went idle"};
  }
  stream.on_event(nullptr);
  return *terminal;
}

}  // namespace

QueryResult handle_query(const Query& q, const PipelineConfig& cfg, Clock& clock, fusion::TtsQueue& tts) {
  cfg.validate();
  if (tts.length() != 0) throw std::invalid_argument("handle_query needs an empty speech queue");
  const Timestamp start = clock.now();
  QueryResult r;
  r.query_id = q.id;

  r.urgency = classify::detect_urgency(q, *cfg.classifier_plugin, cfg.classifier);
  r.route = classify::route_query(q, *cfg.classifier_plugin, cfg.classifier);
  clock.wait_for(cfg.classifier.overhead + cfg.router_overhead);
  r.track = select_track(r.urgency.urgent, r.route.route);

  switch (r.track) {
    case Track::UrgentExpert: {
      ++r.expert_calls;
      const auto raw = agents::run_expert(r.route.route, q.frame, *cfg.experts, clock);
      speak_expert_payload(raw, tts);
      break;
    }
    case Track::NormalExpert: {
      ++r.expert_calls;
      const auto raw = agents::run_expert(r.route.route, q.frame, *cfg.experts, clock);
      ++r.editor_calls;
      const auto edited = agents::edit_response(raw, q, *cfg.editor, clock);
      r.editor_latency = edited.editor_latency;
      r.editor_fallback = edited.fallback;
      if (edited.fallback) {
        speak_expert_payload(raw, tts);
      } else {
        tts.enqueue(edited.text);
      }
      break;
    }
    case Track::NormalGeneric: {
      backends::ModelRequest request{q.text, q.frame, {{"query", q.text}}};
      ++r.cloud_mllm_calls;
      auto stream = open_stream(*cfg.cloud, request, clock);
      const TokenEvent end = stream_to_tts(stream, tts, clock);
      if (end.kind == TokenEventKind::Error) {
        r.resubmit_suggested = true;
        r.degraded = !stream.buffer().empty();
        tts.enqueue(r.degraded ? " " + std::string(kResubmitNotice) : std::string(kResubmitNotice));
      }
      break;
    }
    case Track::UrgentGeneric: {
      backends::ModelRequest request{q.text, q.frame, {{"query", q.text}}};
      ++r.edge_mllm_calls;
      auto edge = open_stream(*cfg.edge, request, clock);
      ++r.cloud_mllm_calls;
      auto cloud = open_stream(*cfg.cloud, request, clock);
      auto outcome = fusion::run_fusion(std::move(edge), std::move(cloud), *cfg.fusion, tts, cfg.handoff, clock,
                                        fusion::FusionContext{q.text, q.frame});
      if (outcome.fusion_started) ++r.fusion_calls;
      r.degraded = outcome.degraded;
      if (outcome.winner == fusion::Winner::BothFailed) {
        r.failure_notice = true;
        tts.enqueue(kFailureNotice);
      }
      r.fusion = std::move(outcome);
      break;
    }
  }

  r.final_text = tts.text();
  if (tts.first_enqueue_at()) r.ttft = *tts.first_enqueue_at() - start;
  if (tts.last_enqueue_at()) r.turnaround = *tts.last_enqueue_at() - start;
  return r;
}

QueryResult handle_query(const Query& q, const PipelineConfig& cfg, Clock& clock) {
  fusion::TtsQueue tts(clock, cfg.handoff.c);
  return handle_query(q, cfg, clock, tts);
}

EdgeCallTotals count_edge_calls(std::span<const QueryResult> results) {
  EdgeCallTotals t;
  for (const auto& r : results) {
    ++t.queries;
    t.edge_calls += r.edge_mllm_calls;
  }
  return t;
}

EdgeCallComparison compare_edge_calls(std::size_t system_calls, std::size_t baseline_calls) {
  EdgeCallComparison c{system_calls, baseline_calls, std::nullopt};
  if (baseline_calls > 0) {
    c.reduction = (static_cast<double>(baseline_calls) - static_cast<double>(system_calls)) /
                  static_cast<double>(baseline_calls);
  }
  return c;
}

}  // namespace edgefuse::pipeline
