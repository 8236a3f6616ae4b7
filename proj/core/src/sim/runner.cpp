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

#include "edgefuse/sim/runner.hpp"

#include <algorithm>
#include <memory>

#include "edgefuse/agents/editor.hpp"
#include "edgefuse/classify/lexicon.hpp"
#include "edgefuse/core/error.hpp"
#include "edgefuse/fusion/rule_fusion.hpp"
#include "edgefuse/pipeline/pipeline.hpp"
#include "edgefuse/sim/jitter.hpp"

namespace edgefuse::sim {

Settings Settings::resolve(const Overrides& scenario, const Overrides& extra) {
  Overrides o = scenario;
  o.merge(extra);
  Settings s;
  if (o.urgency_threshold) s.classifier.urgency_threshold = *o.urgency_threshold;
  if (o.route_threshold) s.classifier.route_threshold = *o.route_threshold;
  if (o.classifier_overhead_ms) s.classifier.overhead = Millis{*o.classifier_overhead_ms};
  if (o.handoff_mode) s.handoff.mode = *o.handoff_mode;
  if (o.c) s.handoff.c = *o.c;
  if (o.r_t) s.handoff.r_t = *o.r_t;
  if (o.k) s.handoff.k = *o.k;
  if (o.router_overhead_ms) s.router_overhead = Millis{*o.router_overhead_ms};
  if (o.editor_latency_ms) s.editor_latency = Millis{*o.editor_latency_ms};
  if (o.fusion_ttft_ms) s.fusion_ttft = Millis{*o.fusion_ttft_ms};
  if (o.jitter_ms) s.jitter = Millis{*o.jitter_ms};
  if (o.classifier) s.classifier_choice = *o.classifier;

  std::vector<std::string> problems;
  try {
    s.classifier.validate();
  } catch (const std::invalid_argument& e) {
    problems.emplace_back(e.what());
  }
  try {
    s.handoff.validate();
  } catch (const std::invalid_argument& e) {
    problems.emplace_back(e.what());
  }
  for (Millis m : {s.classifier.overhead, s.router_overhead, s.editor_latency, s.fusion_ttft, s.jitter}) {
    if (m < Millis{0}) {
      problems.emplace_back("latency settings must be non-negative");
      break;
    }
  }
  if (!problems.empty()) throw ValidationError(std::move(problems));
  return s;
}

classify::ClassDistribution TruthClassifier::classify(std::string_view) const {
  std::map<std::string, double> scores = {
      {std::string(classify::kUrgentLabel), truth_.urgent ? 1.0 : 0.0},
      {"Object", 0.0},
      {"OCR", 0.0},
      {"Face", 0.0},
  };
  if (truth_.route != RouteLabel::Generic) scores[std::string(to_string(truth_.route))] = 1.0;
  return classify::ClassDistribution(std::move(scores));
}

namespace {

backends::StreamScript jittered(const backends::StreamScript& script, const Settings& settings, std::uint64_t seed,
                                const ScenarioRecord& record, std::string_view stream) {
  return apply_jitter(script, settings.jitter, derive_seed(seed, record.id, stream));
}

void finish_flags(MetricsRecord& m) {
  std::sort(m.flags.begin(), m.flags.end());
  m.flags.erase(std::unique(m.flags.begin(), m.flags.end()), m.flags.end());
}

MetricsRecord run_baseline(const ScenarioRecord& record, System system, const Settings& settings, std::uint64_t seed) {
  MetricsRecord m;
  m.id = record.id;
  m.system = system;
  m.truth_track = record.truth.track();

  const bool edge = system == System::EdgeOnly;
  const auto& script = edge ? record.scripts.edge : record.scripts.cloud;
  if (!script) {
    m.error = std::string("missing ") + (edge ? "edge" : "cloud") + " script";
    m.flags.emplace_back("failed");
    return m;
  }
  VirtualClock clock;
  fusion::TtsQueue tts(clock, settings.handoff.c);
  const auto kind = edge ? BackendKind::Edge : BackendKind::Cloud;
  auto stream = backends::open_scripted_stream(jittered(*script, settings, seed, record, edge ? "edge" : "cloud"),
                                               clock, kind);
  (edge ? m.edge_calls : m.cloud_calls) = 1;

  std::optional<TokenEvent> terminal;
  stream.on_event([&](const TokenEvent& ev) {
    if (ev.terminal()) {
      terminal = ev;
    } else {
      tts.enqueue(ev.text);
    }
  });
  clock.run_until([&] { return terminal.has_value(); });
  stream.on_event(nullptr);

  if (!terminal || terminal->kind == TokenEventKind::Error) {
    m.flags.emplace_back(tts.length() ? "degraded" : "failed");
    m.error = terminal ? terminal->detail : "stream went idle";
  }
  m.final_text = tts.text();
  if (tts.first_enqueue_at()) m.ttft_ms = tts.first_enqueue_at()->ms();
  if (tts.last_enqueue_at()) m.turnaround_ms = tts.last_enqueue_at()->ms();
  finish_flags(m);
  return m;
}

MetricsRecord run_pipeline(const ScenarioRecord& record, const Settings& settings, std::uint64_t seed) {
  MetricsRecord m;
  m.id = record.id;
  m.system = System::AudoSight;
  m.truth_track = record.truth.track();

  pipeline::PipelineConfig cfg;
  cfg.classifier = settings.classifier;
  cfg.handoff = settings.handoff;
  cfg.router_overhead = settings.router_overhead;
  if (settings.classifier_choice == ClassifierChoice::Truth) {
    cfg.classifier_plugin = std::make_shared<TruthClassifier>(record.truth);
  } else {
    cfg.classifier_plugin = std::make_shared<classify::LexiconClassifier>(classify::Lexicon::bundled());
  }

  auto failing = backends::StreamScript::failing(Millis{0});
  auto script_or_fail = [&](const std::optional<backends::StreamScript>& s, std::string_view name) {
    return s ? jittered(*s, settings, seed, record, name) : failing;
  };
  auto edge = std::make_shared<backends::ScriptedBackend>(BackendKind::Edge, script_or_fail(record.scripts.edge, "edge"));
  auto cloud =
      std::make_shared<backends::ScriptedBackend>(BackendKind::Cloud, script_or_fail(record.scripts.cloud, "cloud"));
  cfg.edge = std::make_shared<backends::RecordingBackend>(edge);
  cfg.cloud = std::make_shared<backends::RecordingBackend>(cloud);
  if (record.scripts.fusion) {
    cfg.fusion = std::make_shared<backends::ScriptedBackend>(BackendKind::Fusion,
                                                             jittered(*record.scripts.fusion, settings, seed, record, "fusion"));
  } else {
    cfg.fusion = std::make_shared<fusion::RuleFusionBackend>(settings.fusion_ttft);
  }
  if (record.scripts.editor) {
    cfg.editor = std::make_shared<backends::ScriptedBackend>(BackendKind::Editor,
                                                             jittered(*record.scripts.editor, settings, seed, record, "editor"));
  } else {
    cfg.editor = std::make_shared<agents::RuleEditorBackend>(settings.editor_latency);
  }
  auto experts = std::make_shared<agents::ExpertFixture>();
  for (const auto& e : record.experts) experts->add(record.frame, e.route, e.payload, e.latency);
  cfg.experts = experts;

  VirtualClock clock;
  try {
    const Query q = make_query(record.id, record.query, FrameRef{record.frame, std::nullopt});
    const auto r = pipeline::handle_query(q, cfg, clock);
    m.predicted_track = r.track;
    if (r.ttft) m.ttft_ms = r.ttft->count();
    if (r.turnaround) m.turnaround_ms = r.turnaround->count();
    m.edge_calls = static_cast<std::int64_t>(r.edge_mllm_calls);
    m.cloud_calls = static_cast<std::int64_t>(r.cloud_mllm_calls);
    m.fusion_calls = static_cast<std::int64_t>(r.fusion_calls);
    m.editor_calls = static_cast<std::int64_t>(r.editor_calls);
    m.final_text = r.final_text;
    if (r.fusion) {
      m.fusion = FusionTrace::from(*r.fusion);
      if (r.fusion->winner != fusion::Winner::EdgeFirst && r.fusion->winner != fusion::Winner::CloudFirst) {
        m.flags.push_back(m.fusion->winner);
      }
      if (r.fusion->recovery) m.flags.emplace_back("truncation_recovery");
      if (r.fusion->failure_detail) m.error = r.fusion->failure_detail;
    }
    if (r.degraded) m.flags.emplace_back("degraded");
    if (r.editor_fallback) m.flags.emplace_back("editor_fallback");
    if (r.failure_notice) m.flags.emplace_back("failure_notice");
    if (r.resubmit_suggested) m.flags.emplace_back("resubmit_suggested");
    if (r.track != m.truth_track) m.flags.emplace_back("misrouted");
  } catch (const ClassifierFailure& e) {
    m.flags.emplace_back("classifier_failure");
    m.error = e.what();
  } catch (const std::exception& e) {
    m.flags.emplace_back("failed");
    m.error = e.what();
  }
  finish_flags(m);
  return m;
}

}  // namespace

MetricsRecord run_record(const ScenarioRecord& record, System system, const Settings& settings, std::uint64_t seed) {
  if (system == System::AudoSight) return run_pipeline(record, settings, seed);
  return run_baseline(record, system, settings, seed);
}

std::vector<MetricsRecord> run_scenario(const Scenario& s, System system, const Overrides& extra) {
  validate_scenario(s);
  const Settings settings = Settings::resolve(s.overrides, extra);
  std::vector<MetricsRecord> out;
  out.reserve(s.records.size());
  for (const auto& r : s.records) out.push_back(run_record(r, system, settings, s.seed));
  return out;
}

}  // namespace edgefuse::sim
