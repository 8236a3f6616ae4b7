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

#include "edgefuse/sim/report.hpp"

#include <cstdio>
#include <json.hpp>
#include <memory>
#include <sstream>
#include <stdexcept>

#include "edgefuse/classify/lexicon.hpp"

namespace edgefuse::sim {

using nlohmann::ordered_json;

std::optional<double> reduction(std::optional<double> system, std::optional<double> baseline) {
  if (!system || !baseline || *baseline == 0.0) return std::nullopt;
  return (*baseline - *system) / *baseline;
}

const SystemSummary& ComparisonReport::summary(System s) const {
  for (const auto& x : systems) {
    if (x.system == s) return x;
  }
  throw std::out_of_range("system missing from report");
}

namespace {

SystemSummary summarize_system(System system, const std::vector<MetricsRecord>& records) {
  SystemSummary s;
  s.system = system;
  std::vector<MetricsRecord> urgent;
  std::vector<MetricsRecord> normal;
  for (const auto& r : records) {
    (r.urgent() ? urgent : normal).push_back(r);
    s.edge_calls += r.edge_calls;
    s.cloud_calls += r.cloud_calls;
    if (!r.ttft_ms) ++s.failed;
  }
  s.urgent = summarize(urgent);
  s.normal = summarize(normal);
  s.all = summarize(records);
  return s;
}

std::string ms(std::optional<double> v) {
  if (!v) return "n/a";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.1f", *v);
  return buf;
}

std::string pct(std::optional<double> v) {
  if (!v) return "n/a";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.1f%%", *v * 100.0);
  return buf;
}

ordered_json num(std::optional<double> v) {
  if (!v) return nullptr;
  // Fixed precision keeps the file stable across formatting differences.
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.4f", *v);
  return ordered_json(std::stod(buf));
}

ordered_json latency_json(const LatencySummary& s) {
  ordered_json j;
  j["count"] = s.count;
  j["mean_ttft_ms"] = num(s.mean_ttft_ms);
  j["mean_turnaround_ms"] = num(s.mean_turnaround_ms);
  j["p50_ttft_ms"] = num(s.p50_ttft_ms);
  j["p90_ttft_ms"] = num(s.p90_ttft_ms);
  j["p50_turnaround_ms"] = num(s.p50_turnaround_ms);
  j["p90_turnaround_ms"] = num(s.p90_turnaround_ms);
  return j;
}

ordered_json precision_json(const classify::PrecisionCell& c) {
  ordered_json j;
  j["true_positive"] = c.true_positive;
  j["false_positive"] = c.false_positive;
  j["precision"] = num(c.precision());
  return j;
}

}  // namespace

ComparisonReport build_report(const Scenario& s, const Settings& settings,
                              const std::map<System, std::vector<MetricsRecord>>& records) {
  ComparisonReport rep;
  rep.seed = s.seed;
  rep.mode = settings.handoff.mode;
  rep.records = s.records.size();
  for (System sys : kAllSystems) {
    const auto it = records.find(sys);
    rep.systems.push_back(summarize_system(sys, it == records.end() ? std::vector<MetricsRecord>{} : it->second));
  }
  const auto& audo = rep.summary(System::AudoSight);
  const auto& edge = rep.summary(System::EdgeOnly);
  const auto& cloud = rep.summary(System::CloudOnly);
  rep.urgent_ttft_reduction_vs_cloud = reduction(audo.urgent.mean_ttft_ms, cloud.urgent.mean_ttft_ms);
  rep.normal_ttft_reduction_vs_cloud = reduction(audo.normal.mean_ttft_ms, cloud.normal.mean_ttft_ms);
  if (audo.all.mean_turnaround_ms && cloud.all.mean_turnaround_ms && *cloud.all.mean_turnaround_ms > 0.0) {
    rep.turnaround_ratio_vs_cloud = *audo.all.mean_turnaround_ms / *cloud.all.mean_turnaround_ms;
  }
  rep.edge_call_reduction_vs_edge_only =
      reduction(static_cast<double>(audo.edge_calls), static_cast<double>(edge.edge_calls));

  std::vector<classify::LabeledQuery> labeled;
  for (const auto& r : s.records) labeled.push_back({r.query, r.truth.urgent, r.truth.route});
  if (settings.classifier_choice == ClassifierChoice::Truth) {
    // Each record carries its own oracle, so evaluate record by record.
    for (const auto& r : s.records) {
      TruthClassifier oracle(r.truth);
      const classify::LabeledQuery one{r.query, r.truth.urgent, r.truth.route};
      const auto part = classify::evaluate_classifier({&one, 1}, oracle, oracle, settings.classifier);
      rep.classifier.total += part.total;
      rep.classifier.urgency_correct += part.urgency_correct;
      rep.classifier.route_correct += part.route_correct;
      rep.classifier.urgent.true_positive += part.urgent.true_positive;
      rep.classifier.urgent.false_positive += part.urgent.false_positive;
      rep.classifier.normal.true_positive += part.normal.true_positive;
      rep.classifier.normal.false_positive += part.normal.false_positive;
      for (std::size_t i = 0; i < rep.classifier.routes.size(); ++i) {
        rep.classifier.routes[i].true_positive += part.routes[i].true_positive;
        rep.classifier.routes[i].false_positive += part.routes[i].false_positive;
      }
    }
  } else if (!labeled.empty()) {
    const classify::LexiconClassifier lexicon(classify::Lexicon::bundled());
    rep.classifier = classify::evaluate_classifier(labeled, lexicon, lexicon, settings.classifier);
  }
  return rep;
}

ComparisonRun compare_systems(const Scenario& s, const Overrides& extra) {
  validate_scenario(s);
  const Settings settings = Settings::resolve(s.overrides, extra);
  ComparisonRun run;
  for (System sys : kAllSystems) {
    auto& out = run.records[sys];
    for (const auto& r : s.records) out.push_back(run_record(r, sys, settings, s.seed));
  }
  run.report = build_report(s, settings, run.records);
  return run;
}

std::string ComparisonReport::render_text() const {
  std::ostringstream out;
  char line[256];
  out << "Latency comparison (" << records << " records, seed " << seed << ", handoff mode "
      << fusion::to_string(mode) << ")\n\n";
  std::snprintf(line, sizeof line, "%-11s | %-12s %-17s | %-12s %-17s | %-10s\n", "system", "urgent TTFT",
                "urgent turnaround", "normal TTFT", "normal turnaround", "edge calls");
  out << line;
  out << std::string(92, '-') << "\n";
  for (const auto& s : systems) {
    std::snprintf(line, sizeof line, "%-11s | %-12s %-17s | %-12s %-17s | %-10lld\n",
                  std::string(to_string(s.system)).c_str(), ms(s.urgent.mean_ttft_ms).c_str(),
                  ms(s.urgent.mean_turnaround_ms).c_str(), ms(s.normal.mean_ttft_ms).c_str(),
                  ms(s.normal.mean_turnaround_ms).c_str(), static_cast<long long>(s.edge_calls));
    out << line;
  }
  out << "\n(mean milliseconds)\n\n";
  out << "urgent TTFT reduction vs cloud-only:   " << pct(urgent_ttft_reduction_vs_cloud) << "\n";
  out << "normal TTFT reduction vs cloud-only:   " << pct(normal_ttft_reduction_vs_cloud) << "\n";
  out << "turnaround, audo-sight / cloud-only:   " << pct(turnaround_ratio_vs_cloud) << "\n";
  out << "edge-call reduction vs edge-only:      " << pct(edge_call_reduction_vs_edge_only) << "\n\n";
  if (classifier.total > 0) {
    out << "Classifier evaluation over the scenario queries\n";
    out << classifier.render_table();
  }
  return out.str();
}

std::string ComparisonReport::to_json() const {
  ordered_json j;
  j["seed"] = seed;
  j["handoff_mode"] = std::string(fusion::to_string(mode));
  j["records"] = records;
  ordered_json systems_json = ordered_json::array();
  for (const auto& s : systems) {
    ordered_json sj;
    sj["system"] = std::string(to_string(s.system));
    sj["urgent"] = latency_json(s.urgent);
    sj["normal"] = latency_json(s.normal);
    sj["all"] = latency_json(s.all);
    sj["edge_calls"] = s.edge_calls;
    sj["cloud_calls"] = s.cloud_calls;
    sj["failed"] = s.failed;
    systems_json.push_back(sj);
  }
  j["systems"] = systems_json;
  j["urgent_ttft_reduction_vs_cloud"] = num(urgent_ttft_reduction_vs_cloud);
  j["normal_ttft_reduction_vs_cloud"] = num(normal_ttft_reduction_vs_cloud);
  j["turnaround_ratio_vs_cloud"] = num(turnaround_ratio_vs_cloud);
  j["edge_call_reduction_vs_edge_only"] = num(edge_call_reduction_vs_edge_only);

  ordered_json c;
  c["total"] = classifier.total;
  c["urgency_accuracy"] = classifier.total ? num(classifier.urgency_accuracy()) : ordered_json(nullptr);
  c["route_accuracy"] = classifier.total ? num(classifier.route_accuracy()) : ordered_json(nullptr);
  c["urgent"] = precision_json(classifier.urgent);
  c["normal"] = precision_json(classifier.normal);
  for (RouteLabel r : {RouteLabel::Object, RouteLabel::OCR, RouteLabel::Face, RouteLabel::Generic}) {
    c[std::string(to_string(r))] = precision_json(classifier.route(r));
  }
  ordered_json ref;
  ref["urgency_accuracy"] = classify::ReferenceRow::urgency_accuracy;
  ref["urgent_precision"] = classify::ReferenceRow::urgent_precision;
  ref["normal_precision"] = classify::ReferenceRow::normal_precision;
  ref["route_accuracy"] = classify::ReferenceRow::route_accuracy;
  ref["object_precision"] = classify::ReferenceRow::object_precision;
  ref["ocr_precision"] = classify::ReferenceRow::ocr_precision;
  ref["other_precision"] = classify::ReferenceRow::other_precision;
  c["reference"] = ref;
  j["classifier"] = c;
  return j.dump(2) + "\n";
}

}  // namespace edgefuse::sim
