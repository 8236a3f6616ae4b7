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

#include "edgefuse/classify/evaluation.hpp"

#include <cstdio>
#include <sstream>

#include "edgefuse/core/io.hpp"
#include "json_util.hpp"

namespace edgefuse::classify {

std::optional<double> PrecisionCell::precision() const {
  const auto predicted = true_positive + false_positive;
  if (predicted == 0) return std::nullopt;
  return static_cast<double>(true_positive) / static_cast<double>(predicted);
}

double EvaluationReport::urgency_accuracy() const {
  return total ? static_cast<double>(urgency_correct) / static_cast<double>(total) : 0.0;
}

double EvaluationReport::route_accuracy() const {
  return total ? static_cast<double>(route_correct) / static_cast<double>(total) : 0.0;
}

namespace {

std::string pct(std::optional<double> v) {
  if (!v) return "n/a";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.1f%%", *v * 100.0);
  return buf;
}

void count(PrecisionCell& cell, bool correct) {
  if (correct) {
    ++cell.true_positive;
  } else {
    ++cell.false_positive;
  }
}

}  // namespace

std::string EvaluationReport::render_table() const {
  std::ostringstream out;
  char line[256];
  std::snprintf(line, sizeof line, "%-18s %-9s %s\n", "Module", "Accuracy", "Precision");
  out << line;
  std::snprintf(line, sizeof line, "%-18s %-9s Urgent %s | Normal %s\n", "Urgency Detector",
                pct(urgency_accuracy()).c_str(), pct(urgent.precision()).c_str(), pct(normal.precision()).c_str());
  out << line;
  std::snprintf(line, sizeof line, "%-18s %-9s Object %s | OCR %s | Face %s | Generic %s\n", "AI Router",
                pct(route_accuracy()).c_str(), pct(route(RouteLabel::Object).precision()).c_str(),
                pct(route(RouteLabel::OCR).precision()).c_str(), pct(route(RouteLabel::Face).precision()).c_str(),
                pct(route(RouteLabel::Generic).precision()).c_str());
  out << line;
  out << "Reference row (published encoder measurements, for comparison only):\n";
  std::snprintf(line, sizeof line, "%-18s %-9s Urgent %s | Normal %s\n", "Urgency Detector",
                pct(ReferenceRow::urgency_accuracy).c_str(), pct(ReferenceRow::urgent_precision).c_str(),
                pct(ReferenceRow::normal_precision).c_str());
  out << line;
  std::snprintf(line, sizeof line, "%-18s %-9s Object %s | OCR %s | Other %s\n", "AI Router",
                pct(ReferenceRow::route_accuracy).c_str(), pct(ReferenceRow::object_precision).c_str(),
                pct(ReferenceRow::ocr_precision).c_str(), pct(ReferenceRow::other_precision).c_str());
  out << line;
  return out.str();
}

EvaluationReport evaluate_classifier(std::span<const LabeledQuery> dataset, const Classifier& urgency,
                                     const Classifier& router, const ClassifierConfig& cfg) {
  if (dataset.empty()) throw EmptyDataset();
  EvaluationReport r;
  r.total = dataset.size();
  for (const auto& item : dataset) {
    const bool urgent = decide_urgency(urgency.classify(item.text), cfg).urgent;
    const bool urgent_ok = urgent == item.urgent;
    if (urgent_ok) ++r.urgency_correct;
    count(urgent ? r.urgent : r.normal, urgent_ok);

    const RouteLabel route = decide_route(router.classify(item.text), cfg).route;
    const bool route_ok = route == item.route;
    if (route_ok) ++r.route_correct;
    count(r.routes[static_cast<std::size_t>(route)], route_ok);
  }
  return r;
}

std::vector<LabeledQuery> load_labeled_queries(const std::filesystem::path& path) {
  const std::string text = read_file(path);
  const std::string source = path.string();
  std::vector<LabeledQuery> out;
  std::istringstream in(text);
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    auto doc = detail::parse_json(line, source, lineno);
    detail::ObjectReader r(doc, source, lineno, "");
    LabeledQuery q;
    q.text = r.required<std::string>("text");
    q.urgent = r.required<bool>("urgent");
    const auto route = r.required<std::string>("route");
    auto parsed = parse_route(route);
    if (!parsed) r.fail("route", "unknown route '" + route + "'");
    q.route = *parsed;
    r.finish();
    out.push_back(std::move(q));
  }
  return out;
}

}  // namespace edgefuse::classify
