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

#include "edgefuse/classify/classifier.hpp"

#include <array>
#include <cmath>
#include <stdexcept>

#include "edgefuse/core/error.hpp"

namespace edgefuse::classify {

namespace {

// Argmax ties resolve to the earliest label in this order.
constexpr std::array<RouteLabel, 3> kExpertOrder{RouteLabel::Object, RouteLabel::OCR, RouteLabel::Face};

}  // namespace

ClassDistribution::ClassDistribution(std::map<std::string, double> scores) {
  if (scores.empty()) throw std::invalid_argument("class distribution has no labels");
  for (auto& [label, s] : scores) {
    if (!std::isfinite(s) || s < 0.0 || s > 1.0) {
      throw std::invalid_argument("score for '" + label + "' outside [0,1]");
    }
    scores_.emplace(label, s);
  }
}

std::optional<double> ClassDistribution::score(std::string_view label) const {
  auto it = scores_.find(label);
  if (it == scores_.end()) return std::nullopt;
  return it->second;
}

void ClassifierConfig::validate() const {
  auto in_open_unit = [](double t) { return t > 0.0 && t < 1.0; };
  if (!in_open_unit(urgency_threshold)) throw std::invalid_argument("urgency_threshold must lie in (0,1)");
  if (!in_open_unit(route_threshold)) throw std::invalid_argument("route_threshold must lie in (0,1)");
  if (overhead < Millis{0}) throw std::invalid_argument("classifier overhead must be non-negative");
}

UrgencyDecision decide_urgency(const ClassDistribution& dist, const ClassifierConfig& cfg) {
  auto s = dist.score(kUrgentLabel);
  if (!s) throw ClassifierFailure("classifier returned no '" + std::string(kUrgentLabel) + "' score");
  return UrgencyDecision{exceeds(*s, cfg.urgency_threshold), *s, cfg.overhead};
}

RouteDecision decide_route(const ClassDistribution& dist, const ClassifierConfig& cfg) {
  RouteDecision d;
  bool first = true;
  for (RouteLabel label : kExpertOrder) {
    auto s = dist.score(to_string(label));
    if (!s) throw ClassifierFailure("classifier returned no '" + std::string(to_string(label)) + "' score");
    if (first || *s > d.top_score) {
      d.top_label = label;
      d.top_score = *s;
      first = false;
    }
  }
  d.route = exceeds(d.top_score, cfg.route_threshold) ? d.top_label : RouteLabel::Generic;
  return d;
}

UrgencyDecision detect_urgency(const Query& q, const Classifier& classifier, const ClassifierConfig& cfg) {
  return decide_urgency(classifier.classify(q.text), cfg);
}

RouteDecision route_query(const Query& q, const Classifier& classifier, const ClassifierConfig& cfg) {
  return decide_route(classifier.classify(q.text), cfg);
}

}  // namespace edgefuse::classify
