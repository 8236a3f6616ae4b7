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
#include <string_view>

#include "edgefuse/core/time.hpp"
#include "edgefuse/core/types.hpp"

namespace edgefuse::classify {

inline constexpr std::string_view kUrgentLabel = "urgent";

// Class label -> probability. Labels are non-empty and every score lies in [0, 1].
class ClassDistribution {
 public:
  ClassDistribution() = default;
  // Throws std::invalid_argument on an empty label set or an out-of-range score.
  explicit ClassDistribution(std::map<std::string, double> scores);

  std::optional<double> score(std::string_view label) const;
  const std::map<std::string, double, std::less<>>& scores() const { return scores_; }
  bool empty() const { return scores_.empty(); }

  bool operator==(const ClassDistribution&) const = default;

 private:
  std::map<std::string, double, std::less<>> scores_;
};

struct ClassifierConfig {
  double urgency_threshold = 0.3;
  double route_threshold = 0.86;
  // Charged on the clock before dispatch; covers both heads of the shared encoder.
  Millis overhead{9};

  // Throws std::invalid_argument unless both thresholds lie in (0, 1).
  void validate() const;
};

// Text -> distribution. Implementations must be pure and safe to call concurrently.
class Classifier {
 public:
  virtual ~Classifier() = default;
  virtual ClassDistribution classify(std::string_view text) const = 0;
};

struct UrgencyDecision {
  bool urgent = false;
  double score = 0.0;
  Millis overhead{0};
};

struct RouteDecision {
  RouteLabel route = RouteLabel::Generic;
  // Best expert label and its score, even when the query falls back to Generic.
  RouteLabel top_label = RouteLabel::Object;
  double top_score = 0.0;
};

// Strict comparison: a score equal to the threshold does not pass.
constexpr bool exceeds(double score, double threshold) { return score > threshold; }

UrgencyDecision decide_urgency(const ClassDistribution& dist, const ClassifierConfig& cfg);
RouteDecision decide_route(const ClassDistribution& dist, const ClassifierConfig& cfg);

UrgencyDecision detect_urgency(const Query& q, const Classifier& classifier, const ClassifierConfig& cfg);
RouteDecision route_query(const Query& q, const Classifier& classifier, const ClassifierConfig& cfg);

}  // namespace edgefuse::classify
