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

#include <array>
#include <cstddef>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "edgefuse/classify/classifier.hpp"
#include "edgefuse/core/error.hpp"

namespace edgefuse::classify {

class EmptyDataset : public Error {
 public:
  EmptyDataset() : Error("evaluation dataset is empty") {}
};

struct LabeledQuery {
  std::string text;
  bool urgent = false;
  RouteLabel route = RouteLabel::Generic;
};

// JSON lines: {"text": "...", "urgent": true, "route": "OCR"}. Blank lines skipped.
std::vector<LabeledQuery> load_labeled_queries(const std::filesystem::path& path);

struct PrecisionCell {
  std::size_t true_positive = 0;
  std::size_t false_positive = 0;

  // Undefined when the class was never predicted.
  std::optional<double> precision() const;
};

struct EvaluationReport {
  std::size_t total = 0;
  std::size_t urgency_correct = 0;
  std::size_t route_correct = 0;
  PrecisionCell urgent;
  PrecisionCell normal;
  // Indexed by RouteLabel: Object, OCR, Face, Generic.
  std::array<PrecisionCell, 4> routes{};

  double urgency_accuracy() const;
  double route_accuracy() const;
  const PrecisionCell& route(RouteLabel r) const { return routes[static_cast<std::size_t>(r)]; }

  // Two-module accuracy/precision table followed by the published reference
  // row, which is printed for comparison and never asserted.
  std::string render_table() const;
};

// Reference measurements reported for the production encoder models.
struct ReferenceRow {
  static constexpr double urgency_accuracy = 0.906;
  static constexpr double urgent_precision = 0.93;
  static constexpr double normal_precision = 0.87;
  static constexpr double route_accuracy = 0.863;
  static constexpr double object_precision = 1.00;
  static constexpr double ocr_precision = 1.00;
  static constexpr double other_precision = 0.81;
};

// Throws EmptyDataset for an empty span.
EvaluationReport evaluate_classifier(std::span<const LabeledQuery> dataset, const Classifier& urgency,
                                     const Classifier& router, const ClassifierConfig& cfg);

}  // namespace edgefuse::classify
