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

#include <vector>

#include "edgefuse/classify/classifier.hpp"
#include "edgefuse/fusion/handoff.hpp"
#include "edgefuse/sim/metrics.hpp"
#include "edgefuse/sim/scenario.hpp"

namespace edgefuse::sim {

// Defaults with the scenario's overrides and then `extra` layered on top.
struct Settings {
  classify::ClassifierConfig classifier;
  fusion::HandoffParams handoff;
  Millis router_overhead{0};
  Millis editor_latency{800};
  Millis fusion_ttft{250};
  Millis jitter{0};
  ClassifierChoice classifier_choice = ClassifierChoice::Lexicon;

  // Throws ValidationError.
  static Settings resolve(const Overrides& scenario, const Overrides& extra = {});
};

// Scores 1.0 for the record's true urgency and route, 0.0 elsewhere.
class TruthClassifier final : public classify::Classifier {
 public:
  explicit TruthClassifier(GroundTruth truth) : truth_(truth) {}
  classify::ClassDistribution classify(std::string_view text) const override;

 private:
  GroundTruth truth_;
};

// Runs one record on a fresh virtual clock starting at 0. Failures become
// flags and `error` on the record.
MetricsRecord run_record(const ScenarioRecord& record, System system, const Settings& settings, std::uint64_t seed);

// One MetricsRecord per scenario record, in scenario order. Identical inputs
// give identical records.
std::vector<MetricsRecord> run_scenario(const Scenario& s, System system, const Overrides& extra = {});

}  // namespace edgefuse::sim
