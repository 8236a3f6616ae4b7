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

#include <mutex>
#include <string>
#include <vector>

#include "edgefuse/classify/classifier.hpp"

namespace edgefuse::classify {

// Runs a classifier as a child process speaking one JSON object per line:
//
//   request:  {"text": "<query>"}
//   response: {"scores": {"<label>": <probability>, ...}}
//
// Calls are serialized per child. A dead child, a malformed response or a
// response carrying {"error": "..."} raises ClassifierFailure.
class ExternalProcessClassifier final : public Classifier {
 public:
  // argv[0] is resolved through PATH. Throws ClassifierFailure if the spawn fails.
  explicit ExternalProcessClassifier(std::vector<std::string> argv);
  ~ExternalProcessClassifier() override;

  ExternalProcessClassifier(const ExternalProcessClassifier&) = delete;
  ExternalProcessClassifier& operator=(const ExternalProcessClassifier&) = delete;

  ClassDistribution classify(std::string_view text) const override;

 private:
  std::string read_line() const;

  mutable std::mutex mu_;
  int pid_ = -1;
  int to_child_ = -1;
  int from_child_ = -1;
  mutable std::string pending_;
};

}  // namespace edgefuse::classify
