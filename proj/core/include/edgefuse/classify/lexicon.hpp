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

#include <filesystem>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "edgefuse/classify/classifier.hpp"

namespace edgefuse::classify {

struct LexiconClass {
  double bias = 0.0;
  std::map<std::string, double> terms;  // case-folded term -> weight
};

// Per-class linear term weights squashed through a logistic function.
//
// File format (JSON):
//   {"version": 1,
//    "classes": {"urgent": {"bias": -2.0, "terms": {"quick": 3.0, ...}}, ...}}
//
// Every class is scored independently, so the scores of a distribution need
// not sum to one.
class Lexicon {
 public:
  Lexicon() = default;
  explicit Lexicon(std::map<std::string, LexiconClass> classes);

  // Throws ParseError (with line/field) or IoError.
  static Lexicon load(const std::filesystem::path& path);
  static Lexicon parse(std::string_view json_text, const std::string& source = "<lexicon>");

  // The fixture compiled into the library.
  static const Lexicon& bundled();

  const std::map<std::string, LexiconClass>& classes() const { return classes_; }

 private:
  std::map<std::string, LexiconClass> classes_;
};

// Lower-cased runs of letters, digits and apostrophes. Non-ASCII bytes count as letters.
std::vector<std::string> tokenize(std::string_view text);

double squash(double z);

ClassDistribution lexicon_classify(std::string_view text, const Lexicon& lexicon);

class LexiconClassifier final : public Classifier {
 public:
  explicit LexiconClassifier(Lexicon lexicon) : lexicon_(std::move(lexicon)) {}
  ClassDistribution classify(std::string_view text) const override { return lexicon_classify(text, lexicon_); }
  const Lexicon& lexicon() const { return lexicon_; }

 private:
  Lexicon lexicon_;
};

}  // namespace edgefuse::classify
