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

#include "edgefuse/classify/lexicon.hpp"

#include <cmath>
#include <json.hpp>

#include "edgefuse/core/error.hpp"
#include "edgefuse/core/io.hpp"
#include "edgefuse/core/utf8.hpp"
#include "json_util.hpp"

namespace edgefuse::classify {

using nlohmann::json;

Lexicon::Lexicon(std::map<std::string, LexiconClass> classes) : classes_(std::move(classes)) {
  for (auto& [label, cls] : classes_) {
    if (!std::isfinite(cls.bias)) throw std::invalid_argument("non-finite bias for " + label);
    std::map<std::string, double> folded;
    for (const auto& [term, w] : cls.terms) {
      if (!std::isfinite(w)) throw std::invalid_argument("non-finite weight for " + label + "/" + term);
      folded[utf8::fold_ascii(term)] += w;
    }
    cls.terms = std::move(folded);
  }
}

Lexicon Lexicon::parse(std::string_view json_text, const std::string& source) {
  json doc = detail::parse_json(json_text, source, 0);
  detail::ObjectReader root(doc, source, 0, "");
  const auto version = root.required<int>("version");
  if (version != 1) throw ParseError(source, 0, "version", "unsupported lexicon version " + std::to_string(version));
  const json& classes = root.required_object("classes");
  root.finish();

  std::map<std::string, LexiconClass> out;
  for (const auto& [label, body] : classes.items()) {
    const std::string path = "classes." + label;
    if (!body.is_object()) throw ParseError(source, 0, path, "expected object");
    detail::ObjectReader cls(body, source, 0, path);
    LexiconClass lc;
    lc.bias = cls.optional<double>("bias").value_or(0.0);
    if (const json* terms = cls.optional_object("terms")) {
      for (const auto& [term, w] : terms->items()) {
        if (!w.is_number()) throw ParseError(source, 0, path + ".terms." + term, "expected number");
        lc.terms[term] = w.get<double>();
      }
    }
    cls.finish();
    out.emplace(label, std::move(lc));
  }
  if (out.empty()) throw ParseError(source, 0, "classes", "no classes defined");
  return Lexicon(std::move(out));
}

Lexicon Lexicon::load(const std::filesystem::path& path) { return parse(read_file(path), path.string()); }

const Lexicon& Lexicon::bundled() {
  static const Lexicon lexicon = parse(assets::get("lexicon.v1.json"), "lexicon.v1.json");
  return lexicon;
}

std::vector<std::string> tokenize(std::string_view text) {
  std::vector<std::string> out;
  std::string current;
  auto flush = [&] {
    if (!current.empty()) out.push_back(std::move(current));
    current.clear();
  };
  for (char ch : text) {
    const auto b = static_cast<unsigned char>(ch);
    const bool word = (b >= 0x80) || (ch >= 'a' && ch <= 'z') || (ch >= 'A' && ch <= 'Z') ||
                      (ch >= '0' && ch <= '9') || ch == '\'';
    if (word) {
      current.push_back((ch >= 'A' && ch <= 'Z') ? static_cast<char>(ch - 'A' + 'a') : ch);
    } else {
      flush();
    }
  }
  flush();
  return out;
}

double squash(double z) { return 1.0 / (1.0 + std::exp(-z)); }

ClassDistribution lexicon_classify(std::string_view text, const Lexicon& lexicon) {
  const auto tokens = tokenize(text);
  std::map<std::string, double> scores;
  for (const auto& [label, cls] : lexicon.classes()) {
    double z = cls.bias;
    for (const auto& tok : tokens) {
      if (auto it = cls.terms.find(tok); it != cls.terms.end()) z += it->second;
    }
    scores.emplace(label, squash(z));
  }
  return ClassDistribution(std::move(scores));
}

}  // namespace edgefuse::classify
