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

#include "edgefuse/fusion/rule_fusion.hpp"

#include <vector>

#include "edgefuse/core/utf8.hpp"

namespace edgefuse::fusion {

namespace {

std::vector<std::string> words(std::string_view text) {
  std::vector<std::string> out;
  std::u32string current;
  for (char32_t c : utf8::decode(text)) {
    if (utf8::is_space(c)) {
      if (!current.empty()) out.push_back(utf8::encode(current));
      current.clear();
    } else {
      current.push_back(c);
    }
  }
  if (!current.empty()) out.push_back(utf8::encode(current));
  return out;
}

std::string field(const backends::ModelRequest& r, const std::string& key) {
  const auto it = r.fields.find(key);
  return it == r.fields.end() ? std::string() : it->second;
}

}  // namespace

std::string rule_fusion_continuation(std::string_view edge_prefix, std::string_view cloud_full) {
  const auto spoken = words(edge_prefix);
  const auto truth = words(cloud_full);
  if (spoken.empty()) return std::string(cloud_full);

  bool agrees = spoken.size() <= truth.size();
  for (std::size_t i = 0; agrees && i < spoken.size(); ++i) {
    agrees = utf8::fold_ascii(spoken[i]) == utf8::fold_ascii(truth[i]);
  }
  std::string out;
  if (agrees) {
    for (std::size_t i = spoken.size(); i < truth.size(); ++i) out += " " + truth[i];
    return out;
  }
  const char last = spoken.back().back();
  out = (last == '.' || last == '!' || last == '?') ? " Correction: " : ". Correction: ";
  out += cloud_full;
  return out;
}

backends::TokenStream RuleFusionBackend::open(const backends::ModelRequest& request, Clock& clock) {
  const std::string text = rule_fusion_continuation(field(request, "edge_prefix"), field(request, "cloud_response"));
  return backends::open_scripted_stream(backends::StreamScript::from_text(text, ttft_, gap_), clock, BackendKind::Fusion);
}

}  // namespace edgefuse::fusion
