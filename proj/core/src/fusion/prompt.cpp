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

#include "edgefuse/fusion/prompt.hpp"

#include <stdexcept>

#include "edgefuse/core/io.hpp"

namespace edgefuse::fusion {

std::string render_template(std::string_view tmpl, const std::map<std::string, std::string>& values) {
  std::string out;
  out.reserve(tmpl.size());
  std::size_t pos = 0;
  while (true) {
    const auto open = tmpl.find("{{", pos);
    if (open == std::string_view::npos) {
      out.append(tmpl.substr(pos));
      return out;
    }
    const auto close = tmpl.find("}}", open + 2);
    if (close == std::string_view::npos) throw std::invalid_argument("unterminated placeholder in template");
    out.append(tmpl.substr(pos, open - pos));
    const std::string name(tmpl.substr(open + 2, close - open - 2));
    const auto it = values.find(name);
    if (it == values.end()) throw std::invalid_argument("no value for placeholder " + name);
    out.append(it->second);
    pos = close + 2;
  }
}

std::string build_fusion_prompt(std::string_view edge_prefix, std::string_view cloud_full) {
  if (cloud_full.empty()) throw std::invalid_argument("fusion prompt needs the cloud response");
  const std::map<std::string, std::string> values = {
      {"edge_prefix", std::string(edge_prefix)},
      {"cloud_response", std::string(cloud_full)},
  };
  if (edge_prefix.empty()) return render_template(assets::get("prompts/fusion_restate.v1.txt"), values);
  return render_template(assets::get("prompts/fusion_continue.v1.txt"), values);
}

}  // namespace edgefuse::fusion
