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
#include <string>
#include <string_view>

namespace edgefuse::fusion {

inline constexpr std::string_view kFusionTemplateVersion = "v1";

// Replaces each {{name}} with its value. Unknown placeholders throw
// std::invalid_argument so a template/code mismatch cannot pass silently.
std::string render_template(std::string_view tmpl, const std::map<std::string, std::string>& values);

// Continuation prompt over the spoken edge prefix and the full cloud answer;
// an empty prefix yields the restatement prompt instead.
// Throws std::invalid_argument if cloud_full is empty.
std::string build_fusion_prompt(std::string_view edge_prefix, std::string_view cloud_full);

}  // namespace edgefuse::fusion
