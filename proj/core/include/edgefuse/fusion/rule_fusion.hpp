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

#include <string>
#include <string_view>

#include "edgefuse/backends/backend.hpp"

namespace edgefuse::fusion {

// Deterministic continuation: the rest of the cloud answer when the spoken
// prefix agrees with it word for word, otherwise a correction restating it.
std::string rule_fusion_continuation(std::string_view edge_prefix, std::string_view cloud_full);

// Fusion stand-in reading "edge_prefix" and "cloud_response" from the request fields.
class RuleFusionBackend final : public backends::StreamingBackend {
 public:
  explicit RuleFusionBackend(Millis ttft = Millis{250}, Millis gap = Millis{40}) : ttft_(ttft), gap_(gap) {}
  BackendKind kind() const override { return BackendKind::Fusion; }
  backends::TokenStream open(const backends::ModelRequest& request, Clock& clock) override;

 private:
  Millis ttft_;
  Millis gap_;
};

}  // namespace edgefuse::fusion
