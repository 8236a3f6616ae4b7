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

#include <functional>
#include <string>

#include "edgefuse/agents/experts.hpp"
#include "edgefuse/backends/backend.hpp"

namespace edgefuse::agents {

inline constexpr Millis kDefaultEditorLatency{800};

struct EditedResponse {
  std::string text;
  Millis editor_latency{0};
  bool fallback = false;  // editor failed; text is the raw payload
  std::string detail;
};

std::string render_editor_prompt(const RawExpertResponse& raw, const Query& q);

// Deterministic rewrite used by the bundled editor stand-in.
//   Face   "John Doe" + "Is there anyone I know here?" -> "Yes, John Doe is here."
//   OCR    "Soup $4.99"                                  -> "It says: Soup $4.99."
//   Object "suitcase; person; sign"                      -> "There is a suitcase, a person and a sign."
// Empty payloads give a short nothing-found sentence for the route.
std::string rule_edit(RouteLabel route, std::string_view payload, std::string_view query);

// Editor stand-in reading "route", "payload" and "query" from the request fields.
class RuleEditorBackend final : public backends::StreamingBackend {
 public:
  explicit RuleEditorBackend(Millis latency = kDefaultEditorLatency, Millis gap = Millis{40})
      : latency_(latency), gap_(gap) {}
  BackendKind kind() const override { return BackendKind::Editor; }
  backends::TokenStream open(const backends::ModelRequest& request, Clock& clock) override;

 private:
  Millis latency_;
  Millis gap_;
};

// Streams the editor's answer, passing every text-bearing event to `on_text`
// as it arrives. If the backend throws BackendUnavailable or its stream
// fails, the result is the raw payload verbatim with `fallback` set; text
// already passed to `on_text` stays delivered.
EditedResponse edit_response(const RawExpertResponse& raw, const Query& q, backends::StreamingBackend& backend,
                             Clock& clock, const std::function<void(const TokenEvent&)>& on_text = {});

}  // namespace edgefuse::agents
