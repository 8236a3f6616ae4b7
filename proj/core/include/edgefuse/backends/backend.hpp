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

#include <atomic>
#include <map>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "edgefuse/backends/token_stream.hpp"

namespace edgefuse::backends {

struct ScriptToken {
  std::string text;
  Millis delay{0};  // after the previous token (after ttft for the first)

  bool operator==(const ScriptToken&) const = default;
};

enum class Terminal { End, Error };

// A deterministic response stream. Token i is emitted at
// open + ttft + sum(delay[0..i]); the terminal event follows the last token
// at the same instant. Zero tokens with End yields First("") and End together;
// zero tokens with Error models a failure before any output.
struct StreamScript {
  Millis ttft{0};
  std::vector<ScriptToken> tokens;
  Terminal terminal = Terminal::End;

  // Throws std::invalid_argument on negative ttft or delays.
  void validate() const;
  std::string full_text() const;
  // Offset of the terminal event from stream open.
  Millis duration() const;

  // Splits `text` into whitespace-led word tokens spaced `gap` apart.
  static StreamScript from_text(std::string_view text, Millis ttft, Millis gap, Terminal terminal = Terminal::End);
  static StreamScript failing(Millis at);

  bool operator==(const StreamScript&) const = default;
};

TokenStream open_scripted_stream(const StreamScript& script, Clock& clock, BackendKind source = BackendKind::Edge);

// Inputs for one model call. `fields` carries the structured parts of the
// prompt (query, raw payload, edge prefix...) for rule-based stand-ins;
// network backends send only `prompt` and `frame`.
struct ModelRequest {
  std::string prompt;
  FrameRef frame;
  std::map<std::string, std::string> fields;
};

class StreamingBackend {
 public:
  virtual ~StreamingBackend() = default;
  virtual BackendKind kind() const = 0;
  virtual TokenStream open(const ModelRequest& request, Clock& clock) = 0;
};

class ScriptedBackend final : public StreamingBackend {
 public:
  ScriptedBackend(BackendKind kind, StreamScript script) : kind_(kind), script_(std::move(script)) {}
  BackendKind kind() const override { return kind_; }
  TokenStream open(const ModelRequest&, Clock& clock) override { return open_scripted_stream(script_, clock, kind_); }
  const StreamScript& script() const { return script_; }

 private:
  BackendKind kind_;
  StreamScript script_;
};

// Records every request passed through to the wrapped backend.
class RecordingBackend final : public StreamingBackend {
 public:
  explicit RecordingBackend(std::shared_ptr<StreamingBackend> inner) : inner_(std::move(inner)) {}
  BackendKind kind() const override { return inner_->kind(); }
  TokenStream open(const ModelRequest& request, Clock& clock) override;

  std::size_t calls() const { return requests_.size(); }
  const std::vector<ModelRequest>& requests() const { return requests_; }

 private:
  std::shared_ptr<StreamingBackend> inner_;
  std::vector<ModelRequest> requests_;
};

}  // namespace edgefuse::backends
