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

#include <stdexcept>

#include "edgefuse/backends/backend.hpp"
#include "edgefuse/core/utf8.hpp"

namespace edgefuse::backends {

void StreamScript::validate() const {
  if (ttft < Millis{0}) throw std::invalid_argument("script ttft must be non-negative");
  for (const auto& t : tokens) {
    if (t.delay < Millis{0}) throw std::invalid_argument("script token delay must be non-negative");
  }
}

std::string StreamScript::full_text() const {
  std::string out;
  for (const auto& t : tokens) out += t.text;
  return out;
}

Millis StreamScript::duration() const {
  Millis d = ttft;
  for (const auto& t : tokens) d += t.delay;
  return d;
}

StreamScript StreamScript::from_text(std::string_view text, Millis ttft, Millis gap, Terminal terminal) {
  StreamScript s;
  s.ttft = ttft;
  s.terminal = terminal;
  const std::u32string cps = utf8::decode(text);
  std::u32string current;
  bool in_word = false;
  for (char32_t c : cps) {
    const bool space = utf8::is_space(c);
    // A token is leading whitespace plus one word, like most BPE vocabularies.
    if (space && in_word) {
      s.tokens.push_back({utf8::encode(current), s.tokens.empty() ? Millis{0} : gap});
      current.clear();
      in_word = false;
    }
    if (!space) in_word = true;
    current.push_back(c);
  }
  if (!current.empty()) s.tokens.push_back({utf8::encode(current), s.tokens.empty() ? Millis{0} : gap});
  return s;
}

StreamScript StreamScript::failing(Millis at) {
  StreamScript s;
  s.ttft = at;
  s.terminal = Terminal::Error;
  return s;
}

TokenStream open_scripted_stream(const StreamScript& script, Clock& clock, BackendKind source) {
  script.validate();
  auto core = std::make_shared<StreamCore>(source, clock);
  Millis at = script.ttft;
  for (const auto& tok : script.tokens) {
    at += tok.delay;
    clock.schedule(at, [core, text = tok.text] { core->emit_text(text); });
  }
  if (script.terminal == Terminal::End) {
    clock.schedule(at, [core] { core->emit_end(); });
  } else {
    clock.schedule(at, [core] { core->emit_error("scripted failure"); });
  }
  return TokenStream(core);
}

TokenStream RecordingBackend::open(const ModelRequest& request, Clock& clock) {
  requests_.push_back(request);
  return inner_->open(request, clock);
}

}  // namespace edgefuse::backends
