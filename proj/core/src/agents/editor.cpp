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

#include "edgefuse/agents/editor.hpp"

#include <vector>

#include "edgefuse/core/error.hpp"
#include "edgefuse/core/io.hpp"
#include "edgefuse/core/utf8.hpp"
#include "edgefuse/fusion/prompt.hpp"

namespace edgefuse::agents {

namespace {

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r\n");
  return std::string(s.substr(b, e - b + 1));
}

std::vector<std::string> split_items(std::string_view payload) {
  std::vector<std::string> out;
  std::size_t pos = 0;
  while (pos <= payload.size()) {
    const auto next = payload.find(';', pos);
    auto item = trim(payload.substr(pos, next == std::string_view::npos ? std::string_view::npos : next - pos));
    if (!item.empty()) out.push_back(std::move(item));
    if (next == std::string_view::npos) break;
    pos = next + 1;
  }
  return out;
}

std::string join_list(const std::vector<std::string>& items) {
  std::string out;
  for (std::size_t i = 0; i < items.size(); ++i) {
    if (i > 0) out += (i + 1 == items.size()) ? " and " : ", ";
    out += items[i];
  }
  return out;
}

std::string with_article(const std::string& noun) {
  const char c = static_cast<char>(std::tolower(static_cast<unsigned char>(noun.front())));
  const bool vowel = c == 'a' || c == 'e' || c == 'i' || c == 'o' || c == 'u';
  return (vowel ? "an " : "a ") + noun;
}

std::string end_sentence(std::string s) {
  if (s.empty()) return s;
  const char last = s.back();
  if (last != '.' && last != '!' && last != '?') s += '.';
  return s;
}

bool yes_no_question(std::string_view query) {
  const std::string folded = utf8::fold_ascii(trim(query));
  for (std::string_view lead : {"is ", "are ", "do ", "does ", "can ", "could ", "am "}) {
    if (folded.rfind(lead, 0) == 0) return true;
  }
  return false;
}

std::string field(const backends::ModelRequest& r, const std::string& key) {
  const auto it = r.fields.find(key);
  return it == r.fields.end() ? std::string() : it->second;
}

}  // namespace

std::string render_editor_prompt(const RawExpertResponse& raw, const Query& q) {
  return fusion::render_template(assets::get("prompts/editor.v1.txt"),
                                 {{"query", q.text}, {"route", std::string(to_string(raw.route))}, {"payload", raw.payload}});
}

std::string rule_edit(RouteLabel route, std::string_view payload, std::string_view query) {
  const auto items = split_items(payload);
  if (items.empty()) {
    switch (route) {
      case RouteLabel::Face: return "I don't recognize anyone here.";
      case RouteLabel::OCR: return "I couldn't find any text.";
      case RouteLabel::Object: return "I couldn't find any objects.";
      case RouteLabel::Generic: break;
    }
    return "Nothing was found.";
  }
  switch (route) {
    case RouteLabel::Face: {
      std::string out = yes_no_question(query) ? "Yes, " : "";
      out += join_list(items) + (items.size() == 1 ? " is here." : " are here.");
      return out;
    }
    case RouteLabel::OCR:
      return "It says: " + end_sentence(trim(payload));
    case RouteLabel::Object: {
      std::vector<std::string> nouns;
      for (const auto& i : items) nouns.push_back(with_article(i));
      return "There is " + join_list(nouns) + ".";
    }
    case RouteLabel::Generic:
      break;
  }
  return end_sentence(trim(payload));
}

backends::TokenStream RuleEditorBackend::open(const backends::ModelRequest& request, Clock& clock) {
  const auto route = parse_route(field(request, "route")).value_or(RouteLabel::Generic);
  const std::string text = rule_edit(route, field(request, "payload"), field(request, "query"));
  return backends::open_scripted_stream(backends::StreamScript::from_text(text, latency_, gap_), clock,
                                        BackendKind::Editor);
}

EditedResponse edit_response(const RawExpertResponse& raw, const Query& q, backends::StreamingBackend& backend,
                             Clock& clock, const std::function<void(const TokenEvent&)>& on_text) {
  const Timestamp start = clock.now();
  EditedResponse out;
  auto fall_back = [&](std::string detail) {
    out.text = raw.payload;
    out.fallback = true;
    out.detail = std::move(detail);
    out.editor_latency = clock.now() - start;
    return out;
  };

  backends::ModelRequest request;
  request.prompt = render_editor_prompt(raw, q);
  request.frame = q.frame;
  request.fields = {{"query", q.text}, {"payload", raw.payload}, {"route", std::string(to_string(raw.route))}};

  backends::TokenStream stream;
  try {
    stream = backend.open(request, clock);
  } catch (const BackendUnavailable& e) {
    return fall_back(e.what());
  }

  std::optional<TokenEvent> terminal;
  stream.on_event([&](const TokenEvent& ev) {
    if (ev.terminal()) {
      terminal = ev;
    } else if (on_text) {
      on_text(ev);
    }
  });
  const bool finished = clock.run_until([&] { return terminal.has_value(); });
  stream.on_event(nullptr);
  if (!finished) {
    stream.cancel();
    return fall_back("editor stream went idle");
  }
  if (terminal->kind == TokenEventKind::Error) return fall_back("editor stream failed: " + terminal->detail);

  out.text = stream.buffer();
  out.editor_latency = clock.now() - start;
  return out;
}

}  // namespace edgefuse::agents
