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

#include "edgefuse/core/types.hpp"

#include <array>
#include <stdexcept>
#include <utility>

#include "edgefuse/core/utf8.hpp"

namespace edgefuse {

namespace {

bool blank(std::string_view s) {
  for (char32_t c : utf8::decode(s)) {
    if (!utf8::is_space(c)) return false;
  }
  return true;
}

constexpr std::array<std::pair<RouteLabel, std::string_view>, 4> kRoutes{{
    {RouteLabel::Object, "Object"},
    {RouteLabel::OCR, "OCR"},
    {RouteLabel::Face, "Face"},
    {RouteLabel::Generic, "Generic"},
}};

constexpr std::array<std::pair<Track, std::string_view>, 4> kTracks{{
    {Track::UrgentExpert, "UrgentExpert"},
    {Track::NormalExpert, "NormalExpert"},
    {Track::UrgentGeneric, "UrgentGeneric"},
    {Track::NormalGeneric, "NormalGeneric"},
}};

}  // namespace

Query make_query(std::string id, std::string text, FrameRef frame) {
  if (blank(text)) throw std::invalid_argument("query text is blank");
  if (frame.id.empty()) throw std::invalid_argument("frame id is empty");
  return Query{std::move(id), std::move(text), std::move(frame)};
}

std::string_view to_string(RouteLabel r) {
  for (const auto& [v, name] : kRoutes) {
    if (v == r) return name;
  }
  return "?";
}

std::string_view to_string(Track t) {
  for (const auto& [v, name] : kTracks) {
    if (v == t) return name;
  }
  return "?";
}

std::string_view to_string(BackendKind k) {
  switch (k) {
    case BackendKind::Edge:
      return "edge";
    case BackendKind::Cloud:
      return "cloud";
    case BackendKind::Fusion:
      return "fusion";
    case BackendKind::Editor:
      return "editor";
  }
  return "?";
}

std::string_view to_string(TokenEventKind k) {
  switch (k) {
    case TokenEventKind::First:
      return "first";
    case TokenEventKind::Token:
      return "token";
    case TokenEventKind::End:
      return "end";
    case TokenEventKind::Error:
      return "error";
  }
  return "?";
}

std::optional<RouteLabel> parse_route(std::string_view s) {
  for (const auto& [v, name] : kRoutes) {
    if (name == s) return v;
  }
  return std::nullopt;
}

std::optional<Track> parse_track(std::string_view s) {
  for (const auto& [v, name] : kTracks) {
    if (name == s) return v;
  }
  return std::nullopt;
}

}  // namespace edgefuse
