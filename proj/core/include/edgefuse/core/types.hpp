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

#include <optional>
#include <string>
#include <string_view>

#include "edgefuse/core/time.hpp"

namespace edgefuse {

// Opaque handle to a scene frame. Bytes are never decoded here.
struct FrameRef {
  std::string id;
  std::optional<std::string> bytes;

  bool operator==(const FrameRef&) const = default;
};

struct Query {
  std::string id;
  std::string text;
  FrameRef frame;
};

// Throws std::invalid_argument if the text is blank or the frame id is empty.
Query make_query(std::string id, std::string text, FrameRef frame);

enum class RouteLabel { Object, OCR, Face, Generic };

enum class Track { UrgentExpert, NormalExpert, UrgentGeneric, NormalGeneric };

enum class BackendKind { Edge, Cloud, Fusion, Editor };

// Total over all (urgent, route) pairs. Expert routes collapse by the urgency flag only.
constexpr Track select_track(bool urgent, RouteLabel route) {
  const bool generic = route == RouteLabel::Generic;
  if (urgent) return generic ? Track::UrgentGeneric : Track::UrgentExpert;
  return generic ? Track::NormalGeneric : Track::NormalExpert;
}

constexpr bool is_urgent(Track t) { return t == Track::UrgentExpert || t == Track::UrgentGeneric; }
constexpr bool is_expert(Track t) { return t == Track::UrgentExpert || t == Track::NormalExpert; }

std::string_view to_string(RouteLabel r);
std::string_view to_string(Track t);
std::string_view to_string(BackendKind k);

std::optional<RouteLabel> parse_route(std::string_view s);
std::optional<Track> parse_track(std::string_view s);

enum class TokenEventKind { First, Token, End, Error };

std::string_view to_string(TokenEventKind k);

struct TokenEvent {
  TokenEventKind kind;
  std::string text;  // empty for End; Error carries a diagnostic in `detail`
  Timestamp at;
  BackendKind source;
  std::string detail;

  bool terminal() const { return kind == TokenEventKind::End || kind == TokenEventKind::Error; }
  bool operator==(const TokenEvent&) const = default;
};

}  // namespace edgefuse
