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

#include "edgefuse/agents/experts.hpp"

#include <json.hpp>
#include <stdexcept>

#include "edgefuse/core/error.hpp"
#include "edgefuse/core/io.hpp"
#include "json_util.hpp"

namespace edgefuse::agents {

void ExpertFixture::add(std::string frame, RouteLabel route, std::string payload, Millis latency) {
  if (route == RouteLabel::Generic) throw std::invalid_argument("expert fixtures cannot use the Generic route");
  if (latency < Millis{0}) throw std::invalid_argument("expert latency must be non-negative");
  entries_[{std::move(frame), route}] = ExpertEntry{std::move(payload), latency};
}

std::optional<ExpertEntry> ExpertFixture::find(std::string_view frame, RouteLabel route) const {
  const auto it = entries_.find(std::pair<std::string, RouteLabel>(std::string(frame), route));
  if (it == entries_.end()) return std::nullopt;
  return it->second;
}

void ExpertFixture::merge(const ExpertFixture& other) {
  for (const auto& [key, entry] : other.entries_) entries_[key] = entry;
}

ExpertFixture ExpertFixture::parse(std::string_view json_text, const std::string& source) {
  const auto doc = detail::parse_json(json_text, source, 0);
  detail::ObjectReader root(doc, source, 0, "");
  const auto version = root.required<int>("version");
  if (version != 1) throw ParseError(source, 0, "version", "unsupported fixture version " + std::to_string(version));
  const auto& entries = root.required_array("entries");
  root.finish();

  ExpertFixture out;
  for (std::size_t i = 0; i < entries.size(); ++i) {
    detail::ObjectReader e(entries[i], source, 0, "entries[" + std::to_string(i) + "]");
    auto frame = e.required<std::string>("frame");
    const auto route_name = e.required<std::string>("route");
    auto payload = e.required<std::string>("payload");
    const auto latency = e.optional<std::int64_t>("latency_ms").value_or(kDefaultExpertLatency.count());
    e.finish();
    const auto route = parse_route(route_name);
    if (!route || *route == RouteLabel::Generic) e.fail("route", "expected Object, OCR or Face");
    if (frame.empty()) e.fail("frame", "must be non-empty");
    if (latency < 0) e.fail("latency_ms", "must be non-negative");
    out.add(std::move(frame), *route, std::move(payload), Millis{latency});
  }
  return out;
}

ExpertFixture ExpertFixture::load(const std::filesystem::path& path) { return parse(read_file(path), path.string()); }

const ExpertFixture& ExpertFixture::bundled() {
  static const ExpertFixture fixture = parse(assets::get("experts.v1.json"), "experts.v1.json");
  return fixture;
}

RawExpertResponse run_expert(RouteLabel route, const FrameRef& frame, const ExpertFixture& fixtures, Clock& clock) {
  if (route == RouteLabel::Generic) throw std::invalid_argument("run_expert needs an expert route");
  const auto entry = fixtures.find(frame.id, route);
  RawExpertResponse out;
  out.route = route;
  out.payload = entry ? entry->payload : std::string();
  out.latency = entry ? entry->latency : fixtures.missing_latency;
  clock.wait_for(out.latency);
  return out;
}

}  // namespace edgefuse::agents
