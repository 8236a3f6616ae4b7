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

#include "edgefuse/sim/scenario.hpp"

#include <json.hpp>
#include <set>

#include "edgefuse/core/error.hpp"
#include "edgefuse/core/io.hpp"
#include "json_util.hpp"

namespace edgefuse::sim {

using nlohmann::json;
using nlohmann::ordered_json;
using backends::ScriptToken;
using backends::StreamScript;
using backends::Terminal;

std::string_view to_string(System s) {
  switch (s) {
    case System::AudoSight: return "audo-sight";
    case System::EdgeOnly: return "edge-only";
    case System::CloudOnly: return "cloud-only";
  }
  return "?";
}

std::optional<System> parse_system(std::string_view s) {
  for (System sys : kAllSystems) {
    if (to_string(sys) == s) return sys;
  }
  return std::nullopt;
}

void Overrides::merge(const Overrides& top) {
  auto take = [](auto& mine, const auto& theirs) {
    if (theirs) mine = theirs;
  };
  take(urgency_threshold, top.urgency_threshold);
  take(route_threshold, top.route_threshold);
  take(handoff_mode, top.handoff_mode);
  take(c, top.c);
  take(r_t, top.r_t);
  take(k, top.k);
  take(classifier_overhead_ms, top.classifier_overhead_ms);
  take(router_overhead_ms, top.router_overhead_ms);
  take(editor_latency_ms, top.editor_latency_ms);
  take(fusion_ttft_ms, top.fusion_ttft_ms);
  take(jitter_ms, top.jitter_ms);
  take(classifier, top.classifier);
}

namespace {

StreamScript read_script(const json& node, detail::ObjectReader& parent, const std::string& path) {
  detail::ObjectReader r(node, parent.source(), parent.line(), path);
  StreamScript s;
  s.ttft = Millis{r.required<std::int64_t>("ttft_ms")};
  const json* tokens = r.optional_array("tokens");
  const auto text = r.optional<std::string>("text");
  const auto gap = r.optional<std::int64_t>("gap_ms");
  const auto terminal = r.optional<std::string>("terminal").value_or("end");
  r.finish();

  if (terminal == "end") {
    s.terminal = Terminal::End;
  } else if (terminal == "error") {
    s.terminal = Terminal::Error;
  } else {
    r.fail("terminal", "expected \"end\" or \"error\"");
  }
  if (tokens && text) r.fail("text", "give either tokens or text, not both");
  if (gap && !text) r.fail("gap_ms", "only valid together with text");
  if (text) {
    const StreamScript split = StreamScript::from_text(*text, s.ttft, Millis{gap.value_or(0)}, s.terminal);
    s.tokens = split.tokens;
  } else if (tokens) {
    for (std::size_t i = 0; i < tokens->size(); ++i) {
      const json& t = (*tokens)[i];
      const std::string where = "tokens[" + std::to_string(i) + "]";
      if (!t.is_array() || t.size() != 2 || !t[0].is_string() || !t[1].is_number_integer()) {
        r.fail(where, "expected [text, delay_ms]");
      }
      s.tokens.push_back(ScriptToken{t[0].get<std::string>(), Millis{t[1].get<std::int64_t>()}});
    }
  }
  return s;
}

Overrides read_overrides(const json& node, detail::ObjectReader& parent) {
  detail::ObjectReader r(node, parent.source(), parent.line(), "overrides");
  Overrides o;
  o.urgency_threshold = r.optional<double>("urgency_threshold");
  o.route_threshold = r.optional<double>("route_threshold");
  if (auto m = r.optional<std::string>("handoff_mode")) {
    o.handoff_mode = fusion::parse_handoff_mode(*m);
    if (!o.handoff_mode) r.fail("handoff_mode", "expected \"literal\" or \"additive\"");
  }
  o.c = r.optional<double>("c");
  o.r_t = r.optional<double>("r_t");
  o.k = r.optional<double>("k");
  o.classifier_overhead_ms = r.optional<std::int64_t>("classifier_overhead_ms");
  o.router_overhead_ms = r.optional<std::int64_t>("router_overhead_ms");
  o.editor_latency_ms = r.optional<std::int64_t>("editor_latency_ms");
  o.fusion_ttft_ms = r.optional<std::int64_t>("fusion_ttft_ms");
  o.jitter_ms = r.optional<std::int64_t>("jitter_ms");
  if (auto c = r.optional<std::string>("classifier")) {
    if (*c == "lexicon") {
      o.classifier = ClassifierChoice::Lexicon;
    } else if (*c == "truth") {
      o.classifier = ClassifierChoice::Truth;
    } else {
      r.fail("classifier", "expected \"lexicon\" or \"truth\"");
    }
  }
  r.finish();
  return o;
}

RouteLabel read_route(detail::ObjectReader& r, const std::string& key) {
  const auto name = r.required<std::string>(key);
  const auto route = parse_route(name);
  if (!route) r.fail(key, "unknown route \"" + name + "\"");
  return *route;
}

ScenarioRecord read_record(detail::ObjectReader& r) {
  ScenarioRecord rec;
  rec.id = r.required<std::string>("id");
  rec.query = r.required<std::string>("query");
  rec.frame = r.required<std::string>("frame");
  {
    detail::ObjectReader t(r.required_object("truth"), r.source(), r.line(), "truth");
    rec.truth.urgent = t.required<bool>("urgent");
    rec.truth.route = read_route(t, "route");
    t.finish();
  }
  if (const json* scripts = r.optional_object("scripts")) {
    detail::ObjectReader s(*scripts, r.source(), r.line(), "scripts");
    auto one = [&](const char* key) -> std::optional<StreamScript> {
      if (const json* node = s.optional_object(key)) return read_script(*node, s, std::string("scripts.") + key);
      return std::nullopt;
    };
    rec.scripts.edge = one("edge");
    rec.scripts.cloud = one("cloud");
    rec.scripts.fusion = one("fusion");
    rec.scripts.editor = one("editor");
    s.finish();
  }
  if (const json* experts = r.optional_array("experts")) {
    for (std::size_t i = 0; i < experts->size(); ++i) {
      detail::ObjectReader e((*experts)[i], r.source(), r.line(), "experts[" + std::to_string(i) + "]");
      ExpertSpec spec;
      spec.route = read_route(e, "route");
      spec.payload = e.required<std::string>("payload");
      spec.latency = Millis{e.optional<std::int64_t>("latency_ms").value_or(40)};
      e.finish();
      rec.experts.push_back(std::move(spec));
    }
  }
  r.finish();
  return rec;
}

bool blank(std::string_view s) { return s.find_first_not_of(" \t\r\n") == std::string_view::npos; }

void check_script(const std::optional<StreamScript>& s, const std::string& who, std::vector<std::string>& out) {
  if (!s) return;
  if (s->ttft < Millis{0}) out.push_back(who + ": negative ttft_ms");
  for (const auto& t : s->tokens) {
    if (t.delay < Millis{0}) {
      out.push_back(who + ": negative token delay");
      break;
    }
  }
}

}  // namespace

void validate_scenario(const Scenario& s) {
  std::vector<std::string> v;
  if (s.schema != kScenarioSchema) v.push_back("unsupported schema " + std::to_string(s.schema));
  if (s.records.empty()) v.emplace_back("no records");

  const Overrides& o = s.overrides;
  auto prob = [&](const std::optional<double>& x, const char* name) {
    if (x && !(*x > 0.0 && *x < 1.0)) v.push_back(std::string("overrides.") + name + " must lie in (0, 1)");
  };
  prob(o.urgency_threshold, "urgency_threshold");
  prob(o.route_threshold, "route_threshold");
  if (o.c && !(*o.c > 0.0)) v.emplace_back("overrides.c must be positive");
  if (o.r_t && !(*o.r_t >= 0.0)) v.emplace_back("overrides.r_t must be non-negative");
  if (o.k && !(*o.k >= 1.0)) v.emplace_back("overrides.k must be at least 1");
  for (const auto& [x, name] : {std::pair{o.classifier_overhead_ms, "classifier_overhead_ms"},
                                std::pair{o.router_overhead_ms, "router_overhead_ms"},
                                std::pair{o.editor_latency_ms, "editor_latency_ms"},
                                std::pair{o.fusion_ttft_ms, "fusion_ttft_ms"}, std::pair{o.jitter_ms, "jitter_ms"}}) {
    if (x && *x < 0) v.push_back(std::string("overrides.") + name + " must be non-negative");
  }

  std::set<std::string> ids;
  for (std::size_t i = 0; i < s.records.size(); ++i) {
    const auto& r = s.records[i];
    const std::string who = "record " + (r.id.empty() ? "#" + std::to_string(i + 1) : r.id);
    if (r.id.empty()) v.push_back(who + ": empty id");
    if (!r.id.empty() && !ids.insert(r.id).second) v.push_back(who + ": duplicate id");
    if (blank(r.query)) v.push_back(who + ": blank query");
    if (r.frame.empty()) v.push_back(who + ": empty frame");
    if (!r.scripts.edge) v.push_back(who + ": missing edge script");
    if (!r.scripts.cloud) v.push_back(who + ": missing cloud script");
    check_script(r.scripts.edge, who + " edge", v);
    check_script(r.scripts.cloud, who + " cloud", v);
    check_script(r.scripts.fusion, who + " fusion", v);
    check_script(r.scripts.editor, who + " editor", v);
    std::set<RouteLabel> routes;
    for (const auto& e : r.experts) {
      if (e.route == RouteLabel::Generic) v.push_back(who + ": expert entry with the Generic route");
      if (!routes.insert(e.route).second) v.push_back(who + ": duplicate expert route " + std::string(to_string(e.route)));
      if (e.latency < Millis{0}) v.push_back(who + ": negative expert latency");
    }
  }
  if (!v.empty()) throw ValidationError(std::move(v));
}

Scenario parse_scenario(std::string_view text, const std::string& source) {
  Scenario s;
  bool have_header = false;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos < text.size()) {
    auto nl = text.find('\n', pos);
    if (nl == std::string_view::npos) nl = text.size();
    const std::string_view line = text.substr(pos, nl - pos);
    pos = nl + 1;
    ++line_no;
    if (blank(line)) continue;

    const json doc = detail::parse_json(line, source, line_no);
    detail::ObjectReader r(doc, source, line_no, "");
    const auto kind = r.required<std::string>("kind");
    if (kind == "header") {
      if (have_header) r.fail("kind", "duplicate header");
      if (!s.records.empty()) r.fail("kind", "header must be the first line");
      s.schema = r.required<int>("schema");
      if (s.schema != kScenarioSchema) r.fail("schema", "unsupported schema " + std::to_string(s.schema));
      const auto seed = r.required<std::int64_t>("seed");
      if (seed < 0) r.fail("seed", "must be non-negative");
      s.seed = static_cast<std::uint64_t>(seed);
      if (const json* o = r.optional_object("overrides")) s.overrides = read_overrides(*o, r);
      r.finish();
      have_header = true;
    } else if (kind == "record") {
      if (!have_header) r.fail("kind", "first line must be the header");
      try {
        s.records.push_back(read_record(r));
      } catch (const ParseError& e) {
        const auto id = doc.find("id");
        if (id == doc.end() || !id->is_string()) throw;
        const std::string field = "record " + id->get<std::string>() + (e.field().empty() ? "" : ": " + e.field());
        const std::string what = e.what();
        const auto cut = what.rfind(": ");
        throw ParseError(e.file(), e.line(), field, cut == std::string::npos ? what : what.substr(cut + 2));
      }
    } else {
      r.fail("kind", "expected \"header\" or \"record\"");
    }
  }
  validate_scenario(s);
  return s;
}

Scenario load_scenario(const std::filesystem::path& path) { return parse_scenario(read_file(path), path.string()); }

namespace {

ordered_json script_json(const StreamScript& s) {
  ordered_json j;
  j["ttft_ms"] = s.ttft.count();
  ordered_json tokens = ordered_json::array();
  for (const auto& t : s.tokens) tokens.push_back(ordered_json::array({t.text, t.delay.count()}));
  j["tokens"] = tokens;
  j["terminal"] = s.terminal == Terminal::End ? "end" : "error";
  return j;
}

}  // namespace

std::string serialize_scenario(const Scenario& s) {
  std::string out;
  ordered_json header;
  header["kind"] = "header";
  header["schema"] = s.schema;
  header["seed"] = s.seed;
  ordered_json o = ordered_json::object();
  const Overrides& ov = s.overrides;
  if (ov.urgency_threshold) o["urgency_threshold"] = *ov.urgency_threshold;
  if (ov.route_threshold) o["route_threshold"] = *ov.route_threshold;
  if (ov.handoff_mode) o["handoff_mode"] = fusion::to_string(*ov.handoff_mode);
  if (ov.c) o["c"] = *ov.c;
  if (ov.r_t) o["r_t"] = *ov.r_t;
  if (ov.k) o["k"] = *ov.k;
  if (ov.classifier_overhead_ms) o["classifier_overhead_ms"] = *ov.classifier_overhead_ms;
  if (ov.router_overhead_ms) o["router_overhead_ms"] = *ov.router_overhead_ms;
  if (ov.editor_latency_ms) o["editor_latency_ms"] = *ov.editor_latency_ms;
  if (ov.fusion_ttft_ms) o["fusion_ttft_ms"] = *ov.fusion_ttft_ms;
  if (ov.jitter_ms) o["jitter_ms"] = *ov.jitter_ms;
  if (ov.classifier) o["classifier"] = *ov.classifier == ClassifierChoice::Lexicon ? "lexicon" : "truth";
  header["overrides"] = o;
  out += header.dump() + "\n";

  for (const auto& r : s.records) {
    ordered_json j;
    j["kind"] = "record";
    j["id"] = r.id;
    j["query"] = r.query;
    j["frame"] = r.frame;
    j["truth"] = {{"urgent", r.truth.urgent}, {"route", std::string(to_string(r.truth.route))}};
    ordered_json scripts = ordered_json::object();
    if (r.scripts.edge) scripts["edge"] = script_json(*r.scripts.edge);
    if (r.scripts.cloud) scripts["cloud"] = script_json(*r.scripts.cloud);
    if (r.scripts.fusion) scripts["fusion"] = script_json(*r.scripts.fusion);
    if (r.scripts.editor) scripts["editor"] = script_json(*r.scripts.editor);
    j["scripts"] = scripts;
    ordered_json experts = ordered_json::array();
    for (const auto& e : r.experts) {
      ordered_json ej;
      ej["route"] = std::string(to_string(e.route));
      ej["payload"] = e.payload;
      ej["latency_ms"] = e.latency.count();
      experts.push_back(ej);
    }
    j["experts"] = experts;
    out += j.dump() + "\n";
  }
  return out;
}

}  // namespace edgefuse::sim
