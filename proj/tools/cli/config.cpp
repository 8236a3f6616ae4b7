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

#include "config.hpp"

#include "edgefuse/core/io.hpp"
#include "json_util.hpp"

namespace edgefuse::cli {

using nlohmann::json;

namespace {

backends::BackendEndpoint read_endpoint(const json& node, detail::ObjectReader& parent, const std::string& key) {
  detail::ObjectReader r(node, parent.source(), parent.line(), key);
  backends::BackendEndpoint e;
  e.base_url = r.required<std::string>("base_url");
  e.model = r.required<std::string>("model");
  e.api_key_env = r.optional<std::string>("api_key_env").value_or("");
  e.timeout = Millis{r.optional<std::int64_t>("timeout_ms").value_or(30000)};
  r.finish();
  try {
    e.validate();
  } catch (const std::invalid_argument& ex) {
    r.fail("", ex.what());
  }
  return e;
}

}  // namespace

CliConfig parse_cli_config(std::string_view text, const std::string& source, const std::filesystem::path& base_dir) {
  const json doc = detail::parse_json(text, source, 0);
  detail::ObjectReader root(doc, source, 0, "");
  CliConfig c;
  auto resolve = [&](const std::string& p) {
    std::filesystem::path path(p);
    return path.is_relative() && !base_dir.empty() ? base_dir / path : path;
  };

  if (const json* node = root.optional_object("classifier")) {
    detail::ObjectReader r(*node, source, 0, "classifier");
    c.overrides.urgency_threshold = r.optional<double>("urgency_threshold");
    c.overrides.route_threshold = r.optional<double>("route_threshold");
    c.overrides.classifier_overhead_ms = r.optional<std::int64_t>("overhead_ms");
    r.finish();
  }
  if (const json* node = root.optional_object("handoff")) {
    detail::ObjectReader r(*node, source, 0, "handoff");
    if (auto m = r.optional<std::string>("mode")) {
      c.overrides.handoff_mode = fusion::parse_handoff_mode(*m);
      if (!c.overrides.handoff_mode) r.fail("mode", "expected \"literal\" or \"additive\"");
    }
    c.overrides.c = r.optional<double>("c");
    c.overrides.r_t = r.optional<double>("r_t");
    c.overrides.k = r.optional<double>("k");
    r.finish();
  }
  c.overrides.router_overhead_ms = root.optional<std::int64_t>("router_overhead_ms");

  if (root.has("classifier_plugin")) {
    const json& plugin = doc.at("classifier_plugin");
    if (plugin.is_string()) {
      const auto name = root.required<std::string>("classifier_plugin");
      if (name == "lexicon") {
        c.overrides.classifier = sim::ClassifierChoice::Lexicon;
      } else if (name == "truth") {
        c.overrides.classifier = sim::ClassifierChoice::Truth;
      } else {
        root.fail("classifier_plugin", "expected \"lexicon\", \"truth\" or {\"command\": [...]}");
      }
    } else {
      detail::ObjectReader r(root.required_object("classifier_plugin"), source, 0, "classifier_plugin");
      const json& argv = r.required_array("command");
      std::vector<std::string> cmd;
      for (const auto& a : argv) {
        if (!a.is_string()) r.fail("command", "expected an array of strings");
        cmd.push_back(a.get<std::string>());
      }
      if (cmd.empty()) r.fail("command", "must not be empty");
      r.finish();
      c.classifier_command = std::move(cmd);
    }
  }

  for (auto [key, slot] : {std::pair{"edge", &c.edge}, std::pair{"cloud", &c.cloud}, std::pair{"fusion", &c.fusion},
                           std::pair{"editor", &c.editor}}) {
    if (const json* node = root.optional_object(key)) *slot = read_endpoint(*node, root, key);
  }
  if (auto p = root.optional<std::string>("experts")) c.experts = resolve(*p);

  if (const json* node = root.optional_object("simulation")) {
    detail::ObjectReader r(*node, source, 0, "simulation");
    c.overrides.editor_latency_ms = r.optional<std::int64_t>("editor_latency_ms");
    c.overrides.fusion_ttft_ms = r.optional<std::int64_t>("fusion_ttft_ms");
    c.overrides.jitter_ms = r.optional<std::int64_t>("jitter_ms");
    r.finish();
  }
  if (auto p = root.optional<std::string>("out")) c.out = resolve(*p);
  root.finish();
  return c;
}

CliConfig load_cli_config(const std::filesystem::path& path) {
  return parse_cli_config(read_file(path), path.string(), path.parent_path());
}

}  // namespace edgefuse::cli
