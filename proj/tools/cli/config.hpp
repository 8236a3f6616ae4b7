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

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "edgefuse/backends/live.hpp"
#include "edgefuse/sim/scenario.hpp"

namespace edgefuse::cli {

// Settings from a config file. The layout follows PipelineConfig:
//
//   {"classifier": {"urgency_threshold": 0.3, "route_threshold": 0.86, "overhead_ms": 9},
//    "handoff": {"mode": "literal", "c": 3.33, "r_t": 0.5, "k": 2},
//    "router_overhead_ms": 0,
//    "classifier_plugin": "lexicon" | "truth" | {"command": ["prog", "arg"]},
//    "edge": ENDPOINT, "cloud": ENDPOINT, "fusion": ENDPOINT, "editor": ENDPOINT,
//    "experts": "fixtures.json",
//    "simulation": {"editor_latency_ms": 800, "fusion_ttft_ms": 250, "jitter_ms": 0},
//    "out": "results"}
//
// ENDPOINT is {"base_url": "...", "model": "...", "api_key_env": "VAR", "timeout_ms": 30000}.
// Credentials only ever come from the named environment variable.
// Relative paths resolve against the config file's directory.
struct CliConfig {
  sim::Overrides overrides;
  std::optional<std::vector<std::string>> classifier_command;
  std::optional<backends::BackendEndpoint> edge;
  std::optional<backends::BackendEndpoint> cloud;
  std::optional<backends::BackendEndpoint> fusion;
  std::optional<backends::BackendEndpoint> editor;
  std::optional<std::filesystem::path> experts;
  std::optional<std::filesystem::path> out;
};

// Throws IoError, ParseError or ValidationError.
CliConfig parse_cli_config(std::string_view text, const std::string& source,
                           const std::filesystem::path& base_dir = {});
CliConfig load_cli_config(const std::filesystem::path& path);

}  // namespace edgefuse::cli
