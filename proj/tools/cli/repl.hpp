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

#include <iosfwd>
#include <optional>
#include <string>

#include "config.hpp"
#include "edgefuse/pipeline/pipeline.hpp"

namespace edgefuse::cli {

struct ReplOptions {
  CliConfig config;
  sim::Overrides flags;
  bool fast = false;                    // virtual time: print each answer at once
  std::optional<std::string> tts_command;  // receives each final text on stdin
  std::optional<std::string> demo_path;    // scenario whose records script the demo
};

// One query per input line; ":help" lists the commands. Returns at end of input.
int run_repl(const ReplOptions& options, std::istream& in, std::ostream& out, std::ostream& err);

// "track=... ttft=... " summary printed after each answer.
std::string describe_result(const pipeline::QueryResult& r);

}  // namespace edgefuse::cli
