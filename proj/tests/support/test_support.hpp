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
#include <string>

#include "edgefuse/backends/backend.hpp"
#include "edgefuse/core/clock.hpp"

namespace edgefuse::testing {

inline std::filesystem::path source_path(const std::string& rel) { return std::filesystem::path(EDGEFUSE_SOURCE_DIR) / rel; }

inline backends::StreamScript words(const std::string& text, std::int64_t ttft_ms, std::int64_t gap_ms = 40,
                                    backends::Terminal terminal = backends::Terminal::End) {
  return backends::StreamScript::from_text(text, Millis{ttft_ms}, Millis{gap_ms}, terminal);
}

inline Timestamp at_ms(std::int64_t ms) { return Timestamp::from_ms(ms); }

// Fresh scratch directory under the system temp dir.
inline std::filesystem::path scratch_dir(const std::string& name) {
  auto dir = std::filesystem::temp_directory_path() / ("edgefuse-test-" + name);
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  return dir;
}

}  // namespace edgefuse::testing
