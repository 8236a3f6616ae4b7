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

// Private helpers for strict JSON schema reading. Not installed.

#include <json.hpp>
#include <optional>
#include <set>
#include <string>
#include <string_view>

#include "edgefuse/core/error.hpp"

namespace edgefuse::detail {

// Parses `text`; a syntax error becomes ParseError at `line` (or at the line
// of the offending byte when `line` is 0 and the text spans several lines).
inline nlohmann::json parse_json(std::string_view text, const std::string& source, std::size_t line) {
  try {
    return nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    std::size_t at = line;
    if (at == 0 && e.byte > 0) {
      at = 1;
      for (std::size_t i = 0; i < e.byte - 1 && i < text.size(); ++i) {
        if (text[i] == '\n') ++at;
      }
    }
    throw ParseError(source, at, "", std::string("malformed JSON: ") + e.what());
  }
}

// Reads fields from a JSON object and rejects any field that was never read.
class ObjectReader {
 public:
  ObjectReader(const nlohmann::json& obj, std::string source, std::size_t line, std::string path)
      : obj_(obj), source_(std::move(source)), line_(line), path_(std::move(path)) {
    if (!obj_.is_object()) fail("", "expected object");
  }

  bool has(const std::string& key) const { return obj_.contains(key); }

  template <typename T>
  T required(const std::string& key) {
    auto v = optional<T>(key);
    if (!v) fail(key, "missing required field");
    return *v;
  }

  template <typename T>
  std::optional<T> optional(const std::string& key) {
    seen_.insert(key);
    auto it = obj_.find(key);
    if (it == obj_.end() || it->is_null()) return std::nullopt;
    try {
      if constexpr (std::is_same_v<T, double>) {
        if (!it->is_number()) fail(key, "expected number");
      } else if constexpr (std::is_integral_v<T> && !std::is_same_v<T, bool>) {
        if (!it->is_number_integer()) fail(key, "expected integer");
      } else if constexpr (std::is_same_v<T, bool>) {
        if (!it->is_boolean()) fail(key, "expected boolean");
      } else if constexpr (std::is_same_v<T, std::string>) {
        if (!it->is_string()) fail(key, "expected string");
      }
      return it->get<T>();
    } catch (const nlohmann::json::exception& e) {
      fail(key, e.what());
    }
  }

  const nlohmann::json& required_object(const std::string& key) {
    const nlohmann::json* v = optional_object(key);
    if (!v) fail(key, "missing required field");
    return *v;
  }

  const nlohmann::json* optional_object(const std::string& key) { return optional_of(key, true); }

  const nlohmann::json& required_array(const std::string& key) {
    const nlohmann::json* v = optional_array(key);
    if (!v) fail(key, "missing required field");
    return *v;
  }

  const nlohmann::json* optional_array(const std::string& key) { return optional_of(key, false); }

  void finish() const {
    for (const auto& [key, _] : obj_.items()) {
      if (!seen_.count(key)) fail(key, "unknown field");
    }
  }

  [[noreturn]] void fail(const std::string& key, const std::string& message) const {
    throw ParseError(source_, line_, join(key), message);
  }

  std::string join(const std::string& key) const {
    if (path_.empty()) return key;
    if (key.empty()) return path_;
    return path_ + "." + key;
  }

  const std::string& source() const { return source_; }
  std::size_t line() const { return line_; }

 private:
  const nlohmann::json* optional_of(const std::string& key, bool object) {
    seen_.insert(key);
    auto it = obj_.find(key);
    if (it == obj_.end() || it->is_null()) return nullptr;
    if (object && !it->is_object()) fail(key, "expected object");
    if (!object && !it->is_array()) fail(key, "expected array");
    return &*it;
  }

  const nlohmann::json& obj_;
  std::string source_;
  std::size_t line_;
  std::string path_;
  std::set<std::string> seen_;
};

}  // namespace edgefuse::detail
