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

#include <string>
#include <string_view>

namespace edgefuse::utf8 {

// Invalid sequences decode to U+FFFD, one per offending byte.
std::u32string decode(std::string_view s);
std::string encode(std::u32string_view s);

// Number of Unicode scalar values.
std::size_t length(std::string_view s);

bool is_space(char32_t c);

// Lower-cases ASCII letters and leaves everything else untouched.
std::string fold_ascii(std::string_view s);

// First `count` scalar values of `s`, re-encoded.
std::string prefix(std::string_view s, std::size_t count);

}  // namespace edgefuse::utf8
