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

#include <cstddef>
#include <optional>
#include <string_view>

#include "edgefuse/core/time.hpp"

namespace edgefuse::fusion {

// Literal: p = c * ((t2 - t1) * r_t) - 1
// Additive: p = c * ((t2 - t1) + k * r_t) - 1
enum class HandoffMode { Literal, Additive };

std::string_view to_string(HandoffMode m);
std::optional<HandoffMode> parse_handoff_mode(std::string_view s);

struct HandoffParams {
  double c = 3.33;    // TTS rate, characters per second
  double r_t = 0.5;   // estimated fusion latency, seconds
  HandoffMode mode = HandoffMode::Literal;
  double k = 2.0;     // Additive safety multiplier

  // Throws std::invalid_argument unless c > 0, r_t >= 0 and k >= 1.
  void validate() const;
};

// Unfloored prediction, times in seconds.
double predict_spoken_real(const HandoffParams& params, Timestamp t1, Timestamp t2);

// Index of the last character predicted to be spoken when the fusion
// continuation starts: the prediction floored, negative results clamped to 0.
// Throws std::invalid_argument if t2 < t1.
std::size_t predict_spoken_index(const HandoffParams& params, Timestamp t1, Timestamp t2);

constexpr std::size_t clamp_index(std::size_t p, std::size_t edge_len) { return p < edge_len ? p : edge_len; }

// Index of the last character of the nearest word ending at or before `p`,
// or nullopt when no complete word precedes it. A word is a maximal run of
// non-whitespace; the run at the very end of `text` only counts when
// `trailing_word_complete` (the stream that produced it has ended).
// Throws std::out_of_range if p > text.size().
std::optional<std::size_t> shift_to_word_boundary(std::u32string_view text, std::size_t p,
                                                  bool trailing_word_complete = true);

// Smallest word end j with j >= from, or nullopt.
std::optional<std::size_t> next_word_end(std::u32string_view text, std::size_t from, bool trailing_word_complete = true);

}  // namespace edgefuse::fusion
