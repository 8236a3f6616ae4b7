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

#include "edgefuse/fusion/handoff.hpp"

#include <cmath>
#include <stdexcept>

#include "edgefuse/core/utf8.hpp"

namespace edgefuse::fusion {

std::string_view to_string(HandoffMode m) { return m == HandoffMode::Literal ? "literal" : "additive"; }

std::optional<HandoffMode> parse_handoff_mode(std::string_view s) {
  if (s == "literal") return HandoffMode::Literal;
  if (s == "additive") return HandoffMode::Additive;
  return std::nullopt;
}

void HandoffParams::validate() const {
  if (!(c > 0.0) || !std::isfinite(c)) throw std::invalid_argument("handoff c must be positive");
  if (!(r_t >= 0.0) || !std::isfinite(r_t)) throw std::invalid_argument("handoff r_t must be non-negative");
  if (!(k >= 1.0) || !std::isfinite(k)) throw std::invalid_argument("handoff k must be at least 1");
}

double predict_spoken_real(const HandoffParams& params, Timestamp t1, Timestamp t2) {
  if (t2 < t1) throw std::invalid_argument("t2 precedes t1");
  const double dt = (t2 - t1).count() / 1000.0;
  if (params.mode == HandoffMode::Literal) return params.c * (dt * params.r_t) - 1.0;
  return params.c * (dt + params.k * params.r_t) - 1.0;
}

std::size_t predict_spoken_index(const HandoffParams& params, Timestamp t1, Timestamp t2) {
  const double p = std::floor(predict_spoken_real(params, t1, t2) + 1e-9);
  return p <= 0.0 ? 0 : static_cast<std::size_t>(p);
}

namespace {

bool word_end_at(std::u32string_view text, std::size_t j, bool trailing_word_complete) {
  if (utf8::is_space(text[j])) return false;
  if (j + 1 == text.size()) return trailing_word_complete;
  return utf8::is_space(text[j + 1]);
}

}  // namespace

std::optional<std::size_t> shift_to_word_boundary(std::u32string_view text, std::size_t p,
                                                  bool trailing_word_complete) {
  if (p > text.size()) throw std::out_of_range("handoff index past end of text");
  if (text.empty()) return std::nullopt;
  std::size_t j = p < text.size() ? p : text.size() - 1;
  while (true) {
    if (word_end_at(text, j, trailing_word_complete)) return j;
    if (j == 0) return std::nullopt;
    --j;
  }
}

std::optional<std::size_t> next_word_end(std::u32string_view text, std::size_t from, bool trailing_word_complete) {
  for (std::size_t j = from; j < text.size(); ++j) {
    if (word_end_at(text, j, trailing_word_complete)) return j;
  }
  return std::nullopt;
}

}  // namespace edgefuse::fusion
