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

#include "edgefuse/fusion/tts_queue.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "edgefuse/core/utf8.hpp"

namespace edgefuse::fusion {

TtsQueue::TtsQueue(const Clock& clock, double rate) : clock_(clock), rate_(rate), synced_(clock.now()) {
  if (!(rate > 0.0) || !std::isfinite(rate)) throw std::invalid_argument("TTS rate must be positive");
}

double TtsQueue::progress_at(Timestamp t) const {
  const double len = static_cast<double>(text_.size());
  if (progress_ >= len || t <= synced_) return std::min(progress_, len);
  const double advanced = progress_ + rate_ * ((t - synced_).count() / 1000.0);
  return std::min(advanced, len);
}

void TtsQueue::sync(Timestamp t) {
  progress_ = progress_at(t);
  if (t > synced_) synced_ = t;
}

void TtsQueue::enqueue(std::string_view utf8_text) {
  const Timestamp now = clock_.now();
  sync(now);
  const auto cps = utf8::decode(utf8_text);
  if (cps.empty()) return;
  text_ += cps;
  if (!first_enqueue_) first_enqueue_ = now;
  last_enqueue_ = now;
}

void TtsQueue::truncate_to(std::size_t count) {
  sync(clock_.now());
  if (count >= text_.size()) return;
  const std::size_t spoken = spoken_count();
  if (count < spoken) throw TruncationBehindCursor(count, spoken);
  text_.resize(count);
  progress_ = std::min(progress_, static_cast<double>(count));
}

std::size_t TtsQueue::spoken_count() const {
  const double p = progress_at(clock_.now());
  const auto n = static_cast<std::size_t>(std::floor(p + 1e-9));
  return std::min(n, text_.size());
}

std::string TtsQueue::text() const { return utf8::encode(text_); }

std::string TtsQueue::spoken_text() const { return utf8::encode(std::u32string_view(text_).substr(0, spoken_count())); }

std::optional<Timestamp> TtsQueue::drained_at() const {
  if (text_.empty()) return std::nullopt;
  const Timestamp now = clock_.now();
  const double remaining = static_cast<double>(text_.size()) - progress_at(now);
  if (remaining <= 0.0) return now;
  const auto ms = static_cast<std::int64_t>(std::ceil(remaining / rate_ * 1000.0 - 1e-9));
  return now + Millis{ms};
}

}  // namespace edgefuse::fusion
