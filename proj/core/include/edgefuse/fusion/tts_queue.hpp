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
#include <string>
#include <string_view>

#include "edgefuse/core/clock.hpp"
#include "edgefuse/core/error.hpp"

namespace edgefuse::fusion {

class TruncationBehindCursor : public Error {
 public:
  TruncationBehindCursor(std::size_t keep_count, std::size_t spoken)
      : Error("truncation to " + std::to_string(keep_count) + " characters is behind the spoken cursor at " +
              std::to_string(spoken)),
        keep_count_(keep_count),
        spoken_(spoken) {}

  std::size_t keep_count() const { return keep_count_; }
  std::size_t spoken() const { return spoken_; }

 private:
  std::size_t keep_count_;
  std::size_t spoken_;
};

// Character-paced speech queue. Speech consumes queued characters at `rate`
// characters per second whenever any are waiting and idles otherwise.
// spoken_count() is the number of characters fully spoken so far; those can
// no longer be withdrawn.
class TtsQueue {
 public:
  TtsQueue(const Clock& clock, double rate);

  void enqueue(std::string_view utf8_text);

  // Keeps the first `count` characters. Throws TruncationBehindCursor if that
  // would withdraw a spoken character; a no-op if count >= length.
  void truncate_to(std::size_t count);
  // Keeps characters [0, keep_through].
  void truncate_after(std::size_t keep_through) { truncate_to(keep_through + 1); }

  std::size_t spoken_count() const;
  std::size_t length() const { return text_.size(); }
  const std::u32string& chars() const { return text_; }
  std::string text() const;
  std::string spoken_text() const;

  std::optional<Timestamp> first_enqueue_at() const { return first_enqueue_; }
  std::optional<Timestamp> last_enqueue_at() const { return last_enqueue_; }
  // When speech of the current contents finishes, assuming nothing else arrives.
  std::optional<Timestamp> drained_at() const;

  double rate() const { return rate_; }

 private:
  double progress_at(Timestamp t) const;
  void sync(Timestamp t);

  const Clock& clock_;
  double rate_;
  std::u32string text_;
  // Speech position (fractional characters) as of `synced_`.
  double progress_ = 0.0;
  Timestamp synced_{};
  std::optional<Timestamp> first_enqueue_;
  std::optional<Timestamp> last_enqueue_;
};

}  // namespace edgefuse::fusion
