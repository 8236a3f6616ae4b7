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

#include <gtest/gtest.h>

#include <random>

#include "edgefuse/fusion/tts_queue.hpp"

namespace edgefuse::fusion {
namespace {

TEST(TtsQueue, SpeaksAtRateFromFirstEnqueue) {
  VirtualClock clock;
  TtsQueue q(clock, 3.33);
  clock.advance(Millis{500});
  q.enqueue("hello world");
  EXPECT_EQ(q.spoken_count(), 0u);
  clock.advance(Millis{1000});
  EXPECT_EQ(q.spoken_count(), 3u);  // 3.33
  clock.advance(Millis{2000});
  EXPECT_EQ(q.spoken_count(), 9u);  // 9.99
  EXPECT_EQ(q.spoken_text(), "hello wor");
  clock.advance(Millis{100000});
  EXPECT_EQ(q.spoken_count(), 11u);
  EXPECT_EQ(q.first_enqueue_at()->ms(), 500);
}

TEST(TtsQueue, IdlesWhenEmptyThenResumes) {
  VirtualClock clock;
  TtsQueue q(clock, 10.0);
  q.enqueue("ab");
  clock.advance(Millis{5000});
  EXPECT_EQ(q.spoken_count(), 2u);
  q.enqueue("cd");
  clock.advance(Millis{99});
  EXPECT_EQ(q.spoken_count(), 2u);
  clock.advance(Millis{1});
  EXPECT_EQ(q.spoken_count(), 3u);
  EXPECT_EQ(q.last_enqueue_at()->ms(), 5000);
}

TEST(TtsQueue, TruncationKeepsPrefix) {
  VirtualClock clock;
  TtsQueue q(clock, 10.0);
  q.enqueue("abcdefgh");
  clock.advance(Millis{300});
  q.truncate_to(5);
  EXPECT_EQ(q.text(), "abcde");
  q.truncate_to(3);
  EXPECT_EQ(q.text(), "abc");
  q.truncate_to(50);
  EXPECT_EQ(q.text(), "abc");
  EXPECT_THROW(q.truncate_after(1), TruncationBehindCursor);
  EXPECT_EQ(q.text(), "abc");
}

TEST(TtsQueue, TruncationBehindCursorThrowsAndLeavesQueue) {
  VirtualClock clock;
  TtsQueue q(clock, 10.0);
  q.enqueue("abcdefgh");
  clock.advance(Millis{450});  // 4.5 spoken -> 4
  try {
    q.truncate_to(3);
    FAIL();
  } catch (const TruncationBehindCursor& e) {
    EXPECT_EQ(e.keep_count(), 3u);
    EXPECT_EQ(e.spoken(), 4u);
  }
  EXPECT_EQ(q.text(), "abcdefgh");
  EXPECT_NO_THROW(q.truncate_to(4));
  EXPECT_EQ(q.text(), "abcd");
}

TEST(TtsQueue, CountsCharactersNotBytes) {
  VirtualClock clock;
  TtsQueue q(clock, 1.0);
  q.enqueue("\xC3\xA9t\xC3\xA9");
  EXPECT_EQ(q.length(), 3u);
  clock.advance(Millis{2000});
  EXPECT_EQ(q.spoken_text(), "\xC3\xA9t");
}

TEST(TtsQueue, DrainedAt) {
  VirtualClock clock;
  TtsQueue q(clock, 4.0);
  EXPECT_FALSE(q.drained_at());
  q.enqueue("abcdef");
  EXPECT_EQ(q.drained_at()->ms(), 1500);
  clock.advance(Millis{2000});
  EXPECT_EQ(q.drained_at()->ms(), 2000);
}

TEST(TtsQueue, EmptyEnqueueChangesNothing) {
  VirtualClock clock;
  TtsQueue q(clock, 4.0);
  q.enqueue("");
  EXPECT_FALSE(q.first_enqueue_at());
}

TEST(TtsQueue, RejectsBadRate) {
  VirtualClock clock;
  EXPECT_THROW(TtsQueue(clock, 0.0), std::invalid_argument);
  EXPECT_THROW(TtsQueue(clock, -1.0), std::invalid_argument);
}

// Spoken count never decreases and never exceeds the queue, whatever mix of
// enqueues, truncations and waits happens.
TEST(TtsQueue, RandomOperationsKeepCursorMonotone) {
  std::mt19937_64 rng(99);
  for (int trial = 0; trial < 300; ++trial) {
    VirtualClock clock;
    TtsQueue q(clock, 1.0 + static_cast<double>(rng() % 200) / 10.0);
    std::string spoken;
    std::size_t last = 0;
    for (int step = 0; step < 60; ++step) {
      switch (rng() % 3) {
        case 0: q.enqueue(std::string(1 + rng() % 5, static_cast<char>('a' + rng() % 26))); break;
        case 1: clock.advance(Millis{static_cast<std::int64_t>(rng() % 400)}); break;
        case 2: {
          const std::size_t keep = rng() % (q.length() + 2);
          try {
            q.truncate_to(keep);
            ASSERT_GE(keep, last);
          } catch (const TruncationBehindCursor& e) {
            ASSERT_LT(keep, e.spoken());
          }
          break;
        }
      }
      const std::size_t now = q.spoken_count();
      ASSERT_GE(now, last);
      ASSERT_LE(now, q.length());
      const std::string prefix = q.spoken_text();
      ASSERT_EQ(prefix.substr(0, spoken.size()), spoken);
      spoken = prefix;
      last = now;
    }
  }
}

}  // namespace
}  // namespace edgefuse::fusion
