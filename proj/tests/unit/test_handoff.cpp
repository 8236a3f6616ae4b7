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

#include "edgefuse/core/utf8.hpp"
#include "edgefuse/fusion/handoff.hpp"
#include "test_support.hpp"

namespace edgefuse::fusion {
namespace {

using testing::at_ms;

HandoffParams literal() { return HandoffParams{}; }
HandoffParams additive() {
  HandoffParams p;
  p.mode = HandoffMode::Additive;
  return p;
}

TEST(Predict, LiteralSixSecondsIsEight) {
  // 3.33 * (6 * 0.5) - 1 = 8.99
  EXPECT_NEAR(predict_spoken_real(literal(), at_ms(150), at_ms(6150)), 8.99, 1e-12);
  EXPECT_EQ(predict_spoken_index(literal(), at_ms(150), at_ms(6150)), 8u);
}

TEST(Predict, ZeroIntervalClampsToZero) {
  EXPECT_NEAR(predict_spoken_real(literal(), at_ms(400), at_ms(400)), -1.0, 1e-12);
  EXPECT_EQ(predict_spoken_index(literal(), at_ms(400), at_ms(400)), 0u);
}

TEST(Predict, AdditiveSixSecondsIsTwentyTwo) {
  // 3.33 * (6 + 2 * 0.5) - 1 = 22.31
  EXPECT_NEAR(predict_spoken_real(additive(), at_ms(0), at_ms(6000)), 22.31, 1e-12);
  EXPECT_EQ(predict_spoken_index(additive(), at_ms(0), at_ms(6000)), 22u);
  EXPECT_EQ(predict_spoken_index(additive(), at_ms(100), at_ms(100)), 2u);  // 3.33 - 1
}

TEST(Predict, OtherParameters) {
  HandoffParams p;
  p.c = 3.0;
  p.r_t = 1.0;
  EXPECT_EQ(predict_spoken_index(p, at_ms(0), at_ms(700)), 1u);   // 1.1
  EXPECT_EQ(predict_spoken_index(p, at_ms(0), at_ms(1000)), 2u);  // 2
  p.mode = HandoffMode::Additive;
  p.k = 3.0;
  EXPECT_EQ(predict_spoken_index(p, at_ms(0), at_ms(500)), 9u);   // 3 * (0.5 + 3) - 1 = 9.5
}

TEST(Predict, RejectsReversedTimes) {
  EXPECT_THROW(predict_spoken_index(literal(), at_ms(10), at_ms(9)), std::invalid_argument);
}

TEST(Predict, MonotoneInInterval) {
  for (auto params : {literal(), additive()}) {
    std::size_t prev = 0;
    for (int dt = 0; dt <= 20000; dt += 7) {
      const auto p = predict_spoken_index(params, at_ms(0), at_ms(dt));
      EXPECT_GE(p, prev);
      prev = p;
    }
  }
}

TEST(Params, Validate) {
  HandoffParams p;
  EXPECT_NO_THROW(p.validate());
  p.c = 0;
  EXPECT_THROW(p.validate(), std::invalid_argument);
  p = {};
  p.r_t = -0.1;
  EXPECT_THROW(p.validate(), std::invalid_argument);
  p = {};
  p.k = 0.5;
  EXPECT_THROW(p.validate(), std::invalid_argument);
}

TEST(Clamp, LimitsToEdgeLength) {
  static_assert(clamp_index(5, 10) == 5);
  static_assert(clamp_index(15, 10) == 10);
  static_assert(clamp_index(0, 0) == 0);
}

std::optional<std::size_t> shift(std::u32string_view s, std::size_t p, bool trailing = true) {
  return shift_to_word_boundary(s, p, trailing);
}

TEST(WordBoundary, HandExamples) {
  EXPECT_EQ(shift(U"hello", 4), 4u);
  EXPECT_EQ(shift(U"hello world", 5), 4u);
  EXPECT_EQ(shift(U"hello world", 7), 4u);
  EXPECT_EQ(shift(U"hello world", 10), 10u);
  EXPECT_EQ(shift(U"hello world", 11), 10u);
  EXPECT_EQ(shift(U"hello world", 11, false), 4u);
  EXPECT_EQ(shift(U"hello world", 10, false), 4u);
  EXPECT_EQ(shift(U"hello", 2), std::nullopt);
  EXPECT_EQ(shift(U"  hi", 1), std::nullopt);
  EXPECT_EQ(shift(U"", 0), std::nullopt);
  EXPECT_EQ(shift(U"Hi, you.", 3), 2u);  // punctuation sticks to its word
  EXPECT_EQ(shift(U"a  b", 2), 0u);
  EXPECT_THROW(shift(U"abc", 4), std::out_of_range);
}

TEST(WordBoundary, NextWordEnd) {
  EXPECT_EQ(next_word_end(U"hello world", 0), 4u);
  EXPECT_EQ(next_word_end(U"hello world", 4), 4u);
  EXPECT_EQ(next_word_end(U"hello world", 5), 10u);
  EXPECT_EQ(next_word_end(U"hello world", 5, false), std::nullopt);
  EXPECT_EQ(next_word_end(U"hello ", 5, false), std::nullopt);
  EXPECT_EQ(next_word_end(U"hello ", 0, false), 4u);
}

// Word ends computed by splitting the string, independent of the scanner.
std::vector<std::size_t> word_ends(const std::u32string& s, bool trailing) {
  std::vector<std::size_t> ends;
  std::size_t i = 0;
  while (i < s.size()) {
    while (i < s.size() && utf8::is_space(s[i])) ++i;
    if (i == s.size()) break;
    std::size_t j = i;
    while (j < s.size() && !utf8::is_space(s[j])) ++j;
    if (j < s.size() || trailing) ends.push_back(j - 1);
    i = j;
  }
  return ends;
}

TEST(WordBoundary, MatchesSplitOracleOnRandomText) {
  std::mt19937_64 rng(1234);
  const std::u32string alphabet = U"ab é.\n  ";
  for (int trial = 0; trial < 3000; ++trial) {
    std::u32string s;
    const auto len = rng() % 24;
    for (std::size_t i = 0; i < len; ++i) s.push_back(alphabet[rng() % alphabet.size()]);
    const bool trailing = rng() % 2;
    const auto ends = word_ends(s, trailing);
    for (std::size_t p = 0; p <= s.size(); ++p) {
      std::optional<std::size_t> want;
      for (auto e : ends) {
        if (e <= p) want = e;
      }
      const auto got = shift(s, p, trailing);
      ASSERT_EQ(got, want) << "trial " << trial << " p " << p;
      if (got) {
        EXPECT_LE(*got, p);
        EXPECT_FALSE(utf8::is_space(s[*got]));
      }
      std::optional<std::size_t> next;
      for (auto e : ends) {
        if (e >= p) {
          next = e;
          break;
        }
      }
      ASSERT_EQ(next_word_end(s, p, trailing), next);
    }
  }
}

}  // namespace
}  // namespace edgefuse::fusion
