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

#include "edgefuse/classify/external.hpp"
#include "edgefuse/core/error.hpp"

namespace edgefuse::classify {
namespace {

ExternalProcessClassifier echo() { return ExternalProcessClassifier({EDGEFUSE_ECHO_CLASSIFIER}); }

TEST(ExternalClassifier, RoundTripsScores) {
  auto c = echo();
  const auto plain = c.classify("where is the door");
  EXPECT_DOUBLE_EQ(*plain.score("urgent"), 0.1);
  EXPECT_DOUBLE_EQ(*plain.score("Face"), 0.05);
  const auto marked = c.classify("help! @friend");
  EXPECT_DOUBLE_EQ(*marked.score("urgent"), 0.9);
  EXPECT_DOUBLE_EQ(*marked.score("Face"), 0.95);
}

TEST(ExternalClassifier, DrivesDecisions) {
  auto c = echo();
  const ClassifierConfig cfg;
  const Query q{"q", "who is that! @", {"f", std::nullopt}};
  EXPECT_TRUE(detect_urgency(q, c, cfg).urgent);
  EXPECT_EQ(route_query(q, c, cfg).route, RouteLabel::Face);
}

TEST(ExternalClassifier, ErrorResponseIsClassifierFailure) {
  auto c = echo();
  EXPECT_THROW(c.classify("fail"), ClassifierFailure);
  EXPECT_NO_THROW(c.classify("still alive"));
}

TEST(ExternalClassifier, MalformedResponseIsClassifierFailure) {
  auto c = echo();
  EXPECT_THROW(c.classify("garbage"), ClassifierFailure);
}

TEST(ExternalClassifier, DeadChildIsClassifierFailure) {
  auto c = echo();
  EXPECT_THROW(c.classify("exit"), ClassifierFailure);
  EXPECT_THROW(c.classify("anything"), ClassifierFailure);
}

TEST(ExternalClassifier, MissingProgramIsClassifierFailure) {
  EXPECT_THROW(
      {
        ExternalProcessClassifier c({"/nonexistent/edgefuse-classifier"});
        c.classify("x");
      },
      ClassifierFailure);
}

}  // namespace
}  // namespace edgefuse::classify
