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

#include <gmock/gmock.h>
#include <gtest/gtest.h>

#include "edgefuse/core/io.hpp"
#include "edgefuse/fusion/prompt.hpp"
#include "edgefuse/fusion/rule_fusion.hpp"

namespace edgefuse::fusion {
namespace {

using ::testing::HasSubstr;
using ::testing::Not;

TEST(Template, SubstitutesEveryOccurrence) {
  EXPECT_EQ(render_template("{{a}}-{{b}}-{{a}}", {{"a", "x"}, {"b", "y"}}), "x-y-x");
  EXPECT_EQ(render_template("no placeholders", {}), "no placeholders");
}

TEST(Template, UnknownPlaceholderThrows) {
  EXPECT_THROW(render_template("{{missing}}", {{"a", "x"}}), std::invalid_argument);
}

TEST(Template, ValuesAreNotReexpanded) {
  EXPECT_EQ(render_template("{{a}}", {{"a", "{{a}}"}}), "{{a}}");
}

TEST(FusionPrompt, ContinuationCarriesBothTexts) {
  const auto p = build_fusion_prompt("You are on a", "You are on a sidewalk near a bench.");
  EXPECT_THAT(p, HasSubstr("Partial answer already spoken:\nYou are on a\n"));
  EXPECT_THAT(p, HasSubstr("Full answer:\nYou are on a sidewalk near a bench.\n"));
  EXPECT_THAT(p, HasSubstr("ground truth"));
  EXPECT_THAT(p, Not(HasSubstr("{{")));
}

TEST(FusionPrompt, EmptyPrefixUsesRestatement) {
  const auto p = build_fusion_prompt("", "A bench is ahead.");
  EXPECT_THAT(p, HasSubstr("Nothing has been spoken"));
  EXPECT_THAT(p, HasSubstr("A bench is ahead."));
  EXPECT_THAT(p, Not(HasSubstr("Partial answer")));
}

TEST(FusionPrompt, EmptyCloudThrows) {
  EXPECT_THROW(build_fusion_prompt("abc", ""), std::invalid_argument);
}

TEST(FusionPrompt, TemplatesAreBundled) {
  EXPECT_EQ(kFusionTemplateVersion, "v1");
  EXPECT_THAT(std::string(assets::get("prompts/fusion_continue.v1.txt")), HasSubstr("{{edge_prefix}}"));
  EXPECT_THROW(assets::get("prompts/nope.txt"), std::out_of_range);
}

TEST(RuleFusion, AgreeingPrefixContinuesWithRemainingWords) {
  EXPECT_EQ(rule_fusion_continuation("You are on", "you are on a sidewalk."), " a sidewalk.");
}

TEST(RuleFusion, EmptyPrefixRestatesCloud) {
  EXPECT_EQ(rule_fusion_continuation("", "A bench."), "A bench.");
}

TEST(RuleFusion, DisagreementAddsCorrection) {
  EXPECT_EQ(rule_fusion_continuation("The door is", "The gate is open."), ". Correction: The gate is open.");
  EXPECT_EQ(rule_fusion_continuation("It is red.", "It is blue."), " Correction: It is blue.");
}

TEST(RuleFusion, PrefixLongerThanCloudIsADisagreement) {
  EXPECT_EQ(rule_fusion_continuation("one two three", "one two"), ". Correction: one two");
}

TEST(RuleFusion, BackendStreamsContinuation) {
  VirtualClock clock;
  RuleFusionBackend backend(Millis{250}, Millis{10});
  backends::ModelRequest req;
  req.fields = {{"edge_prefix", "Hi"}, {"cloud_response", "Hi there friend"}};
  auto s = backend.open(req, clock);
  clock.run_until([&] { return s.finished(); });
  EXPECT_EQ(s.buffer(), " there friend");
  EXPECT_EQ(s.first_at()->ms(), 250);
  EXPECT_EQ(s.events().back().at.ms(), 260);
}

}  // namespace
}  // namespace edgefuse::fusion
