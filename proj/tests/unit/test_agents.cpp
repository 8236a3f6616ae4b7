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

#include "edgefuse/agents/editor.hpp"
#include "edgefuse/agents/experts.hpp"
#include "edgefuse/core/error.hpp"
#include "test_support.hpp"

namespace edgefuse::agents {
namespace {

using testing::words;

TEST(RuleEdit, DocumentedExamples) {
  EXPECT_EQ(rule_edit(RouteLabel::Face, "John Doe", "Is there anyone I know here?"), "Yes, John Doe is here.");
  EXPECT_EQ(rule_edit(RouteLabel::OCR, "Soup $4.99", "what does it say"), "It says: Soup $4.99.");
  EXPECT_EQ(rule_edit(RouteLabel::Object, "suitcase; person; sign", "what is around"),
            "There is a suitcase, a person and a sign.");
}

TEST(RuleEdit, Variants) {
  EXPECT_EQ(rule_edit(RouteLabel::Face, "Ann; Bo", "who is here"), "Ann and Bo are here.");
  EXPECT_EQ(rule_edit(RouteLabel::Object, "apple", ""), "There is an apple.");
  EXPECT_EQ(rule_edit(RouteLabel::OCR, " Exit only! ", ""), "It says: Exit only!");
  EXPECT_EQ(rule_edit(RouteLabel::Object, " ; ", ""), "I couldn't find any objects.");
  EXPECT_EQ(rule_edit(RouteLabel::OCR, "", ""), "I couldn't find any text.");
  EXPECT_EQ(rule_edit(RouteLabel::Face, "", ""), "I don't recognize anyone here.");
}

TEST(Experts, LookupChargesLatency) {
  ExpertFixture f;
  f.add("menu", RouteLabel::OCR, "Soup", Millis{70});
  VirtualClock clock;
  const auto r = run_expert(RouteLabel::OCR, FrameRef{"menu", std::nullopt}, f, clock);
  EXPECT_EQ(r.payload, "Soup");
  EXPECT_EQ(clock.now().ms(), 70);
  const auto miss = run_expert(RouteLabel::Face, FrameRef{"menu", std::nullopt}, f, clock);
  EXPECT_EQ(miss.payload, "");
  EXPECT_EQ(clock.now().ms(), 70 + kDefaultExpertLatency.count());
  EXPECT_THROW(run_expert(RouteLabel::Generic, FrameRef{"menu", std::nullopt}, f, clock), std::invalid_argument);
}

TEST(Experts, AddRejectsGenericAndNegativeLatency) {
  ExpertFixture f;
  EXPECT_THROW(f.add("x", RouteLabel::Generic, "p"), std::invalid_argument);
  EXPECT_THROW(f.add("x", RouteLabel::OCR, "p", Millis{-1}), std::invalid_argument);
}

TEST(Experts, MergePrefersOther) {
  ExpertFixture a, b;
  a.add("x", RouteLabel::OCR, "old");
  a.add("y", RouteLabel::OCR, "kept");
  b.add("x", RouteLabel::OCR, "new");
  a.merge(b);
  EXPECT_EQ(a.size(), 2u);
  EXPECT_EQ(a.find("x", RouteLabel::OCR)->payload, "new");
  EXPECT_EQ(a.find("y", RouteLabel::OCR)->payload, "kept");
}

TEST(Experts, BundledFixtureHasDocumentedEntries) {
  const auto& f = ExpertFixture::bundled();
  EXPECT_EQ(f.find("menu-01", RouteLabel::OCR)->payload, "Soup $4.99");
  EXPECT_EQ(f.find("lobby-03", RouteLabel::Face)->payload, "John Doe");
}

TEST(Experts, ParseErrorsNameTheField) {
  try {
    ExpertFixture::parse(R"({"version":1,"entries":[{"frame":"a","route":"Generic","payload":""}]})", "e.json");
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.field(), "entries[0].route");
  }
  EXPECT_THROW(ExpertFixture::parse(R"({"version":2,"entries":[]})"), ParseError);
  EXPECT_THROW(ExpertFixture::parse(R"({"version":1,"entries":[],"extra":1})"), ParseError);
  EXPECT_THROW(ExpertFixture::parse("{"), ParseError);
}

Query q(const std::string& text) { return make_query("q", text, FrameRef{"f", std::nullopt}); }

TEST(Editor, StreamsRuleRewrite) {
  RuleEditorBackend editor(Millis{100}, Millis{10});
  VirtualClock clock;
  std::vector<std::string> seen;
  const auto out = edit_response(RawExpertResponse{RouteLabel::OCR, "Soup $4.99", Millis{40}}, q("read it"), editor,
                                 clock, [&](const TokenEvent& ev) { seen.push_back(ev.text); });
  EXPECT_FALSE(out.fallback);
  EXPECT_EQ(out.text, "It says: Soup $4.99.");
  EXPECT_EQ(out.editor_latency.count(), 100 + 3 * 10);
  ASSERT_EQ(seen.size(), 4u);
  EXPECT_EQ(seen.front(), "It");
}

class DownBackend final : public backends::StreamingBackend {
 public:
  BackendKind kind() const override { return BackendKind::Editor; }
  backends::TokenStream open(const backends::ModelRequest&, Clock&) override { throw BackendUnavailable("offline"); }
};

TEST(Editor, UnavailableFallsBackToPayload) {
  DownBackend down;
  VirtualClock clock;
  const auto out = edit_response(RawExpertResponse{RouteLabel::Face, "John Doe", Millis{0}}, q("who"), down, clock);
  EXPECT_TRUE(out.fallback);
  EXPECT_EQ(out.text, "John Doe");
  EXPECT_NE(out.detail.find("offline"), std::string::npos);
}

TEST(Editor, FailedStreamFallsBackButKeepsDeliveredText) {
  backends::ScriptedBackend broken(BackendKind::Editor, words("It says", 50, 10, backends::Terminal::Error));
  VirtualClock clock;
  std::string delivered;
  const auto out = edit_response(RawExpertResponse{RouteLabel::OCR, "Soup", Millis{0}}, q("read"), broken, clock,
                                 [&](const TokenEvent& ev) { delivered += ev.text; });
  EXPECT_TRUE(out.fallback);
  EXPECT_EQ(out.text, "Soup");
  EXPECT_EQ(delivered, "It says");
  EXPECT_EQ(out.editor_latency.count(), 60);
}

TEST(Editor, PromptCarriesPayloadAndQuery) {
  const auto p = render_editor_prompt(RawExpertResponse{RouteLabel::OCR, "Soup $4.99", Millis{0}}, q("menu?"));
  EXPECT_NE(p.find("Soup $4.99"), std::string::npos);
  EXPECT_NE(p.find("menu?"), std::string::npos);
  EXPECT_NE(p.find("OCR"), std::string::npos);
}

}  // namespace
}  // namespace edgefuse::agents
