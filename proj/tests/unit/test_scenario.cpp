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

#include "edgefuse/core/error.hpp"
#include "edgefuse/sim/scenario.hpp"
#include "test_support.hpp"

namespace edgefuse::sim {
namespace {

const std::string kHeader = R"({"kind":"header","schema":1,"seed":7,"overrides":{"handoff_mode":"additive","k":4}})";

std::string record(const std::string& id, const std::string& extra = "") {
  return R"({"kind":"record","id":")" + id +
         R"(","query":"what is ahead","frame":"street-01","truth":{"urgent":true,"route":"Generic"},)"
         R"("scripts":{"edge":{"ttft_ms":150,"text":"A bench.","gap_ms":40},)"
         R"("cloud":{"ttft_ms":900,"tokens":[["A",0],[" bench",30]],"terminal":"end"}})" +
         extra + "}";
}

std::string doc(std::initializer_list<std::string> lines) {
  std::string out;
  for (const auto& l : lines) out += l + "\n";
  return out;
}

template <typename Fn>
ParseError parse_error(Fn&& fn) {
  try {
    fn();
  } catch (const ParseError& e) {
    return e;
  }
  ADD_FAILURE() << "expected ParseError";
  return ParseError("", 0, "", "");
}

template <typename Fn>
std::vector<std::string> violations(Fn&& fn) {
  try {
    fn();
  } catch (const ValidationError& e) {
    return e.violations();
  }
  ADD_FAILURE() << "expected ValidationError";
  return {};
}

bool contains(const std::vector<std::string>& v, const std::string& needle) {
  for (const auto& s : v) {
    if (s.find(needle) != std::string::npos) return true;
  }
  return false;
}

TEST(Scenario, ParsesHeaderAndRecords) {
  const auto s = parse_scenario(doc({kHeader, "", record("a"), record("b")}));
  EXPECT_EQ(s.seed, 7u);
  EXPECT_EQ(s.overrides.handoff_mode, fusion::HandoffMode::Additive);
  EXPECT_EQ(s.overrides.k, 4.0);
  ASSERT_EQ(s.records.size(), 2u);
  const auto& r = s.records[0];
  EXPECT_EQ(r.truth.track(), Track::UrgentGeneric);
  EXPECT_EQ(r.scripts.edge->full_text(), "A bench.");
  EXPECT_EQ(r.scripts.edge->tokens.size(), 2u);
  EXPECT_EQ(r.scripts.cloud->duration().count(), 930);
  EXPECT_FALSE(r.scripts.fusion);
}

TEST(Scenario, RoundTripsThroughSerialization) {
  const auto s = parse_scenario(doc({kHeader, record("a", R"(,"experts":[{"route":"OCR","payload":"Soup"}])")}));
  EXPECT_EQ(parse_scenario(serialize_scenario(s)), s);
}

TEST(Scenario, RandomScenariosRoundTrip) {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 50; ++trial) {
    Scenario s;
    s.seed = rng() % 100000;
    if (rng() % 2) s.overrides.jitter_ms = static_cast<std::int64_t>(rng() % 50);
    if (rng() % 2) s.overrides.urgency_threshold = 0.1 + 0.001 * static_cast<double>(rng() % 500);
    const int n = 1 + static_cast<int>(rng() % 5);
    for (int i = 0; i < n; ++i) {
      ScenarioRecord r;
      r.id = "r" + std::to_string(i);
      r.query = "query \"" + std::to_string(rng() % 1000) + "\" caf\xc3\xa9";
      r.frame = "f";
      r.truth.urgent = rng() % 2;
      r.truth.route = static_cast<RouteLabel>(rng() % 4);
      r.scripts.edge = backends::StreamScript::from_text("edge words here", Millis{static_cast<std::int64_t>(rng() % 500)},
                                                         Millis{40});
      r.scripts.cloud = rng() % 3 ? backends::StreamScript::from_text("cloud", Millis{1000}, Millis{10})
                                  : backends::StreamScript::failing(Millis{5});
      if (rng() % 2) r.experts.push_back(ExpertSpec{RouteLabel::Face, "Ann", Millis{30}});
      s.records.push_back(std::move(r));
    }
    EXPECT_EQ(parse_scenario(serialize_scenario(s)), s) << "trial " << trial;
  }
}

TEST(Scenario, ErrorsCarryLineAndField) {
  auto e = parse_error([] { parse_scenario(doc({kHeader, record("a"), R"({"kind":"record","id":"b"})"}), "s.jsonl"); });
  EXPECT_EQ(e.file(), "s.jsonl");
  EXPECT_EQ(e.line(), 3u);
  EXPECT_EQ(e.field(), "record b: query");

  e = parse_error([] { parse_scenario(doc({kHeader, "{not json"})); });
  EXPECT_EQ(e.line(), 2u);

  e = parse_error([] { parse_scenario(doc({record("a")})); });
  EXPECT_EQ(e.field(), "kind");

  e = parse_error([] {
    std::string bad = record("a");
    bad.replace(bad.find("\"ttft_ms\":150"), 13, "\"ttft_ms\":\"soon\"");
    parse_scenario(doc({kHeader, bad}));
  });
  EXPECT_EQ(e.line(), 2u);
  EXPECT_NE(e.field().find("ttft_ms"), std::string::npos);

  e = parse_error([] { parse_scenario(doc({kHeader, record("a", R"(,"colour":"red")")})); });
  EXPECT_EQ(e.field(), "record a: colour");

  e = parse_error([] {
    parse_scenario(doc({R"({"kind":"header","schema":1,"seed":1,"overrides":{"handoff_mode":"psychic"}})", record("a")}));
  });
  EXPECT_NE(e.field().find("handoff_mode"), std::string::npos);

  e = parse_error([] { parse_scenario(doc({kHeader, kHeader})); });
  EXPECT_EQ(e.line(), 2u);
}

TEST(Scenario, ValidationListsEverySemanticProblem) {
  const auto v = violations([] {
    std::string dup = record("a");
    std::string noedge = record("c");
    noedge.replace(noedge.find("\"edge\""), noedge.find("\"cloud\"") - noedge.find("\"edge\""), "");
    parse_scenario(doc({R"({"kind":"header","schema":1,"seed":1,"overrides":{"urgency_threshold":1.0,"k":0.5}})", dup,
                        dup, noedge}));
  });
  EXPECT_TRUE(contains(v, "urgency_threshold"));
  EXPECT_TRUE(contains(v, "overrides.k"));
  EXPECT_TRUE(contains(v, "record a: duplicate id"));
  EXPECT_TRUE(contains(v, "record c: missing edge script"));
  EXPECT_EQ(v.size(), 4u);
}

TEST(Scenario, EmptyScenarioHasNoRecords) {
  EXPECT_TRUE(contains(violations([] { parse_scenario(doc({kHeader})); }), "no records"));
}

TEST(Scenario, MissingFileIsAnIoError) {
  EXPECT_THROW(load_scenario("/nonexistent/edgefuse.jsonl"), IoError);
}

TEST(Scenario, BundledMixedWorkloadLoads) {
  const auto s = load_scenario(testing::source_path("scenarios/mixed_workload.jsonl"));
  ASSERT_EQ(s.records.size(), 200u);
  std::map<Track, int> per_track;
  for (const auto& r : s.records) ++per_track[r.truth.track()];
  for (Track t : {Track::UrgentExpert, Track::NormalExpert, Track::UrgentGeneric, Track::NormalGeneric}) {
    EXPECT_EQ(per_track[t], 50);
  }
}

TEST(Systems, NamesRoundTrip) {
  for (System s : kAllSystems) EXPECT_EQ(parse_system(to_string(s)), s);
  EXPECT_EQ(to_string(System::AudoSight), "audo-sight");
  EXPECT_FALSE(parse_system("hybrid"));
}

TEST(Overrides, MergeKeepsUnsetFields) {
  Overrides base;
  base.c = 2.0;
  base.k = 3.0;
  Overrides top;
  top.k = 5.0;
  base.merge(top);
  EXPECT_EQ(base.c, 2.0);
  EXPECT_EQ(base.k, 5.0);
}

}  // namespace
}  // namespace edgefuse::sim
