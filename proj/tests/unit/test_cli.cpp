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

#include <cstdlib>
#include <fstream>
#include <regex>
#include <sstream>

#include "app.hpp"
#include "test_support.hpp"

namespace edgefuse::cli {
namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result cli(std::vector<std::string> args, const std::string& input = "") {
  std::istringstream in(input);
  std::ostringstream out, err;
  const int code = run_cli(args, in, out, err);
  return {code, out.str(), err.str()};
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream f(p, std::ios::binary);
  std::ostringstream s;
  s << f.rdbuf();
  return s.str();
}

const std::string kWorkload = testing::source_path("scenarios/mixed_workload.jsonl").string();

// Help text is compared with tests/snapshots/<name>.txt. Set
// EDGEFUSE_UPDATE_SNAPSHOTS=1 to rewrite them.
void expect_snapshot(const std::string& name, const std::string& actual) {
  const auto path = std::filesystem::path(EDGEFUSE_SNAPSHOT_DIR) / (name + ".txt");
  if (std::getenv("EDGEFUSE_UPDATE_SNAPSHOTS")) {
    std::ofstream(path, std::ios::binary) << actual;
    return;
  }
  ASSERT_TRUE(std::filesystem::exists(path)) << path;
  EXPECT_EQ(actual, slurp(path)) << "help for " << name << " changed";
}

TEST(Cli, HelpSnapshots) {
  const auto top = cli({"--help"});
  EXPECT_EQ(top.code, kOk);
  expect_snapshot("help", top.out);
  for (const std::string sub : {"run", "bench", "classify", "repl", "mock-server"}) {
    const auto r = cli({sub, "--help"});
    EXPECT_EQ(r.code, kOk) << sub;
    expect_snapshot("help-" + sub, r.out);
  }
}

TEST(Cli, Version) {
  const auto r = cli({"--version"});
  EXPECT_EQ(r.code, kOk);
  EXPECT_NE(r.out.find(EDGEFUSE_VERSION_STRING), std::string::npos);
}

TEST(Cli, UsageErrors) {
  EXPECT_EQ(cli({}).code, kUsage);
  EXPECT_EQ(cli({"frobnicate"}).code, kUsage);
  EXPECT_EQ(cli({"run"}).code, kUsage);
  EXPECT_EQ(cli({"run", kWorkload, "--system", "hybrid"}).code, kUsage);
  EXPECT_EQ(cli({"run", kWorkload, "--handoff-mode", "psychic"}).code, kUsage);
  const auto empty = cli({"classify", ""});
  EXPECT_EQ(empty.code, kUsage);
  EXPECT_NE(empty.err.find("query text is empty"), std::string::npos);
}

TEST(Cli, InputErrorsMapToExitCodes) {
  const auto bad = cli({"run", testing::source_path("tests/support/malformed.jsonl").string(), "--out",
                        testing::scratch_dir("cli-bad").string()});
  EXPECT_EQ(bad.code, kValidation);
  EXPECT_NE(bad.err.find("malformed.jsonl:2"), std::string::npos) << bad.err;
  EXPECT_NE(bad.err.find("ttft_ms"), std::string::npos) << bad.err;

  EXPECT_EQ(cli({"run", "/nonexistent/scenario.jsonl"}).code, kIo);
  EXPECT_EQ(cli({"run", kWorkload, "--urgency-threshold", "1.5", "--out", testing::scratch_dir("cli-th").string()}).code,
            kValidation);
}

TEST(Cli, RunWritesMetrics) {
  const auto dir = testing::scratch_dir("cli-run");
  const auto r = cli({"run", kWorkload, "--system", "edge-only", "--out", dir.string()});
  ASSERT_EQ(r.code, kOk) << r.err;
  EXPECT_NE(r.out.find("edge-only: 200 records"), std::string::npos) << r.out;
  const auto text = slurp(dir / "metrics-edge-only.jsonl");
  EXPECT_EQ(std::count(text.begin(), text.end(), '\n'), 200);
}

TEST(Cli, BenchIsDeterministic) {
  const auto a = testing::scratch_dir("cli-bench-a");
  const auto b = testing::scratch_dir("cli-bench-b");
  const auto ra = cli({"bench", kWorkload, "--out", a.string()});
  const auto rb = cli({"bench", kWorkload, "--out", b.string()});
  ASSERT_EQ(ra.code, kOk) << ra.err;
  ASSERT_EQ(rb.code, kOk) << rb.err;
  EXPECT_EQ(slurp(a / "report.json"), slurp(b / "report.json"));
  EXPECT_EQ(slurp(a / "report.txt"), slurp(b / "report.txt"));
  for (const char* sys : {"audo-sight", "edge-only", "cloud-only"}) {
    EXPECT_EQ(slurp(a / ("metrics-" + std::string(sys) + ".jsonl")), slurp(b / ("metrics-" + std::string(sys) + ".jsonl")));
  }
  EXPECT_NE(slurp(a / "report.json").find("\"handoff_mode\": \"literal\""), std::string::npos);
}

TEST(Cli, ConfigFileAndFlagsLayer) {
  const auto dir = testing::scratch_dir("cli-config");
  const auto cfg = dir / "config.json";
  std::ofstream(cfg) << R"({"handoff":{"mode":"additive","k":4}})";
  auto r = cli({"bench", kWorkload, "--config", cfg.string(), "--out", (dir / "a").string()});
  ASSERT_EQ(r.code, kOk) << r.err;
  EXPECT_NE(slurp(dir / "a" / "report.json").find("\"handoff_mode\": \"additive\""), std::string::npos);

  r = cli({"bench", kWorkload, "--config", cfg.string(), "--handoff-mode", "literal", "--out", (dir / "b").string()});
  ASSERT_EQ(r.code, kOk) << r.err;
  EXPECT_NE(slurp(dir / "b" / "report.json").find("\"handoff_mode\": \"literal\""), std::string::npos);

  std::ofstream(cfg) << R"({"handoff":{"mode":"additive","warp":1}})";
  EXPECT_EQ(cli({"bench", kWorkload, "--config", cfg.string(), "--out", (dir / "c").string()}).code, kValidation);
}

TEST(Cli, ClassifyShowsScoresAndTrack) {
  const auto r = cli({"classify", "Quick, what is in front of me?"});
  ASSERT_EQ(r.code, kOk) << r.err;
  EXPECT_TRUE(std::regex_search(r.out, std::regex(R"(urgency\s+score \d\.\d{3}\s+threshold 0\.30\s+-> urgent)"))) << r.out;
  EXPECT_TRUE(std::regex_search(r.out, std::regex(R"(track\s+UrgentGeneric)"))) << r.out;

  const auto strict = cli({"classify", "Quick, what is in front of me?", "--urgency-threshold", "0.99"});
  EXPECT_TRUE(std::regex_search(strict.out, std::regex(R"(track\s+NormalGeneric)"))) << strict.out;
}

TEST(Cli, ClassifyEvaluatesLabeledFile) {
  const auto r = cli({"classify", "--eval", testing::source_path("data/labeled_queries.jsonl").string()});
  ASSERT_EQ(r.code, kOk) << r.err;
  EXPECT_NE(r.out.find("OCR"), std::string::npos);
  EXPECT_NE(r.out.find("100.0"), std::string::npos) << r.out;
}

TEST(Cli, FastReplAnswersScriptedQuestions) {
  const auto r = cli({"repl", "--fast"}, "Quick, what is in front of me?\n:mode additive\n:bogus\nquick, WHAT is in front of me?\n");
  ASSERT_EQ(r.code, kOk) << r.err;
  EXPECT_NE(r.out.find("scripted demo, handoff mode literal"), std::string::npos);
  EXPECT_NE(r.out.find("track=UrgentGeneric"), std::string::npos) << r.out;
  EXPECT_NE(r.out.find("handoff mode additive"), std::string::npos);
  EXPECT_NE(r.out.find("You are on a sidewalk"), std::string::npos);
  EXPECT_NE(r.err.find("unknown command :bogus"), std::string::npos);
  EXPECT_EQ(r.out.substr(r.out.size() - 3), "> \n");
  EXPECT_EQ(std::count(r.out.begin(), r.out.end(), '['), 2);
}

TEST(Cli, ReplQuitsOnCommand) {
  const auto r = cli({"repl", "--fast"}, ":quit\nQuick, what is in front of me?\n");
  EXPECT_EQ(r.code, kOk);
  EXPECT_EQ(r.out.find("track="), std::string::npos);
}

TEST(Cli, ReplUnknownQuestionGetsCannedAnswer) {
  const auto r = cli({"repl", "--fast"}, "How tall is the moon?\n");
  EXPECT_EQ(r.code, kOk);
  EXPECT_NE(r.out.find("track="), std::string::npos);
}

}  // namespace
}  // namespace edgefuse::cli
