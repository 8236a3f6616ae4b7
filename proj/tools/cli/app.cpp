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

#include "app.hpp"

#include <CLI11.hpp>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <sstream>

#include "config.hpp"
#include "edgefuse/backends/mock_server.hpp"
#include "edgefuse/classify/evaluation.hpp"
#include "edgefuse/classify/external.hpp"
#include "edgefuse/classify/lexicon.hpp"
#include "edgefuse/core/error.hpp"
#include "edgefuse/core/io.hpp"
#include "edgefuse/sim/metrics.hpp"
#include "edgefuse/sim/report.hpp"
#include "edgefuse/sim/runner.hpp"
#include "repl.hpp"

#ifndef EDGEFUSE_VERSION
#define EDGEFUSE_VERSION "0.0.0"
#endif

namespace edgefuse::cli {

namespace fs = std::filesystem;

namespace {

constexpr const char* kDefaultOut = "edgefuse-out";

struct Flags {
  std::string system = "audo-sight";
  std::string handoff_mode;
  std::optional<double> urgency_threshold;
  std::optional<double> route_threshold;
  std::optional<std::uint64_t> seed;
  std::string out;
  std::string config;
  bool verbose = false;
};

void add_thresholds(CLI::App* app, Flags& f) {
  app->add_option("--urgency-threshold,--threshold", f.urgency_threshold,
                  "urgency score a query must exceed to be urgent (default 0.3)");
  app->add_option("--route-threshold", f.route_threshold,
                  "expert score a query must exceed to leave the generic route (default 0.86)");
}

void add_handoff(CLI::App* app, Flags& f) {
  app->add_option("--handoff-mode", f.handoff_mode, "handoff prediction: literal or additive")
      ->check(CLI::IsMember({"literal", "additive"}));
}

void add_config(CLI::App* app, Flags& f) {
  app->add_option("--config", f.config, "JSON config file; flags override its values");
}

void add_run_flags(CLI::App* app, Flags& f) {
  add_handoff(app, f);
  add_thresholds(app, f);
  app->add_option("--seed", f.seed, "replace the scenario's seed");
  app->add_option("--out", f.out, std::string("output directory (default ") + kDefaultOut + ")");
  add_config(app, f);
}

sim::Overrides flag_overrides(const Flags& f) {
  sim::Overrides o;
  if (!f.handoff_mode.empty()) o.handoff_mode = fusion::parse_handoff_mode(f.handoff_mode);
  o.urgency_threshold = f.urgency_threshold;
  o.route_threshold = f.route_threshold;
  return o;
}

CliConfig config_from(const Flags& f) { return f.config.empty() ? CliConfig{} : load_cli_config(f.config); }

// Config file values below flag values.
sim::Overrides layered(const CliConfig& c, const Flags& f) {
  sim::Overrides o = c.overrides;
  o.merge(flag_overrides(f));
  return o;
}

fs::path out_dir(const CliConfig& c, const Flags& f) {
  if (!f.out.empty()) return f.out;
  if (c.out) return *c.out;
  return kDefaultOut;
}

sim::Scenario load(const std::string& path, const Flags& f) {
  auto s = sim::load_scenario(path);
  if (f.seed) s.seed = *f.seed;
  return s;
}

void make_dir(const fs::path& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw IoError("cannot create " + dir.string() + ": " + ec.message());
}

std::string fmt_ms(const std::optional<double>& v) {
  if (!v) return "n/a";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.1f ms", *v);
  return buf;
}

int cmd_run(const std::string& scenario_path, const Flags& f, std::ostream& out) {
  const auto system = sim::parse_system(f.system);
  const CliConfig cfg = config_from(f);
  const auto scenario = load(scenario_path, f);
  const auto records = sim::run_scenario(scenario, *system, layered(cfg, f));
  const fs::path dir = out_dir(cfg, f);
  make_dir(dir);
  const fs::path file = dir / ("metrics-" + std::string(sim::to_string(*system)) + ".jsonl");
  sim::export_metrics(records, file);

  if (f.verbose) {
    for (const auto& r : records) {
      out << r.id << " ttft=" << (r.ttft_ms ? std::to_string(*r.ttft_ms) : "-")
          << " turnaround=" << (r.turnaround_ms ? std::to_string(*r.turnaround_ms) : "-");
      for (const auto& flag : r.flags) out << " " << flag;
      out << "\n";
    }
  }
  std::size_t flagged = 0;
  for (const auto& r : records) flagged += r.flags.empty() ? 0 : 1;
  const auto summary = sim::summarize(records);
  out << sim::to_string(*system) << ": " << records.size() << " records, mean TTFT " << fmt_ms(summary.mean_ttft_ms)
      << ", mean turnaround " << fmt_ms(summary.mean_turnaround_ms) << ", " << flagged << " flagged\n";
  out << "wrote " << file.string() << "\n";
  return kOk;
}

int cmd_bench(const std::string& scenario_path, const Flags& f, std::ostream& out) {
  const CliConfig cfg = config_from(f);
  const auto scenario = load(scenario_path, f);
  const auto run = sim::compare_systems(scenario, layered(cfg, f));
  const fs::path dir = out_dir(cfg, f);
  make_dir(dir);
  const std::string text = run.report.render_text();
  write_file(dir / "report.txt", text);
  write_file(dir / "report.json", run.report.to_json());
  for (const auto& [system, records] : run.records) {
    sim::export_metrics(records, dir / ("metrics-" + std::string(sim::to_string(system)) + ".jsonl"));
  }
  out << text << "\nwrote " << (dir / "report.txt").string() << ", " << (dir / "report.json").string()
      << " and per-system metrics\n";
  return kOk;
}

int cmd_classify(const std::string& text, const std::string& eval_path, const Flags& f, std::ostream& out,
                 std::ostream& err) {
  const CliConfig cfg = config_from(f);
  const sim::Overrides o = layered(cfg, f);
  classify::ClassifierConfig cc;
  if (o.urgency_threshold) cc.urgency_threshold = *o.urgency_threshold;
  if (o.route_threshold) cc.route_threshold = *o.route_threshold;
  try {
    cc.validate();
  } catch (const std::invalid_argument& e) {
    throw ValidationError({e.what()});
  }
  std::unique_ptr<classify::Classifier> classifier;
  if (cfg.classifier_command) {
    classifier = std::make_unique<classify::ExternalProcessClassifier>(*cfg.classifier_command);
  } else {
    classifier = std::make_unique<classify::LexiconClassifier>(classify::Lexicon::bundled());
  }

  if (!eval_path.empty()) {
    const auto data = classify::load_labeled_queries(eval_path);
    const auto report = classify::evaluate_classifier(data, *classifier, *classifier, cc);
    out << report.render_table();
    return kOk;
  }
  if (text.find_first_not_of(" \t\r\n") == std::string::npos) {
    err << "classify: query text is empty\n";
    return kUsage;
  }
  const Query q = make_query("cli", text, FrameRef{"none", std::nullopt});
  const auto urgency = classify::detect_urgency(q, *classifier, cc);
  const auto route = classify::route_query(q, *classifier, cc);
  char line[128];
  std::snprintf(line, sizeof line, "urgency  score %.3f  threshold %.2f  -> %s\n", urgency.score, cc.urgency_threshold,
                urgency.urgent ? "urgent" : "normal");
  out << line;
  const auto dist = classifier->classify(text);
  out << "route   ";
  for (const char* label : {"Object", "OCR", "Face"}) {
    std::snprintf(line, sizeof line, " %s %.3f", label, dist.score(label).value_or(0.0));
    out << line;
  }
  std::snprintf(line, sizeof line, "  threshold %.2f  -> %s\n", cc.route_threshold,
                std::string(to_string(route.route)).c_str());
  out << line;
  out << "track    " << to_string(select_track(urgency.urgent, route.route)) << "\n";
  return kOk;
}

struct MockFlags {
  std::string host = "127.0.0.1";
  int port = 8080;
  std::string text = "This is a scripted reply from the mock server.";
  int first_delay_ms = 150;
  int gap_ms = 40;
  std::string api_key_env;
};

int cmd_mock_server(const MockFlags& m, std::ostream& out) {
  backends::MockReply reply;
  std::istringstream words(m.text);
  std::string w;
  while (words >> w) reply.deltas.push_back(reply.deltas.empty() ? w : " " + w);
  reply.first_delay = Millis{m.first_delay_ms};
  reply.gap = Millis{m.gap_ms};
  backends::MockChatServer server(reply);
  if (!m.api_key_env.empty()) {
    const char* key = std::getenv(m.api_key_env.c_str());
    if (!key) throw ValidationError({"environment variable " + m.api_key_env + " is not set"});
    server.require_api_key(key);
  }
  out << "serving http://" << m.host << ":" << m.port << "/v1/chat/completions\n";
  out.flush();
  server.listen_blocking(m.host, m.port);
  return kOk;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err) {
  CLI::App app{"Edge/cloud response fusion simulator and demo frontend", "edgefuse"};
  app.set_version_flag("--version", EDGEFUSE_VERSION);
  app.require_subcommand(1);
  app.footer("Exit codes: 0 ok, 2 usage, 3 invalid input, 4 file error.\n"
             "Live endpoints read their credential from the variable named by api_key_env.");

  Flags f;
  std::string scenario;

  auto* run = app.add_subcommand("run", "Run one system over a scenario and export its metrics");
  run->add_option("scenario", scenario, "scenario file (JSON lines)")->required();
  run->add_option("--system", f.system, "audo-sight, edge-only or cloud-only")
      ->check(CLI::IsMember({"audo-sight", "edge-only", "cloud-only"}));
  add_run_flags(run, f);
  run->add_flag("-v,--verbose", f.verbose, "print one line per record");

  auto* bench = app.add_subcommand("bench", "Compare all three systems and write the report");
  bench->add_option("scenario", scenario, "scenario file (JSON lines)")->required();
  add_run_flags(bench, f);

  std::string text;
  std::string eval_path;
  auto* cls = app.add_subcommand("classify", "Show urgency and route scores for one query");
  cls->add_option("text", text, "query text");
  cls->add_option("--eval", eval_path, "labeled JSON-lines file; prints the accuracy table instead");
  add_thresholds(cls, f);
  add_config(cls, f);

  bool fast = false;
  std::string tts_command;
  std::string demo;
  auto* repl = app.add_subcommand("repl", "Interactive session that speaks answers as they stream");
  add_handoff(repl, f);
  add_thresholds(repl, f);
  add_config(repl, f);
  repl->add_flag("--fast", fast, "skip speech pacing and print each answer at once");
  repl->add_option("--tts-command", tts_command, "shell command that receives each final answer on stdin");
  repl->add_option("--demo", demo, "scenario file scripting the demo answers (default: built-in)");

  MockFlags mock;
  auto* srv = app.add_subcommand("mock-server", "Serve a scripted streaming chat-completions endpoint");
  srv->add_option("--host", mock.host, "bind address")->capture_default_str();
  srv->add_option("--port", mock.port, "port")->capture_default_str();
  srv->add_option("--text", mock.text, "reply text, streamed one word per delta");
  srv->add_option("--first-delay-ms", mock.first_delay_ms, "delay before the first delta")->capture_default_str();
  srv->add_option("--gap-ms", mock.gap_ms, "delay between deltas")->capture_default_str();
  srv->add_option("--api-key-env", mock.api_key_env, "require the bearer token held in this variable");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kUsage;
  }

  try {
    if (run->parsed()) return cmd_run(scenario, f, out);
    if (bench->parsed()) return cmd_bench(scenario, f, out);
    if (cls->parsed()) return cmd_classify(text, eval_path, f, out, err);
    if (repl->parsed()) {
      ReplOptions o;
      o.config = config_from(f);
      o.flags = flag_overrides(f);
      o.fast = fast;
      if (!tts_command.empty()) o.tts_command = tts_command;
      if (!demo.empty()) o.demo_path = demo;
      return run_repl(o, in, out, err);
    }
    if (srv->parsed()) return cmd_mock_server(mock, out);
  } catch (const ParseError& e) {
    err << "invalid input: " << e.what() << "\n";
    return kValidation;
  } catch (const ValidationError& e) {
    err << "invalid input:\n";
    for (const auto& v : e.violations()) err << "  " << v << "\n";
    return kValidation;
  } catch (const IoError& e) {
    err << "file error: " << e.what() << "\n";
    return kIo;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kFailure;
  }
  return kUsage;
}

}  // namespace edgefuse::cli
