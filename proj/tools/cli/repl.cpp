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

#include "repl.hpp"

#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>

#include "edgefuse/agents/editor.hpp"
#include "edgefuse/classify/external.hpp"
#include "edgefuse/classify/lexicon.hpp"
#include "edgefuse/core/error.hpp"
#include "edgefuse/core/io.hpp"
#include "edgefuse/core/utf8.hpp"
#include "edgefuse/fusion/rule_fusion.hpp"
#include "edgefuse/sim/runner.hpp"

namespace edgefuse::cli {

namespace {

constexpr Millis kTick{30};

std::string trim(std::string s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

backends::StreamScript unknown_edge() {
  return backends::StreamScript::from_text("I can see the scene, but I am not sure about the details.", Millis{150},
                                           Millis{40});
}

backends::StreamScript unknown_cloud() {
  return backends::StreamScript::from_text(
      "This demo only has scripted answers for its sample questions. Type :samples to list them.", Millis{1200},
      Millis{40});
}

void pipe_to_command(const std::string& command, const std::string& text, std::ostream& err) {
  FILE* p = ::popen(command.c_str(), "w");
  if (!p) {
    err << "tts command failed to start: " << command << "\n";
    return;
  }
  std::fwrite(text.data(), 1, text.size(), p);
  std::fputc('\n', p);
  const int status = ::pclose(p);
  if (status != 0) err << "tts command exited with status " << status << "\n";
}

class Session {
 public:
  Session(const ReplOptions& options, std::ostream& out, std::ostream& err)
      : options_(options), out_(out), err_(err) {
    sim::Overrides merged = options.config.overrides;
    merged.merge(options.flags);
    settings_ = sim::Settings::resolve({}, merged);
    if (settings_.classifier_choice == sim::ClassifierChoice::Truth) {
      throw ValidationError({"the truth classifier is only available in scenario runs"});
    }
    if (options.config.classifier_command) {
      classifier_ = std::make_shared<classify::ExternalProcessClassifier>(*options.config.classifier_command);
    } else {
      classifier_ = std::make_shared<classify::LexiconClassifier>(classify::Lexicon::bundled());
    }
    live_ = options.config.edge.has_value() || options.config.cloud.has_value();
    if (live_ && !(options.config.edge && options.config.cloud)) {
      throw ValidationError({"live mode needs both an edge and a cloud endpoint"});
    }
    experts_ = std::make_shared<agents::ExpertFixture>(agents::ExpertFixture::bundled());
    if (options.config.experts) experts_->merge(agents::ExpertFixture::load(*options.config.experts));
    if (!live_) {
      const std::string text = options.demo_path ? read_file(*options.demo_path)
                                                 : std::string(assets::get("demo.v1.jsonl"));
      demo_ = sim::parse_scenario(text, options.demo_path.value_or("demo.v1.jsonl"));
      sim::validate_scenario(demo_);
      for (const auto& r : demo_.records) {
        for (const auto& e : r.experts) experts_->add(r.frame, e.route, e.payload, e.latency);
      }
    }
    if (options.fast) {
      clock_ = std::make_unique<VirtualClock>();
    } else {
      clock_ = std::make_unique<WallClock>();
    }
    if (live_ && options.fast) err_ << "note: --fast has no effect on live endpoints' network time\n";
  }

  int run(std::istream& in) {
    out_ << (live_ ? "live endpoints" : "scripted demo") << ", handoff mode " << fusion::to_string(settings_.handoff.mode)
         << ". Type :help for commands.\n";
    std::string line;
    while (prompt(), std::getline(in, line)) {
      line = trim(line);
      if (line.empty()) continue;
      if (line[0] == ':') {
        if (!command(line)) break;
        continue;
      }
      answer(line);
    }
    out_ << "\n";
    return 0;
  }

 private:
  void prompt() {
    out_ << "> ";
    out_.flush();
  }

  bool command(const std::string& line) {
    std::istringstream words(line);
    std::string cmd, arg;
    words >> cmd;
    std::getline(words, arg);
    arg = trim(arg);
    if (cmd == ":quit" || cmd == ":q") return false;
    if (cmd == ":help") {
      out_ << ":mode literal|additive  switch the handoff prediction\n"
              ":frame ID               set the camera frame id\n"
              ":image PATH             attach image bytes to the current frame\n"
              ":samples                list the scripted demo questions\n"
              ":quit                   leave\n";
    } else if (cmd == ":mode") {
      const auto m = fusion::parse_handoff_mode(arg);
      if (!m) {
        err_ << "expected :mode literal or :mode additive\n";
      } else {
        settings_.handoff.mode = *m;
        out_ << "handoff mode " << fusion::to_string(*m) << "\n";
      }
    } else if (cmd == ":frame") {
      if (arg.empty()) {
        err_ << "expected :frame ID\n";
      } else {
        frame_ = FrameRef{arg, std::nullopt};
        out_ << "frame " << arg << "\n";
      }
    } else if (cmd == ":image") {
      try {
        frame_.bytes = read_file(arg);
        out_ << "attached " << frame_.bytes->size() << " bytes to frame " << frame_.id << "\n";
      } catch (const IoError& e) {
        err_ << e.what() << "\n";
      }
    } else if (cmd == ":samples") {
      for (const auto& r : demo_.records) out_ << "  " << r.query << "\n";
    } else {
      err_ << "unknown command " << cmd << "; try :help\n";
    }
    return true;
  }

  pipeline::PipelineConfig pipeline_for(const std::string& text, FrameRef& frame) {
    pipeline::PipelineConfig cfg;
    cfg.classifier = settings_.classifier;
    cfg.handoff = settings_.handoff;
    cfg.router_overhead = settings_.router_overhead;
    cfg.classifier_plugin = classifier_;
    cfg.experts = experts_;
    const auto& c = options_.config;
    if (live_) {
      cfg.edge = std::make_shared<backends::LiveBackend>(BackendKind::Edge, *c.edge);
      cfg.cloud = std::make_shared<backends::LiveBackend>(BackendKind::Cloud, *c.cloud);
    } else {
      const sim::ScenarioRecord* match = nullptr;
      for (const auto& r : demo_.records) {
        if (utf8::fold_ascii(r.query) == utf8::fold_ascii(text)) match = &r;
      }
      auto edge = match ? *match->scripts.edge : unknown_edge();
      auto cloud = match ? *match->scripts.cloud : unknown_cloud();
      if (match) frame = FrameRef{match->frame, std::nullopt};
      cfg.edge = std::make_shared<backends::ScriptedBackend>(BackendKind::Edge, edge);
      cfg.cloud = std::make_shared<backends::ScriptedBackend>(BackendKind::Cloud, cloud);
    }
    if (c.fusion) {
      cfg.fusion = std::make_shared<backends::LiveBackend>(BackendKind::Fusion, *c.fusion);
    } else {
      cfg.fusion = std::make_shared<fusion::RuleFusionBackend>(settings_.fusion_ttft);
    }
    if (c.editor) {
      cfg.editor = std::make_shared<backends::LiveBackend>(BackendKind::Editor, *c.editor);
    } else {
      cfg.editor = std::make_shared<agents::RuleEditorBackend>(settings_.editor_latency);
    }
    return cfg;
  }

  void answer(const std::string& text) {
    FrameRef frame = frame_;
    const auto cfg = pipeline_for(text, frame);
    fusion::TtsQueue tts(*clock_, settings_.handoff.c);
    const Query q = make_query("repl-" + std::to_string(++count_), text, frame);

    std::size_t shown = 0;
    auto flush_spoken = [&] {
      const std::size_t n = tts.spoken_count();
      if (n > shown) {
        out_ << utf8::encode(std::u32string_view(tts.chars()).substr(shown, n - shown));
        out_.flush();
        shown = n;
      }
    };
    auto ticking = std::make_shared<bool>(!options_.fast);
    std::function<void()> tick = [&, ticking] {
      if (!*ticking) return;
      flush_spoken();
      clock_->schedule(kTick, tick);
    };
    if (*ticking) clock_->post(tick);

    try {
      const auto result = pipeline::handle_query(q, cfg, *clock_, tts);
      if (!options_.fast) {
        clock_->run_until([&] { return tts.spoken_count() >= tts.length(); });
        flush_spoken();
      } else {
        out_ << tts.text();
      }
      *ticking = false;
      out_ << "\n[" << describe_result(result) << "]\n";
      if (options_.tts_command && !result.final_text.empty()) pipe_to_command(*options_.tts_command, result.final_text, err_);
    } catch (const std::exception& e) {
      *ticking = false;
      out_ << "\n";
      err_ << "error: " << e.what() << "\n";
    }
  }

  const ReplOptions& options_;
  std::ostream& out_;
  std::ostream& err_;
  sim::Settings settings_;
  std::shared_ptr<const classify::Classifier> classifier_;
  std::shared_ptr<agents::ExpertFixture> experts_;
  sim::Scenario demo_;
  bool live_ = false;
  std::unique_ptr<Clock> clock_;
  FrameRef frame_{"frame-0", std::nullopt};
  int count_ = 0;
};

std::string ms(const std::optional<Millis>& m) { return m ? std::to_string(m->count()) + "ms" : "-"; }

}  // namespace

std::string describe_result(const pipeline::QueryResult& r) {
  std::ostringstream s;
  s << "track=" << to_string(r.track) << " ttft=" << ms(r.ttft) << " turnaround=" << ms(r.turnaround);
  if (r.fusion) {
    const auto& f = *r.fusion;
    s << " winner=" << fusion::to_string(f.winner);
    if (f.p_raw) s << " p=" << *f.p_raw;
    if (f.p_word) s << " p_word=" << *f.p_word;
    if (f.splice_count) s << " splice=" << *f.splice_count;
    if (f.spoken_at_fusion_first) s << " spoken_at_fusion=" << *f.spoken_at_fusion_first;
    if (f.recovery) s << " recovery";
  }
  if (r.editor_fallback) s << " editor_fallback";
  if (r.degraded) s << " degraded";
  if (r.failure_notice) s << " failure_notice";
  if (r.resubmit_suggested) s << " resubmit";
  return s.str();
}

int run_repl(const ReplOptions& options, std::istream& in, std::ostream& out, std::ostream& err) {
  Session session(options, out, err);
  return session.run(in);
}

}  // namespace edgefuse::cli
