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

#include "edgefuse/fusion/engine.hpp"

#include <memory>
#include <stdexcept>

#include "edgefuse/core/utf8.hpp"
#include "edgefuse/fusion/prompt.hpp"

namespace edgefuse::fusion {

using backends::StreamState;
using backends::TokenStream;

std::string_view to_string(Winner w) {
  switch (w) {
    case Winner::CloudFirst: return "cloud_first";
    case Winner::EdgeFirst: return "edge_first";
    case Winner::EdgeOnlyFallback: return "edge_only_fallback";
    case Winner::CloudOnlyFallback: return "cloud_only_fallback";
    case Winner::BothFailed: return "both_failed";
  }
  return "?";
}

std::optional<Winner> parse_winner(std::string_view s) {
  for (Winner w : {Winner::CloudFirst, Winner::EdgeFirst, Winner::EdgeOnlyFallback, Winner::CloudOnlyFallback,
                   Winner::BothFailed}) {
    if (to_string(w) == s) return w;
  }
  return std::nullopt;
}

std::optional<bool> FusionOutcome::spoken_safe() const {
  if (!spoken_at_fusion_first || !p_raw) return std::nullopt;
  const std::size_t bound = p_word ? *p_word + 1 : 0;
  return *spoken_at_fusion_first <= bound;
}

FirstTokenRace::Result FirstTokenRace::on_event(const TokenEvent& ev) {
  if (result_ != Result::Pending) return result_;
  const bool edge = ev.source == BackendKind::Edge;
  switch (ev.kind) {
    case TokenEventKind::First:
      if (edge) {
        edge_first_seen_ = true;
      } else {
        result_ = edge_failed_ ? Result::CloudByDefault : Result::CloudFirst;
      }
      break;
    case TokenEventKind::Error:
      if (edge && !edge_first_seen_) edge_failed_ = true;
      if (!edge) cloud_failed_ = true;
      if (edge_failed_ && cloud_failed_) result_ = Result::BothFailed;
      break;
    case TokenEventKind::Token:
    case TokenEventKind::End:
      break;
  }
  return result_;
}

FirstTokenRace::Result FirstTokenRace::commit() {
  if (result_ == Result::Pending && edge_first_seen_) {
    result_ = cloud_failed_ ? Result::EdgeByDefault : Result::EdgeFirst;
  }
  return result_;
}

Winner race_first_token(TokenStream& edge, TokenStream& cloud, Clock& clock, std::optional<Timestamp>* t1) {
  auto race_ptr = std::make_shared<FirstTokenRace>();
  FirstTokenRace& race = *race_ptr;
  bool commit_posted = false;
  auto feed = [&](const TokenEvent& ev) {
    if (race.on_event(ev) == FirstTokenRace::Result::Pending && race.edge_first_pending() && !commit_posted) {
      commit_posted = true;
      clock.post([race_ptr] { race_ptr->commit(); });
    }
  };
  edge.on_event(feed);
  cloud.on_event(feed);
  clock.run_until([&] { return race.result() != FirstTokenRace::Result::Pending; });
  edge.on_event(nullptr);
  cloud.on_event(nullptr);

  switch (race.result()) {
    case FirstTokenRace::Result::EdgeFirst:
      if (t1) *t1 = clock.now();
      return Winner::EdgeFirst;
    case FirstTokenRace::Result::EdgeByDefault:
      if (t1) *t1 = clock.now();
      return Winner::EdgeOnlyFallback;
    case FirstTokenRace::Result::CloudFirst:
      edge.cancel();
      return Winner::CloudFirst;
    case FirstTokenRace::Result::CloudByDefault:
      return Winner::CloudOnlyFallback;
    case FirstTokenRace::Result::Pending:
    case FirstTokenRace::Result::BothFailed:
      break;
  }
  return Winner::BothFailed;
}

namespace {

class FusionRun {
 public:
  FusionRun(TokenStream edge, TokenStream cloud, backends::StreamingBackend& fusion_backend, TtsQueue& tts,
            const HandoffParams& params, Clock& clock, const FusionContext& context)
      : edge_(std::move(edge)),
        cloud_(std::move(cloud)),
        fusion_backend_(fusion_backend),
        tts_(tts),
        params_(params),
        clock_(clock),
        context_(context) {
    out_.mode = params.mode;
  }

  FusionOutcome run() {
    edge_.on_event([this](const TokenEvent& ev) { handle(ev); });
    cloud_.on_event([this](const TokenEvent& ev) { handle(ev); });
    if (!clock_.run_until([this] { return phase_ == Phase::Done; })) {
      out_.degraded = true;
      out_.failure_detail = "streams went idle before completing";
    }
    for (TokenStream* s : {&edge_, &cloud_, &fusion_}) {
      if (!*s) continue;
      s->on_event(nullptr);
      if (!s->finished()) s->cancel();
    }

    const std::string edge_buf = edge_.buffer();
    out_.edge_text = edge_buf;
    out_.cloud_text = cloud_.buffer();
    out_.edge_chars_enqueued = edge_chars_enqueued_;
    if (fusion_) out_.continuation = fusion_.buffer();
    out_.final_text = tts_.text();
    return out_;
  }

 private:
  enum class Phase { Race, EdgeLead, CloudLead, EdgeOnly, Fusing, Done };

  void handle(const TokenEvent& ev) {
    switch (phase_) {
      case Phase::Race: on_race(ev); break;
      case Phase::EdgeLead: on_edge_lead(ev); break;
      case Phase::CloudLead: on_cloud_lead(ev); break;
      case Phase::EdgeOnly: on_edge_only(ev); break;
      case Phase::Fusing: on_fusion(ev); break;
      case Phase::Done: break;
    }
  }

  void on_race(const TokenEvent& ev) {
    const auto r = race_.on_event(ev);
    if (r != FirstTokenRace::Result::Pending) {
      settle(r);
      return;
    }
    if (race_.edge_first_pending() && !commit_posted_) {
      commit_posted_ = true;
      clock_.post([this, alive = std::weak_ptr<bool>(alive_)] {
        if (alive.lock() && phase_ == Phase::Race) settle(race_.commit());
      });
    }
  }

  void settle(FirstTokenRace::Result r) {
    switch (r) {
      case FirstTokenRace::Result::Pending:
        return;
      case FirstTokenRace::Result::EdgeFirst:
        out_.winner = Winner::EdgeFirst;
        out_.t1 = clock_.now();
        phase_ = Phase::EdgeLead;
        pump_edge();
        if (edge_.state() == StreamState::Failed) edge_failed_after_first_ = true;
        return;
      case FirstTokenRace::Result::EdgeByDefault:
        out_.winner = Winner::EdgeOnlyFallback;
        out_.t1 = clock_.now();
        enter_edge_only();
        return;
      case FirstTokenRace::Result::CloudFirst:
      case FirstTokenRace::Result::CloudByDefault:
        out_.winner = r == FirstTokenRace::Result::CloudFirst ? Winner::CloudFirst : Winner::CloudOnlyFallback;
        edge_.cancel();
        phase_ = Phase::CloudLead;
        pump_cloud();
        finish_if_terminal(cloud_);
        return;
      case FirstTokenRace::Result::BothFailed:
        out_.winner = Winner::BothFailed;
        out_.failure_detail = "edge and cloud both failed before producing output";
        phase_ = Phase::Done;
        return;
    }
  }

  void on_edge_lead(const TokenEvent& ev) {
    if (ev.source == BackendKind::Edge) {
      pump_edge();
      if (ev.kind == TokenEventKind::Error) edge_failed_after_first_ = true;
      return;
    }
    if (ev.kind == TokenEventKind::End) {
      handoff();
    } else if (ev.kind == TokenEventKind::Error) {
      out_.winner = Winner::EdgeOnlyFallback;
      enter_edge_only();
    }
  }

  void enter_edge_only() {
    phase_ = Phase::EdgeOnly;
    pump_edge();
    finish_if_terminal(edge_);
  }

  void on_edge_only(const TokenEvent& ev) {
    if (ev.source != BackendKind::Edge) return;
    pump_edge();
    finish_if_terminal(edge_);
  }

  void on_cloud_lead(const TokenEvent& ev) {
    if (ev.source != BackendKind::Cloud) return;
    pump_cloud();
    finish_if_terminal(cloud_);
  }

  void finish_if_terminal(const TokenStream& s) {
    const auto st = s.state();
    if (st == StreamState::Failed) {
      out_.degraded = true;
      phase_ = Phase::Done;
    } else if (st == StreamState::Ended) {
      if (edge_failed_after_first_ && &s == &edge_) out_.degraded = true;
      phase_ = Phase::Done;
    }
  }

  void handoff() {
    const Timestamp t2 = clock_.now();
    out_.t2 = t2;
    const std::string cloud_text = cloud_.buffer();
    if (cloud_text.empty()) {
      out_.winner = Winner::EdgeOnlyFallback;
      out_.failure_detail = "cloud returned an empty response";
      enter_edge_only();
      return;
    }

    pump_edge();
    const bool trailing_complete = edge_.state() == StreamState::Ended;
    if (!edge_.finished()) edge_.cancel();
    const std::u32string edge = utf8::decode(edge_.buffer());

    out_.p_real = predict_spoken_real(params_, *out_.t1, t2);
    out_.p_raw = predict_spoken_index(params_, *out_.t1, t2);
    out_.p_clamped = clamp_index(*out_.p_raw, edge.size());
    out_.p_word = shift_to_word_boundary(edge, *out_.p_clamped, trailing_complete);
    out_.edge_len_at_t2 = edge.size();
    out_.spoken_at_t2 = tts_.spoken_count();

    std::size_t keep = out_.p_word ? *out_.p_word + 1 : 0;
    try {
      tts_.truncate_to(keep);
    } catch (const TruncationBehindCursor& e) {
      out_.recovery = true;
      const auto j = next_word_end(edge, e.spoken() - 1, trailing_complete);
      keep = j ? *j + 1 : edge.size();
      tts_.truncate_to(keep);
    }
    out_.splice_count = keep;
    splice_ = keep;
    edge_chars_ = edge;

    const std::string prefix = utf8::encode(std::u32string_view(edge).substr(0, keep));
    backends::ModelRequest request;
    request.prompt = build_fusion_prompt(prefix, cloud_text);
    request.frame = context_.frame;
    request.fields = {{"edge_prefix", prefix}, {"cloud_response", cloud_text}, {"query", context_.query}};
    try {
      fusion_ = fusion_backend_.open(request, clock_);
    } catch (const std::exception& e) {
      out_.failure_detail = std::string("fusion backend unavailable: ") + e.what();
      restore_edge_remainder();
      return;
    }
    out_.fusion_started = true;
    phase_ = Phase::Fusing;
    fusion_.on_event([this](const TokenEvent& ev) { handle(ev); });
  }

  void on_fusion(const TokenEvent& ev) {
    if (ev.source != BackendKind::Fusion) return;
    switch (ev.kind) {
      case TokenEventKind::First:
        out_.t3 = ev.at;
        out_.spoken_at_fusion_first = tts_.spoken_count();
        tts_.enqueue(ev.text);
        break;
      case TokenEventKind::Token:
        tts_.enqueue(ev.text);
        break;
      case TokenEventKind::End:
        phase_ = Phase::Done;
        break;
      case TokenEventKind::Error:
        out_.failure_detail = "fusion stream failed: " + ev.detail;
        if (!out_.t3) {
          restore_edge_remainder();
        } else {
          out_.degraded = true;
          phase_ = Phase::Done;
        }
        break;
    }
  }

  void restore_edge_remainder() {
    tts_.enqueue(utf8::encode(std::u32string_view(edge_chars_).substr(splice_)));
    edge_chars_enqueued_ += edge_chars_.size() - splice_;
    out_.degraded = true;
    phase_ = Phase::Done;
  }

  void pump_edge() {
    const std::string buf = edge_.buffer();
    if (buf.size() <= edge_bytes_) return;
    const std::string_view delta = std::string_view(buf).substr(edge_bytes_);
    tts_.enqueue(delta);
    edge_chars_enqueued_ += utf8::length(delta);
    edge_bytes_ = buf.size();
  }

  void pump_cloud() {
    const std::string buf = cloud_.buffer();
    if (buf.size() <= cloud_bytes_) return;
    tts_.enqueue(std::string_view(buf).substr(cloud_bytes_));
    cloud_bytes_ = buf.size();
  }

  TokenStream edge_;
  TokenStream cloud_;
  TokenStream fusion_;
  backends::StreamingBackend& fusion_backend_;
  TtsQueue& tts_;
  const HandoffParams& params_;
  Clock& clock_;
  const FusionContext& context_;

  std::shared_ptr<bool> alive_ = std::make_shared<bool>(true);
  Phase phase_ = Phase::Race;
  FirstTokenRace race_;
  bool commit_posted_ = false;
  bool edge_failed_after_first_ = false;
  std::size_t edge_bytes_ = 0;
  std::size_t cloud_bytes_ = 0;
  std::size_t edge_chars_enqueued_ = 0;
  std::u32string edge_chars_;
  std::size_t splice_ = 0;
  FusionOutcome out_;
};

}  // namespace

FusionOutcome run_fusion(TokenStream edge, TokenStream cloud, backends::StreamingBackend& fusion_backend, TtsQueue& tts,
                         const HandoffParams& params, Clock& clock, const FusionContext& context) {
  if (!edge || !cloud) throw std::invalid_argument("run_fusion needs both streams");
  params.validate();
  FusionRun run(std::move(edge), std::move(cloud), fusion_backend, tts, params, clock, context);
  return run.run();
}

}  // namespace edgefuse::fusion
