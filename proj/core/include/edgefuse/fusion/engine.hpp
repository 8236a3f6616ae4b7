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

#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>

#include "edgefuse/backends/backend.hpp"
#include "edgefuse/fusion/handoff.hpp"
#include "edgefuse/fusion/tts_queue.hpp"

namespace edgefuse::fusion {

enum class Winner { CloudFirst, EdgeFirst, EdgeOnlyFallback, CloudOnlyFallback, BothFailed };

std::string_view to_string(Winner w);
std::optional<Winner> parse_winner(std::string_view s);

// Watches the First events of an edge and a cloud stream. A cloud First in
// the same instant as an edge First wins. When one stream fails before its
// First, the other wins by default.
class FirstTokenRace {
 public:
  enum class Result { Pending, EdgeFirst, CloudFirst, EdgeByDefault, CloudByDefault, BothFailed };

  // Feed every event of either stream. Returns the result once decided.
  Result on_event(const TokenEvent& ev);
  // Settles a pending edge First once everything due at its instant has run.
  Result commit();

  Result result() const { return result_; }
  bool edge_first_pending() const { return edge_first_seen_ && result_ == Result::Pending; }

 private:
  Result result_ = Result::Pending;
  bool edge_first_seen_ = false;
  bool edge_failed_ = false;
  bool cloud_failed_ = false;
};

// Runs both streams until the race is decided and cancels the loser's edge
// stream on CloudFirst. Neither stream is consumed further.
Winner race_first_token(backends::TokenStream& edge, backends::TokenStream& cloud, Clock& clock,
                        std::optional<Timestamp>* t1 = nullptr);

struct FusionOutcome {
  Winner winner = Winner::BothFailed;
  HandoffMode mode = HandoffMode::Literal;
  std::optional<Timestamp> t1;  // edge First committed
  std::optional<Timestamp> t2;  // cloud End
  std::optional<Timestamp> t3;  // fusion First
  // Set on the EdgeFirst handoff path.
  std::optional<double> p_real;
  std::optional<std::size_t> p_raw;
  std::optional<std::size_t> p_clamped;
  std::optional<std::size_t> p_word;  // nullopt with p_raw set: no complete word to keep
  std::optional<std::size_t> edge_len_at_t2;
  // Edge characters kept ahead of the continuation. Equals p_word + 1 unless
  // the recovery path moved the splice.
  std::optional<std::size_t> splice_count;
  std::optional<std::size_t> spoken_at_t2;
  std::optional<std::size_t> spoken_at_fusion_first;
  bool recovery = false;      // prediction fell behind the spoken cursor
  bool degraded = false;      // a stream failed after output had started
  bool fusion_started = false;
  std::string edge_text;      // edge buffer when it stopped
  std::string cloud_text;
  std::string continuation;   // fusion output delivered to the queue
  std::string final_text;     // everything enqueued for speech
  std::size_t edge_chars_enqueued = 0;
  std::optional<std::string> failure_detail;

  // spoken_at_fusion_first <= p_word + 1, when both are known.
  std::optional<bool> spoken_safe() const;
};

struct FusionContext {
  std::string query;
  FrameRef frame;
};

// Drives the edge and cloud streams, the speech queue and, on the EdgeFirst
// path, the fusion backend until the response is complete. Stream failures
// select a fallback; nothing here throws for a failed stream.
FusionOutcome run_fusion(backends::TokenStream edge, backends::TokenStream cloud,
                         backends::StreamingBackend& fusion_backend, TtsQueue& tts, const HandoffParams& params,
                         Clock& clock, const FusionContext& context = {});

}  // namespace edgefuse::fusion
