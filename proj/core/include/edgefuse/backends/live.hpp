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

#include <string>

#include "edgefuse/backends/backend.hpp"

namespace edgefuse::backends {

// An endpoint speaking the streaming chat-completions protocol.
struct BackendEndpoint {
  std::string base_url;     // e.g. "http://127.0.0.1:8080/v1"; "/chat/completions" is appended
  std::string model;
  std::string api_key_env;  // environment variable holding the bearer token; empty for none
  Millis timeout{30000};    // connect timeout and per-read timeout

  // Throws std::invalid_argument on an empty URL/model or a non-positive timeout.
  void validate() const;
};

// Request body for one streaming completion. Frame bytes travel as a
// base64 image part; without bytes the frame id is referenced in a text part.
std::string build_chat_request(const BackendEndpoint& endpoint, const std::string& prompt, const FrameRef& frame);

// Issues one streaming request on a worker thread and feeds its deltas into
// the clock's loop. Connection failures, timeouts and protocol violations
// surface as an Error event, never as an exception.
TokenStream open_live_stream(const BackendEndpoint& endpoint, const std::string& prompt, const FrameRef& frame,
                             Clock& clock, BackendKind source = BackendKind::Cloud);

class LiveBackend final : public StreamingBackend {
 public:
  LiveBackend(BackendKind kind, BackendEndpoint endpoint);
  BackendKind kind() const override { return kind_; }
  TokenStream open(const ModelRequest& request, Clock& clock) override {
    return open_live_stream(endpoint_, request.prompt, request.frame, clock, kind_);
  }
  const BackendEndpoint& endpoint() const { return endpoint_; }

 private:
  BackendKind kind_;
  BackendEndpoint endpoint_;
};

// Incremental parser for a server-sent-event body. Handles events split
// across reads.
class SseParser {
 public:
  struct Event {
    enum Kind { Delta, Done, Failure } kind;
    std::string text;  // delta content, or failure detail
  };

  std::vector<Event> feed(std::string_view chunk);

 private:
  void handle_line(std::string_view line, std::vector<Event>& out);

  std::string pending_;
};

}  // namespace edgefuse::backends
