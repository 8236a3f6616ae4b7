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

#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "edgefuse/core/time.hpp"

namespace edgefuse::backends {

// How the mock answers one request.
struct MockReply {
  std::vector<std::string> deltas;
  Millis first_delay{0};  // before the first delta
  Millis gap{0};          // between deltas
  // Stall for `stall` after this many deltas have been written.
  std::optional<std::size_t> stall_after;
  Millis stall{0};
  int status = 200;
  bool send_done = true;  // write the [DONE] sentinel
};

struct RecordedRequest {
  std::string path;
  std::string authorization;
  std::string body;
};

// Loopback streaming chat-completions server. Replies are keyed on the
// request's first text content part; unknown prompts get the default reply.
class MockChatServer {
 public:
  explicit MockChatServer(MockReply default_reply = {});
  ~MockChatServer();

  MockChatServer(const MockChatServer&) = delete;
  MockChatServer& operator=(const MockChatServer&) = delete;

  // Binds 127.0.0.1 on `port` (0 picks a free one) and serves on a thread.
  void start(int port = 0);
  void stop();

  int port() const { return port_; }
  std::string base_url() const;

  void set_reply(const std::string& prompt, MockReply reply);
  void set_default_reply(MockReply reply);
  // Requests without "Authorization: Bearer <key>" get 401.
  void require_api_key(std::string key);

  std::vector<RecordedRequest> requests() const;

  // Blocks the calling thread; used by the CLI's mock-server command.
  void listen_blocking(const std::string& host, int port);

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
  int port_ = 0;
};

// One SSE "data:" record carrying a content delta.
std::string sse_delta_record(const std::string& content);

}  // namespace edgefuse::backends
