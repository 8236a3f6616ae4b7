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

#include <atomic>
#include <functional>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "edgefuse/core/clock.hpp"
#include "edgefuse/core/types.hpp"

namespace edgefuse::backends {

enum class StreamState { Pending, Streaming, Ended, Failed, Cancelled };

class StreamCore;

// Consumer-side handle of one model response stream.
//
// Events are delivered on the clock's loop, strictly in order, to a single
// consumer. The first text-bearing event is First; later ones are Token; the
// stream closes with exactly one End or Error. A stream that fails before
// producing output emits a lone Error. After cancel() returns nothing more is
// delivered and the buffer keeps whatever had arrived.
class TokenStream {
 public:
  using Consumer = std::function<void(const TokenEvent&)>;

  TokenStream() = default;
  explicit TokenStream(std::shared_ptr<StreamCore> core) : core_(std::move(core)) {}

  explicit operator bool() const { return core_ != nullptr; }

  BackendKind source() const;
  void on_event(Consumer consumer);

  // Idempotent and callable from any thread.
  void cancel();

  bool cancelled() const;
  StreamState state() const;
  // Terminal event delivered, or cancelled.
  bool finished() const;

  // Concatenation of every delivered First/Token text.
  std::string buffer() const;
  std::vector<TokenEvent> events() const;
  std::optional<Timestamp> cancelled_at() const;
  std::optional<Timestamp> first_at() const;

 private:
  std::shared_ptr<StreamCore> core_;
};

// Producer side. Every emit_* call must run on the clock's loop; timestamps
// come from the clock at delivery.
class StreamCore : public std::enable_shared_from_this<StreamCore> {
 public:
  StreamCore(BackendKind source, Clock& clock);
  ~StreamCore();

  StreamCore(const StreamCore&) = delete;
  StreamCore& operator=(const StreamCore&) = delete;

  void emit_text(std::string text);
  // Emits First("") first when nothing has been emitted yet.
  void emit_end();
  void emit_error(std::string detail);

  // Runs once, on the first cancel(). Used by live streams to abort I/O.
  void set_cancel_hook(std::function<void()> hook);
  // Joined on destruction, after cancelling.
  void adopt_worker(std::thread worker);

  Clock& clock() { return clock_; }
  bool is_cancelled() const;

 private:
  friend class TokenStream;

  void deliver(TokenEventKind kind, std::string text, std::string detail);

  const BackendKind source_;
  Clock& clock_;

  // Held across consumer callbacks so a cancel() from another thread waits
  // for an in-flight delivery; recursive so a consumer may cancel itself.
  mutable std::recursive_mutex mu_;
  TokenStream::Consumer consumer_;
  std::function<void()> cancel_hook_;
  std::vector<TokenEvent> events_;
  std::string buffer_;
  StreamState state_ = StreamState::Pending;
  bool cancelled_ = false;
  std::atomic<bool> cancelled_flag_{false};
  std::optional<Timestamp> cancelled_at_;
  std::optional<Timestamp> first_at_;
  std::unique_ptr<std::thread> worker_;
};

}  // namespace edgefuse::backends
