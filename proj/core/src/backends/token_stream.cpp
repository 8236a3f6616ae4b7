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

#include "edgefuse/backends/token_stream.hpp"

namespace edgefuse::backends {

StreamCore::StreamCore(BackendKind source, Clock& clock) : source_(source), clock_(clock) {}

StreamCore::~StreamCore() {
  std::function<void()> hook;
  {
    std::lock_guard lock(mu_);
    hook = std::move(cancel_hook_);
    cancelled_flag_.store(true);
  }
  if (hook) hook();
  if (worker_ && worker_->joinable()) worker_->join();
}

void StreamCore::set_cancel_hook(std::function<void()> hook) {
  std::lock_guard lock(mu_);
  cancel_hook_ = std::move(hook);
}

void StreamCore::adopt_worker(std::thread worker) { worker_ = std::make_unique<std::thread>(std::move(worker)); }

bool StreamCore::is_cancelled() const { return cancelled_flag_.load(); }

void StreamCore::emit_text(std::string text) {
  std::lock_guard lock(mu_);
  const bool first = state_ == StreamState::Pending;
  deliver(first ? TokenEventKind::First : TokenEventKind::Token, std::move(text), {});
}

void StreamCore::emit_end() {
  std::lock_guard lock(mu_);
  if (state_ == StreamState::Pending) deliver(TokenEventKind::First, {}, {});
  deliver(TokenEventKind::End, {}, {});
}

void StreamCore::emit_error(std::string detail) {
  std::lock_guard lock(mu_);
  deliver(TokenEventKind::Error, {}, std::move(detail));
}

void StreamCore::deliver(TokenEventKind kind, std::string text, std::string detail) {
  if (cancelled_) return;
  if (state_ == StreamState::Ended || state_ == StreamState::Failed) return;

  TokenEvent ev{kind, std::move(text), clock_.now(), source_, std::move(detail)};
  switch (kind) {
    case TokenEventKind::First:
      state_ = StreamState::Streaming;
      first_at_ = ev.at;
      break;
    case TokenEventKind::Token:
      break;
    case TokenEventKind::End:
      state_ = StreamState::Ended;
      break;
    case TokenEventKind::Error:
      state_ = StreamState::Failed;
      break;
  }
  buffer_ += ev.text;
  events_.push_back(ev);
  if (consumer_) consumer_(ev);
}

BackendKind TokenStream::source() const { return core_->source_; }

void TokenStream::on_event(Consumer consumer) {
  std::lock_guard lock(core_->mu_);
  core_->consumer_ = std::move(consumer);
}

void TokenStream::cancel() {
  std::function<void()> hook;
  {
    std::lock_guard lock(core_->mu_);
    if (core_->cancelled_) return;
    core_->cancelled_ = true;
    core_->cancelled_flag_.store(true);
    core_->cancelled_at_ = core_->clock_.now();
    if (core_->state_ == StreamState::Pending || core_->state_ == StreamState::Streaming) {
      core_->state_ = StreamState::Cancelled;
    }
    hook = std::move(core_->cancel_hook_);
  }
  if (hook) hook();
}

bool TokenStream::cancelled() const {
  std::lock_guard lock(core_->mu_);
  return core_->cancelled_;
}

StreamState TokenStream::state() const {
  std::lock_guard lock(core_->mu_);
  return core_->state_;
}

bool TokenStream::finished() const {
  std::lock_guard lock(core_->mu_);
  return core_->cancelled_ || core_->state_ == StreamState::Ended || core_->state_ == StreamState::Failed;
}

std::string TokenStream::buffer() const {
  std::lock_guard lock(core_->mu_);
  return core_->buffer_;
}

std::vector<TokenEvent> TokenStream::events() const {
  std::lock_guard lock(core_->mu_);
  return core_->events_;
}

std::optional<Timestamp> TokenStream::cancelled_at() const {
  std::lock_guard lock(core_->mu_);
  return core_->cancelled_at_;
}

std::optional<Timestamp> TokenStream::first_at() const {
  std::lock_guard lock(core_->mu_);
  return core_->first_at_;
}

}  // namespace edgefuse::backends
