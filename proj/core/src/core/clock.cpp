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

#include "edgefuse/core/clock.hpp"

namespace edgefuse {

struct Clock::WorkGuard::Shared {
  std::mutex mu;
  std::condition_variable cv;
  int guards = 0;
};

Clock::WorkGuard::WorkGuard(std::shared_ptr<Shared> s) : shared_(std::move(s)) {
  std::lock_guard lock(shared_->mu);
  ++shared_->guards;
}

Clock::WorkGuard& Clock::WorkGuard::operator=(WorkGuard&& other) noexcept {
  if (this != &other) {
    release();
    shared_ = std::move(other.shared_);
  }
  return *this;
}

Clock::WorkGuard::~WorkGuard() { release(); }

void Clock::WorkGuard::release() {
  if (!shared_) return;
  {
    std::lock_guard lock(shared_->mu);
    --shared_->guards;
  }
  shared_->cv.notify_all();
  shared_.reset();
}

Clock::Clock() : shared_(std::make_shared<WorkGuard::Shared>()) {}

Clock::~Clock() = default;

void Clock::schedule(Millis delay, Task task) {
  if (delay < Millis{0}) delay = Millis{0};
  {
    std::lock_guard lock(shared_->mu);
    queue_.push(Entry{now() + delay, next_seq_++, std::move(task)});
  }
  shared_->cv.notify_all();
}

Clock::WorkGuard Clock::hold() { return WorkGuard{shared_}; }

std::size_t Clock::pending() const {
  std::lock_guard lock(shared_->mu);
  return queue_.size();
}

bool Clock::run_until(const std::function<bool()>& done, std::optional<Millis> limit) {
  std::optional<Timestamp> deadline;
  if (limit) deadline = now() + *limit;

  while (true) {
    if (done()) return true;
    std::unique_lock lock(shared_->mu);
    if (deadline && now() >= *deadline) return false;

    if (!queue_.empty()) {
      const Timestamp due = queue_.top().due;
      if (deadline && due > *deadline) {
        reach(*deadline, lock);
        continue;
      }
      if (due > now()) {
        reach(due, lock);
        if (due > now()) continue;  // woken early by new work
      }
      Entry e = std::move(const_cast<Entry&>(queue_.top()));
      queue_.pop();
      lock.unlock();
      e.task();
      continue;
    }

    if (shared_->guards == 0) return false;
    wait_for_work(lock, deadline);
  }
}

void Clock::wait_for(Millis d) {
  bool fired = false;
  schedule(d, [&fired] { fired = true; });
  run_until([&fired] { return fired; });
}

// VirtualClock

Timestamp VirtualClock::now() const { return Timestamp::from_ms(now_ms_.load(std::memory_order_acquire)); }

void VirtualClock::reach(Timestamp due, std::unique_lock<std::mutex>&) {
  if (due > now()) now_ms_.store(due.ms(), std::memory_order_release);
}

void VirtualClock::wait_for_work(std::unique_lock<std::mutex>& lock, std::optional<Timestamp>) {
  // Simulated time cannot pass while waiting on an outside producer.
  shared_->cv.wait(lock);
}

// WallClock

WallClock::WallClock() : origin_(std::chrono::steady_clock::now()) {}

Timestamp WallClock::now() const {
  return Timestamp{std::chrono::duration_cast<Millis>(std::chrono::steady_clock::now() - origin_)};
}

void WallClock::reach(Timestamp due, std::unique_lock<std::mutex>& lock) {
  shared_->cv.wait_until(lock, origin_ + due.since_start());
}

void WallClock::wait_for_work(std::unique_lock<std::mutex>& lock, std::optional<Timestamp> until) {
  if (until) {
    shared_->cv.wait_until(lock, origin_ + until->since_start());
  } else {
    shared_->cv.wait(lock);
  }
}

}  // namespace edgefuse
