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
#include <chrono>
#include <condition_variable>
#include <cstdint>
#include <functional>
#include <memory>
#include <mutex>
#include <optional>
#include <queue>
#include <vector>

#include "edgefuse/core/time.hpp"

namespace edgefuse {

using Task = std::function<void()>;

// Event loop plus time source. Tasks run on whichever thread drives
// run_until(); schedule() may be called from any thread. Tasks due at the
// same instant run in the order they were scheduled.
class Clock {
 public:
  // Keeps run_until() from treating the loop as idle while a producer outside
  // the loop (a network reader, say) may still post work.
  class WorkGuard {
   public:
    WorkGuard() = default;
    WorkGuard(WorkGuard&&) noexcept = default;
    WorkGuard& operator=(WorkGuard&&) noexcept;
    WorkGuard(const WorkGuard&) = delete;
    WorkGuard& operator=(const WorkGuard&) = delete;
    ~WorkGuard();

    void release();

   private:
    friend class Clock;
    struct Shared;
    explicit WorkGuard(std::shared_ptr<Shared> s);
    std::shared_ptr<Shared> shared_;
  };

  Clock();
  virtual ~Clock();
  Clock(const Clock&) = delete;
  Clock& operator=(const Clock&) = delete;

  virtual Timestamp now() const = 0;
  virtual bool is_virtual() const = 0;

  void schedule(Millis delay, Task task);
  void post(Task task) { schedule(Millis{0}, std::move(task)); }

  // Runs tasks until `done()` holds. Returns false if the loop went idle (no
  // queued tasks, no outstanding guards) or `limit` elapsed first.
  bool run_until(const std::function<bool()>& done, std::optional<Millis> limit = std::nullopt);

  // Runs everything due within `d` and leaves now() at least `d` later.
  void wait_for(Millis d);

  WorkGuard hold();

  std::size_t pending() const;

 protected:
  // Virtual clocks jump to the due time; wall clocks block until it arrives.
  virtual void reach(Timestamp due, std::unique_lock<std::mutex>& lock) = 0;
  virtual void wait_for_work(std::unique_lock<std::mutex>& lock, std::optional<Timestamp> until) = 0;

  struct Entry {
    Timestamp due;
    std::uint64_t seq;
    Task task;
  };
  struct Later {
    bool operator()(const Entry& a, const Entry& b) const {
      return a.due != b.due ? a.due > b.due : a.seq > b.seq;
    }
  };

  std::shared_ptr<WorkGuard::Shared> shared_;
  std::priority_queue<Entry, std::vector<Entry>, Later> queue_;
  std::uint64_t next_seq_ = 0;
};

// Deterministic simulated time. now() only moves when the loop runs a task
// whose due time is in the future.
class VirtualClock final : public Clock {
 public:
  VirtualClock() = default;

  Timestamp now() const override;
  bool is_virtual() const override { return true; }

  void advance(Millis d) { wait_for(d); }

 protected:
  void reach(Timestamp due, std::unique_lock<std::mutex>& lock) override;
  void wait_for_work(std::unique_lock<std::mutex>& lock, std::optional<Timestamp> until) override;

 private:
  std::atomic<std::int64_t> now_ms_{0};
};

// Monotonic wall time measured from construction.
class WallClock final : public Clock {
 public:
  WallClock();

  Timestamp now() const override;
  bool is_virtual() const override { return false; }

 protected:
  void reach(Timestamp due, std::unique_lock<std::mutex>& lock) override;
  void wait_for_work(std::unique_lock<std::mutex>& lock, std::optional<Timestamp> until) override;

 private:
  std::chrono::steady_clock::time_point origin_;
};

}  // namespace edgefuse
