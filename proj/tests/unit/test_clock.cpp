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

#include <gtest/gtest.h>

#include <thread>
#include <vector>

#include "edgefuse/core/clock.hpp"

namespace edgefuse {
namespace {

TEST(VirtualClock, RunsTasksInDueOrderThenFifo) {
  VirtualClock clock;
  std::vector<int> order;
  clock.schedule(Millis{20}, [&] { order.push_back(3); });
  clock.schedule(Millis{10}, [&] { order.push_back(1); });
  clock.schedule(Millis{10}, [&] { order.push_back(2); });
  clock.post([&] { order.push_back(0); });
  EXPECT_FALSE(clock.run_until([] { return false; }));
  EXPECT_EQ(order, (std::vector<int>{0, 1, 2, 3}));
  EXPECT_EQ(clock.now().ms(), 20);
}

TEST(VirtualClock, TimeOnlyMovesWithTasks) {
  VirtualClock clock;
  EXPECT_EQ(clock.now().ms(), 0);
  clock.schedule(Millis{500}, [] {});
  EXPECT_EQ(clock.now().ms(), 0);
  clock.run_until([] { return false; });
  EXPECT_EQ(clock.now().ms(), 500);
}

TEST(VirtualClock, WaitForRunsDueTasksAndAdvances) {
  VirtualClock clock;
  int ran = 0;
  clock.schedule(Millis{5}, [&] { ++ran; });
  clock.schedule(Millis{50}, [&] { ++ran; });
  clock.wait_for(Millis{9});
  EXPECT_EQ(ran, 1);
  EXPECT_EQ(clock.now().ms(), 9);
  EXPECT_EQ(clock.pending(), 1u);
}

TEST(VirtualClock, RunUntilStopsAtPredicate) {
  VirtualClock clock;
  int n = 0;
  for (int i = 1; i <= 5; ++i) clock.schedule(Millis{i * 10}, [&] { ++n; });
  EXPECT_TRUE(clock.run_until([&] { return n == 3; }));
  EXPECT_EQ(clock.now().ms(), 30);
  EXPECT_EQ(clock.pending(), 2u);
}

TEST(VirtualClock, RunUntilHonoursLimit) {
  VirtualClock clock;
  clock.schedule(Millis{1000}, [] {});
  EXPECT_FALSE(clock.run_until([] { return false; }, Millis{100}));
  EXPECT_LE(clock.now().ms(), 100);
}

TEST(VirtualClock, TasksMayScheduleMoreTasks) {
  VirtualClock clock;
  int depth = 0;
  std::function<void()> step = [&] {
    if (++depth < 4) clock.schedule(Millis{7}, step);
  };
  clock.post(step);
  clock.run_until([] { return false; });
  EXPECT_EQ(depth, 4);
  EXPECT_EQ(clock.now().ms(), 21);
}

TEST(WallClock, GuardKeepsLoopAliveForOutsideProducer) {
  WallClock clock;
  auto guard = std::make_shared<Clock::WorkGuard>(clock.hold());
  bool delivered = false;
  std::thread producer([&clock, guard] {
    std::this_thread::sleep_for(std::chrono::milliseconds(20));
    clock.post([] {});
    guard->release();
  });
  clock.post([&] { delivered = true; });
  guard.reset();
  EXPECT_FALSE(clock.run_until([] { return false; }, Millis{2000}));
  producer.join();
  EXPECT_TRUE(delivered);
  EXPECT_GE(clock.now().ms(), 20);
  EXPECT_LT(clock.now().ms(), 1500);
}

TEST(WallClock, ScheduledTaskWaitsForItsTime) {
  WallClock clock;
  std::optional<Timestamp> ran;
  clock.schedule(Millis{30}, [&] { ran = clock.now(); });
  clock.run_until([&] { return ran.has_value(); });
  ASSERT_TRUE(ran);
  EXPECT_GE(ran->ms(), 30);
}

}  // namespace
}  // namespace edgefuse
