#include "vcoop/event_queue.hpp"

#include <gtest/gtest.h>

namespace vcoop {
namespace {

TEST(EventQueue, PopsInTimeOrder) {
  EventQueue q;
  q.schedule(5.0, EventKind::kRelocate, 1);
  q.schedule(1.0, EventKind::kTaskArrival, 2);
  q.schedule(3.0, EventKind::kPhaseToggle, 3);
  EXPECT_EQ(q.pop().vehicle, 2u);
  EXPECT_DOUBLE_EQ(q.now(), 1.0);
  EXPECT_EQ(q.pop().vehicle, 3u);
  EXPECT_EQ(q.pop().vehicle, 1u);
  EXPECT_DOUBLE_EQ(q.now(), 5.0);
}

TEST(EventQueue, EqualTimesKeepSchedulingOrder) {
  EventQueue q;
  for (VehicleId v = 0; v < 10; ++v) q.schedule(2.0, EventKind::kTaskArrival, v);
  for (VehicleId v = 0; v < 10; ++v) EXPECT_EQ(q.pop().vehicle, v);
}

TEST(EventQueue, EventAtCurrentClockPrecedesLaterOnes) {
  EventQueue q;
  q.schedule(4.0, EventKind::kTaskArrival, 0);
  q.pop();
  q.schedule(9.0, EventKind::kRelocate, 1);
  q.schedule(4.0, EventKind::kTaskComplete, 2);
  EXPECT_EQ(q.pop().vehicle, 2u);
}

TEST(EventQueue, SchedulingInThePastIsAFault) {
  EventQueue q;
  q.schedule(4.0, EventKind::kTaskArrival);
  q.pop();
  EXPECT_THROW(q.schedule(3.0, EventKind::kTaskArrival), SimulationFault);
}

TEST(EventQueue, PopOnEmptyIsAFault) {
  EventQueue q;
  EXPECT_THROW(q.pop(), SimulationFault);
}

TEST(EventQueue, CountersTrackLifecycle) {
  EventQueue q;
  q.schedule(1.0, EventKind::kTaskArrival);
  q.schedule(2.0, EventKind::kTaskArrival);
  q.schedule(3.0, EventKind::kSimEnd);
  q.pop();
  EXPECT_EQ(q.drain(), 2u);
  EXPECT_TRUE(q.empty());
  EXPECT_EQ(q.scheduled(), 3u);
  EXPECT_EQ(q.dispatched(), 1u);
  EXPECT_EQ(q.drained(), 2u);
}

}  // namespace
}  // namespace vcoop
