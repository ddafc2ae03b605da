#ifndef VCOOP_EVENT_QUEUE_HPP
#define VCOOP_EVENT_QUEUE_HPP

#include <cstdint>
#include <queue>
#include <stdexcept>
#include <string>
#include <vector>

#include "vcoop/types.hpp"

namespace vcoop {

enum class EventKind : std::uint8_t {
  kTaskArrival,
  kPhaseToggle,
  kTaskComplete,
  kRelocate,
  kReservationRelease,
  kSimEnd,
};

std::string_view to_string(EventKind kind);

struct Event {
  double time_s = 0.0;
  std::uint64_t seq = 0;
  EventKind kind = EventKind::kSimEnd;
  VehicleId vehicle = 0;
  std::uint64_t ref = 0;  ///< task id or reservation id, by kind
};

/// Raised when the kernel is asked to do something no valid model would.
class SimulationFault : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// Time-ordered event queue with a virtual clock. Events at equal times come
/// out in the order they were scheduled.
class EventQueue {
 public:
  /// Throws SimulationFault when `time_s` lies before the clock.
  std::uint64_t schedule(double time_s, EventKind kind, VehicleId vehicle = 0,
                         std::uint64_t ref = 0);

  /// Removes the earliest event and advances the clock to its time.
  Event pop();

  /// Drops everything still queued; they count as drained, not dispatched.
  std::uint64_t drain();

  bool empty() const { return heap_.empty(); }
  std::size_t size() const { return heap_.size(); }
  double now() const { return now_; }

  std::uint64_t scheduled() const { return next_seq_; }
  std::uint64_t dispatched() const { return dispatched_; }
  std::uint64_t drained() const { return drained_; }

 private:
  struct Later {
    bool operator()(const Event& a, const Event& b) const {
      if (a.time_s != b.time_s) return a.time_s > b.time_s;
      return a.seq > b.seq;
    }
  };

  std::priority_queue<Event, std::vector<Event>, Later> heap_;
  double now_ = 0.0;
  std::uint64_t next_seq_ = 0;
  std::uint64_t dispatched_ = 0;
  std::uint64_t drained_ = 0;
};

}  // namespace vcoop

#endif  // VCOOP_EVENT_QUEUE_HPP
