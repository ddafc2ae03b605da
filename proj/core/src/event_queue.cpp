#include "vcoop/event_queue.hpp"

#include <cmath>
#include <sstream>

namespace vcoop {

std::string_view to_string(EventKind kind) {
  switch (kind) {
    case EventKind::kTaskArrival:
      return "TaskArrival";
    case EventKind::kPhaseToggle:
      return "PhaseToggle";
    case EventKind::kTaskComplete:
      return "TaskComplete";
    case EventKind::kRelocate:
      return "Relocate";
    case EventKind::kReservationRelease:
      return "ReservationRelease";
    case EventKind::kSimEnd:
      return "SimEnd";
  }
  return "Unknown";
}

std::uint64_t EventQueue::schedule(double time_s, EventKind kind, VehicleId vehicle,
                                   std::uint64_t ref) {
  if (!(time_s >= now_) || std::isnan(time_s)) {
    std::ostringstream msg;
    msg.precision(17);
    msg << "event " << to_string(kind) << " scheduled at t=" << time_s
        << " before the clock t=" << now_;
    throw SimulationFault(msg.str());
  }
  const std::uint64_t seq = next_seq_++;
  heap_.push(Event{time_s, seq, kind, vehicle, ref});
  return seq;
}

Event EventQueue::pop() {
  if (heap_.empty()) throw SimulationFault("pop from an empty event queue");
  Event e = heap_.top();
  heap_.pop();
  now_ = e.time_s;
  ++dispatched_;
  return e;
}

std::uint64_t EventQueue::drain() {
  const std::uint64_t n = heap_.size();
  heap_ = {};
  drained_ += n;
  return n;
}

}  // namespace vcoop
