#ifndef VCOOP_WORKLOAD_HPP
#define VCOOP_WORKLOAD_HPP

#include <span>
#include <string>
#include <vector>

#include "vcoop/config.hpp"
#include "vcoop/random.hpp"
#include "vcoop/types.hpp"

namespace vcoop {

/// One generated task instance.
struct TaskSpec {
  TaskId task_id = 0;
  VehicleId owner_vehicle_id = 0;
  std::size_t app_index = 0;
  double created_at_s = 0.0;
  double length_gi = 0.0;
  double upload_kb = 0.0;
  double download_kb = 0.0;
  double d_limit_s = 0.0;
  double vm_utilization_pct = 0.0;
};

enum class Phase { kActive, kIdle };

/// The application a vehicle runs and where it is in its active/idle cycle.
struct AppBinding {
  VehicleId vehicle_id = 0;
  std::size_t app_index = 0;
  const AppProfile* profile = nullptr;
  Phase phase = Phase::kActive;
  double phase_until_s = 0.0;
};

/// Each vehicle draws its application independently with probability
/// usage_pct. All bindings start active at t = 0.
std::vector<AppBinding> assign_apps(int n_vehicles, std::span<const AppProfile> apps,
                                    RandomStream& rng);

struct NextEvent {
  enum class Kind { kArrival, kToggle };
  Kind kind = Kind::kArrival;
  double time_s = 0.0;
};

/// For an active binding: the next arrival, or the switch to idle when the
/// sampled arrival would land past the end of the active period (that draw is
/// discarded). For an idle binding: the switch back to active.
NextEvent next_arrival(const AppBinding& binding, double now_s, RandomStream& rng);

/// Flips the phase at its boundary and sets the new boundary.
void toggle_phase(AppBinding& binding);

/// Draws the task length; sizes and tolerance come from the profile.
TaskSpec materialize_task(const AppBinding& binding, TaskId task_id, double now_s,
                          RandomStream& rng);

}  // namespace vcoop

#endif  // VCOOP_WORKLOAD_HPP
