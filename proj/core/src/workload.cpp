#include "vcoop/workload.hpp"

#include <stdexcept>

namespace vcoop {

std::vector<AppBinding> assign_apps(int n_vehicles, std::span<const AppProfile> apps,
                                    RandomStream& rng) {
  if (apps.empty()) throw std::invalid_argument("no application profiles");
  std::vector<double> weights;
  weights.reserve(apps.size());
  for (const AppProfile& a : apps) weights.push_back(a.usage_pct);
  std::discrete_distribution<std::size_t> pick(weights.begin(), weights.end());

  std::vector<AppBinding> bindings;
  bindings.reserve(static_cast<std::size_t>(n_vehicles));
  for (int v = 0; v < n_vehicles; ++v) {
    const std::size_t idx = apps.size() == 1 ? 0 : pick(rng);
    bindings.push_back(AppBinding{static_cast<VehicleId>(v), idx, &apps[idx], Phase::kActive,
                                  apps[idx].active_period_s});
  }
  return bindings;
}

NextEvent next_arrival(const AppBinding& binding, double now_s, RandomStream& rng) {
  if (binding.phase == Phase::kIdle) return {NextEvent::Kind::kToggle, binding.phase_until_s};
  const double t = now_s + sample_exponential(rng, binding.profile->interarrival_mean_s);
  if (t > binding.phase_until_s) return {NextEvent::Kind::kToggle, binding.phase_until_s};
  return {NextEvent::Kind::kArrival, t};
}

void toggle_phase(AppBinding& binding) {
  if (binding.phase == Phase::kActive) {
    binding.phase = Phase::kIdle;
    binding.phase_until_s += binding.profile->idle_period_s;
  } else {
    binding.phase = Phase::kActive;
    binding.phase_until_s += binding.profile->active_period_s;
  }
}

TaskSpec materialize_task(const AppBinding& binding, TaskId task_id, double now_s,
                          RandomStream& rng) {
  const AppProfile& app = *binding.profile;
  TaskSpec task;
  task.task_id = task_id;
  task.owner_vehicle_id = binding.vehicle_id;
  task.app_index = binding.app_index;
  task.created_at_s = now_s;
  do {
    task.length_gi = sample_exponential(rng, app.task_length_mean_gi);
  } while (!(task.length_gi > 0.0));
  task.upload_kb = app.upload_kb;
  task.download_kb = app.download_kb;
  task.d_limit_s = app.delay_tolerance_s;
  task.vm_utilization_pct = app.vm_utilization_pct;
  return task;
}

}  // namespace vcoop
