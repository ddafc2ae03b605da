#include "vcoop/mobility.hpp"

#include <stdexcept>

namespace vcoop {

LocationMap::LocationMap(const MobilityConfig& config) {
  if (config.location_counts.size() != config.dwell_mean_s.size()) {
    throw std::invalid_argument("location counts and dwell means differ in length");
  }
  for (std::size_t type = 0; type < config.location_counts.size(); ++type) {
    for (int k = 0; k < config.location_counts[type]; ++k) {
      locations_.push_back(Location{static_cast<LocationId>(locations_.size()),
                                    static_cast<int>(type) + 1, config.dwell_mean_s[type]});
    }
  }
  if (locations_.size() < 2) throw std::invalid_argument("a map needs at least 2 locations");
}

std::pair<LocationId, LocationId> LocationMap::neighbors(LocationId id) const {
  const auto n = static_cast<LocationId>(locations_.size());
  return {(id + n - 1) % n, (id + 1) % n};
}

double sample_dwell(const Location& location, RandomStream& rng) {
  // A zero draw would schedule the next move at the current instant.
  double d = 0.0;
  while (d <= 0.0) d = sample_exponential(rng, location.dwell_mean_s);
  return d;
}

std::vector<Stay> initial_placement(int n_vehicles, const LocationMap& map, RandomStream& rng,
                                    double now_s) {
  std::uniform_int_distribution<LocationId> pick(0, static_cast<LocationId>(map.size() - 1));
  std::vector<Stay> stays;
  stays.reserve(static_cast<std::size_t>(n_vehicles));
  for (int v = 0; v < n_vehicles; ++v) {
    const LocationId loc = pick(rng);
    stays.push_back(Stay{static_cast<VehicleId>(v), loc, now_s + sample_dwell(map.at(loc), rng)});
  }
  return stays;
}

Stay relocate(const Stay& current, const LocationMap& map, RandomStream& rng, double now_s) {
  const auto [prev, next] = map.neighbors(current.location_id);
  const bool forward = std::bernoulli_distribution(0.5)(rng);
  const LocationId to = forward ? next : prev;
  return Stay{current.vehicle_id, to, now_s + sample_dwell(map.at(to), rng)};
}

}  // namespace vcoop
