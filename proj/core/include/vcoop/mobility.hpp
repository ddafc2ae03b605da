#ifndef VCOOP_MOBILITY_HPP
#define VCOOP_MOBILITY_HPP

#include <utility>
#include <vector>

#include "vcoop/config.hpp"
#include "vcoop/random.hpp"
#include "vcoop/types.hpp"

namespace vcoop {

/// An access-point coverage area. Each one hosts a single edge server.
struct Location {
  LocationId id = 0;
  int type = 1;  ///< 1-based location type from the mobility config
  double dwell_mean_s = 0.0;
};

/// Locations laid out on a ring in configuration order; a vehicle leaving one
/// area enters one of its two ring neighbours.
class LocationMap {
 public:
  explicit LocationMap(const MobilityConfig& config);

  std::size_t size() const { return locations_.size(); }
  const Location& at(LocationId id) const { return locations_.at(id); }
  const std::vector<Location>& locations() const { return locations_; }

  /// (previous, next) on the ring. Both are the same id on a two-location map.
  std::pair<LocationId, LocationId> neighbors(LocationId id) const;

 private:
  std::vector<Location> locations_;
};

/// Where a vehicle currently is and until when it stays there.
struct Stay {
  VehicleId vehicle_id = 0;
  LocationId location_id = 0;
  double dwell_until_s = 0.0;
};

/// Exponential dwell with the location's mean.
double sample_dwell(const Location& location, RandomStream& rng);

/// Uniform initial location for each vehicle, with its first dwell drawn.
std::vector<Stay> initial_placement(int n_vehicles, const LocationMap& map, RandomStream& rng,
                                    double now_s = 0.0);

/// Moves to a ring neighbour (uniformly between the two) and draws a new dwell.
Stay relocate(const Stay& current, const LocationMap& map, RandomStream& rng, double now_s);

}  // namespace vcoop

#endif  // VCOOP_MOBILITY_HPP
