#ifndef VCOOP_TYPES_HPP
#define VCOOP_TYPES_HPP

#include <cstdint>
#include <optional>
#include <string_view>

namespace vcoop {

using VehicleId = std::uint32_t;
using TaskId = std::uint64_t;
using LocationId = std::uint32_t;

/// Resource-sharing strategy in the vehicle layer.
enum class Strategy {
  kNcs,   ///< no cooperation: local, then edge/cloud
  kAirs,  ///< helpers hand over all spare capacity
  kPirs,  ///< helpers hand over a bargained share of their spare capacity
};

std::string_view to_string(Strategy s);
std::optional<Strategy> parse_strategy(std::string_view name);

}  // namespace vcoop

#endif  // VCOOP_TYPES_HPP
