#ifndef VCOOP_RANDOM_HPP
#define VCOOP_RANDOM_HPP

#include <cstdint>
#include <optional>
#include <random>
#include <string_view>

#include "vcoop/types.hpp"

namespace vcoop {

using RandomStream = std::mt19937_64;

namespace stream_purpose {
inline constexpr std::string_view kPlacement = "placement";
inline constexpr std::string_view kWorkload = "workload";
inline constexpr std::string_view kMobility = "mobility";
}  // namespace stream_purpose

/// Seed for one (run, purpose) pair. Every argument participates, so sweep
/// cells are independent and any single cell can be replayed on its own.
/// Without a strategy the stream is shared by all strategies of that cell.
std::uint64_t derive_seed(std::uint64_t master_seed, std::optional<Strategy> strategy,
                          int n_vehicles, int rep_index, std::string_view purpose);

inline RandomStream derive_stream(std::uint64_t master_seed, std::optional<Strategy> strategy,
                                  int n_vehicles, int rep_index, std::string_view purpose) {
  return RandomStream(derive_seed(master_seed, strategy, n_vehicles, rep_index, purpose));
}

/// Exponential variate with the given mean (not rate).
inline double sample_exponential(RandomStream& rng, double mean) {
  return std::exponential_distribution<double>(1.0 / mean)(rng);
}

}  // namespace vcoop

#endif  // VCOOP_RANDOM_HPP
