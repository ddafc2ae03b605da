#include "vcoop/random.hpp"

namespace vcoop {
namespace {

// splitmix64 finalizer; a bijection on 64-bit words with full avalanche.
std::uint64_t mix(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::uint64_t fnv1a(std::string_view text) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : text) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

}  // namespace

std::uint64_t derive_seed(std::uint64_t master_seed, std::optional<Strategy> strategy,
                          int n_vehicles, int rep_index, std::string_view purpose) {
  constexpr std::uint64_t kShared = 0xffu;
  std::uint64_t h = mix(master_seed);
  h = mix(h ^ (strategy ? static_cast<std::uint64_t>(*strategy) : kShared));
  h = mix(h ^ static_cast<std::uint64_t>(static_cast<std::uint32_t>(n_vehicles)));
  h = mix(h ^ static_cast<std::uint64_t>(static_cast<std::uint32_t>(rep_index)));
  return mix(h ^ fnv1a(purpose));
}

}  // namespace vcoop
