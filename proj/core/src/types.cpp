#include "vcoop/types.hpp"

namespace vcoop {

std::string_view to_string(Strategy s) {
  switch (s) {
    case Strategy::kNcs:
      return "ncs";
    case Strategy::kAirs:
      return "airs";
    case Strategy::kPirs:
      return "pirs";
  }
  return "unknown";
}

std::optional<Strategy> parse_strategy(std::string_view name) {
  if (name == "ncs" || name == "NCS") return Strategy::kNcs;
  if (name == "airs" || name == "AIRS") return Strategy::kAirs;
  if (name == "pirs" || name == "PIRS") return Strategy::kPirs;
  return std::nullopt;
}

}  // namespace vcoop
