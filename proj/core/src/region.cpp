#include "awareness/region.hpp"

namespace awareness {

namespace {
constexpr std::array<std::string_view, kRegionCount> kRegionNames = {
    "fl", "f", "fr", "r", "br", "b", "bl", "l",
};
}  // namespace

std::string_view region_name(Region r) noexcept {
  return kRegionNames[region_index(r)];
}

std::optional<Region> region_from_name(std::string_view name) noexcept {
  for (std::size_t i = 0; i < kRegionCount; ++i) {
    if (kRegionNames[i] == name) {
      return kAllRegions[i];
    }
  }
  return std::nullopt;
}

std::vector<Region> RegionSet::regions() const {
  std::vector<Region> out;
  out.reserve(size());
  for (Region r : kAllRegions) {
    if (contains(r)) out.push_back(r);
  }
  return out;
}

std::string describe(RegionSet set) {
  std::string out;
  for (Region r : set.regions()) {
    if (!out.empty()) out += ", ";
    out += region_name(r);
  }
  return out;
}

}  // namespace awareness
