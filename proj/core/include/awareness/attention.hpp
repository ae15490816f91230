#pragma once

#include <array>
#include <cstdint>
#include <string_view>
#include <vector>

#include "awareness/region.hpp"
#include "awareness/situation.hpp"

namespace awareness {

// The three relevance-defining layers. Directional intention follows the
// driving direction, lateral intention follows turns and lane changes, and
// the maneuvering layer demands full surround attention.
enum class AttentionLayer : std::uint8_t {
  DirectionalIntention,
  LateralIntention,
  Maneuvering,
};

std::string_view attention_layer_name(AttentionLayer layer) noexcept;

// Multi-layer attention map: per-region performance requirements obtained by
// summing the active layers. With the three layers above, entries are 0, 1
// or 2 (2 where directional and lateral intention overlap).
class Mlam {
 public:
  constexpr int at(Region r) const noexcept { return req_[region_index(r)]; }
  constexpr void set(Region r, int requirement) noexcept {
    req_[region_index(r)] = requirement;
  }
  constexpr void add(Region r, int requirement) noexcept {
    req_[region_index(r)] += requirement;
  }

  RegionSet required_regions() const noexcept {
    RegionSet set;
    for (Region r : kAllRegions) {
      if (at(r) > 0) set.insert(r);
    }
    return set;
  }

  int max_requirement() const noexcept {
    int m = 0;
    for (int v : req_) m = v > m ? v : m;
    return m;
  }

  constexpr bool operator==(const Mlam&) const = default;

 private:
  std::array<int, kRegionCount> req_{};
};

// Layer subset activated by a maneuver: directional intention for any
// driving direction, maneuvering for the maneuvering state, lateral
// intention additionally whenever a lateral maneuver is present. Standby
// activates nothing.
std::vector<AttentionLayer> activate_layers(const Situation& situation);

// Regions a layer assigns requirement 1 to under the given situation.
// Throws ContractError when the layer is not active for the situation.
RegionSet layer_regions(AttentionLayer layer, const Situation& situation);

// Sum of the active layers' per-region requirements.
Mlam build_mlam(const Situation& situation);

// Fixed-order 8-key JSON object, e.g. {"fl":1,"f":1,"fr":1,"r":0,...}.
// Absent keys on input count as requirement 0.
std::string mlam_to_json(const Mlam& mlam);
Mlam mlam_from_json(const std::string& text);

}  // namespace awareness
