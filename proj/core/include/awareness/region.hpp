#pragma once

#include <array>
#include <cstdint>
#include <initializer_list>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace awareness {

// The eight fixed zones around the vehicle. Enumerator order defines the
// canonical serialization order (fl, f, fr, r, br, b, bl, l).
enum class Region : std::uint8_t {
  Fl = 0,
  F = 1,
  Fr = 2,
  R = 3,
  Br = 4,
  B = 5,
  Bl = 6,
  L = 7,
};

inline constexpr std::size_t kRegionCount = 8;

inline constexpr std::array<Region, kRegionCount> kAllRegions = {
    Region::Fl, Region::F,  Region::Fr, Region::R,
    Region::Br, Region::B,  Region::Bl, Region::L,
};

constexpr std::size_t region_index(Region r) noexcept {
  return static_cast<std::size_t>(r);
}

std::string_view region_name(Region r) noexcept;
std::optional<Region> region_from_name(std::string_view name) noexcept;

// Set of regions as an 8-bit mask. Value type, cheap to copy.
class RegionSet {
 public:
  constexpr RegionSet() = default;
  constexpr RegionSet(std::initializer_list<Region> regions) {
    for (Region r : regions) insert(r);
  }

  static constexpr RegionSet all() {
    RegionSet s;
    s.bits_ = 0xff;
    return s;
  }

  constexpr bool contains(Region r) const noexcept {
    return (bits_ & bit(r)) != 0;
  }
  constexpr bool contains_all(RegionSet other) const noexcept {
    return (bits_ & other.bits_) == other.bits_;
  }
  constexpr bool intersects(RegionSet other) const noexcept {
    return (bits_ & other.bits_) != 0;
  }

  constexpr RegionSet& insert(Region r) noexcept {
    bits_ |= bit(r);
    return *this;
  }
  constexpr RegionSet& remove(Region r) noexcept {
    bits_ &= static_cast<std::uint8_t>(~bit(r));
    return *this;
  }

  constexpr bool empty() const noexcept { return bits_ == 0; }
  constexpr std::size_t size() const noexcept {
    std::size_t n = 0;
    for (Region r : kAllRegions) {
      if (contains(r)) ++n;
    }
    return n;
  }

  std::vector<Region> regions() const;

  friend constexpr RegionSet operator|(RegionSet a, RegionSet b) noexcept {
    RegionSet s;
    s.bits_ = static_cast<std::uint8_t>(a.bits_ | b.bits_);
    return s;
  }
  friend constexpr RegionSet operator&(RegionSet a, RegionSet b) noexcept {
    RegionSet s;
    s.bits_ = static_cast<std::uint8_t>(a.bits_ & b.bits_);
    return s;
  }
  constexpr RegionSet& operator|=(RegionSet other) noexcept {
    bits_ |= other.bits_;
    return *this;
  }

  constexpr bool operator==(const RegionSet&) const = default;

 private:
  static constexpr std::uint8_t bit(Region r) noexcept {
    return static_cast<std::uint8_t>(1u << region_index(r));
  }

  std::uint8_t bits_ = 0;
};

// Region names joined with ", " in canonical order, for diagnostics.
std::string describe(RegionSet set);

}  // namespace awareness
