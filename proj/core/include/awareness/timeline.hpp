#pragma once

#include <array>
#include <filesystem>
#include <string>
#include <vector>

#include "awareness/situation.hpp"

namespace awareness {

// One stretch of constant maneuver, expanded to 1 Hz ticks.
struct RouteSegment {
  Situation situation;
  int duration_s = 0;

  bool operator==(const RouteSegment&) const = default;
};

// Maneuver sequence sampled at 1 Hz. One tick, one second, one situation.
struct ManeuverTimeline {
  static constexpr int kTickPeriodS = 1;

  std::string name;
  std::vector<Situation> ticks;

  std::size_t tick_count() const noexcept { return ticks.size(); }
  double duration_s() const noexcept {
    return static_cast<double>(ticks.size()) * kTickPeriodS;
  }

  bool operator==(const ManeuverTimeline&) const = default;
};

// Expands segments into ticks. Throws ValidationError on non-positive
// durations.
ManeuverTimeline expand_segments(std::string name,
                                 const std::vector<RouteSegment>& segments);

// Reads a timeline file. The canonical form lists segments
// ({"directional", "lateral", "duration_s"}); a raw 1 Hz tick list is also
// accepted. Throws ParseError with a location for malformed input.
ManeuverTimeline load_timeline(const std::filesystem::path& path);

// Writes a segment-form timeline file. Output is byte-stable for identical
// input.
void save_route(const std::filesystem::path& path, const std::string& name,
                const std::vector<RouteSegment>& segments);

// The hand-authored shuttle route: 555 s of driving between two sideways
// parking maneuvers, forward stretches with embedded turns and lane
// changes, and contiguous maneuvering blocks. Deterministic.
std::vector<RouteSegment> reference_route_segments();
ManeuverTimeline generate_reference_route();

// Tick-count shares per maneuver. Each group sums to 1.
struct DistributionReport {
  std::array<double, kDirectionalCount> directional_share{};
  std::array<double, kLateralCount> lateral_share{};

  double share(Directional d) const noexcept {
    return directional_share[static_cast<std::size_t>(d)];
  }
  double share(Lateral l) const noexcept {
    return lateral_share[static_cast<std::size_t>(l)];
  }
};

// Throws ValidationError on an empty timeline.
DistributionReport maneuver_distribution(const ManeuverTimeline& timeline);

}  // namespace awareness
