#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

namespace awareness {

enum class Directional : std::uint8_t {
  Forward,
  Backward,
  Left,
  Right,
  Maneuvering,
  Standby,
};

enum class Lateral : std::uint8_t {
  TurnLeft,
  TurnRight,
  ChangeLeft,
  ChangeRight,
  None,
};

inline constexpr std::size_t kDirectionalCount = 6;
inline constexpr std::size_t kLateralCount = 5;

std::string_view directional_name(Directional d) noexcept;
std::string_view lateral_name(Lateral l) noexcept;
std::optional<Directional> directional_from_name(std::string_view name) noexcept;
std::optional<Lateral> lateral_from_name(std::string_view name) noexcept;

// Lateral maneuvers only combine with forward/backward driving. Sideways
// (left/right), maneuvering and standby carry no lateral component.
bool is_valid_maneuver(Directional d, Lateral l) noexcept;

// A (directional, lateral) maneuver tuple. The constructor enforces the
// combination rule, so a Situation value is valid by construction.
class Situation {
 public:
  constexpr Situation() = default;  // (standby, none)
  Situation(Directional d, Lateral l);  // throws ValidationError

  constexpr Directional directional() const noexcept { return directional_; }
  constexpr Lateral lateral() const noexcept { return lateral_; }

  constexpr bool operator==(const Situation&) const = default;

 private:
  Directional directional_ = Directional::Standby;
  Lateral lateral_ = Lateral::None;
};

// "(forward, turn_left)" style rendering for diagnostics and traces.
std::string describe(const Situation& s);

}  // namespace awareness
