#include "awareness/situation.hpp"

#include <array>

#include "awareness/errors.hpp"

namespace awareness {

namespace {
constexpr std::array<std::string_view, kDirectionalCount> kDirectionalNames = {
    "forward", "backward", "left", "right", "maneuvering", "standby",
};
constexpr std::array<std::string_view, kLateralCount> kLateralNames = {
    "turn_left", "turn_right", "change_left", "change_right", "none",
};
}  // namespace

std::string_view directional_name(Directional d) noexcept {
  return kDirectionalNames[static_cast<std::size_t>(d)];
}

std::string_view lateral_name(Lateral l) noexcept {
  return kLateralNames[static_cast<std::size_t>(l)];
}

std::optional<Directional> directional_from_name(std::string_view name) noexcept {
  for (std::size_t i = 0; i < kDirectionalCount; ++i) {
    if (kDirectionalNames[i] == name) return static_cast<Directional>(i);
  }
  return std::nullopt;
}

std::optional<Lateral> lateral_from_name(std::string_view name) noexcept {
  for (std::size_t i = 0; i < kLateralCount; ++i) {
    if (kLateralNames[i] == name) return static_cast<Lateral>(i);
  }
  return std::nullopt;
}

bool is_valid_maneuver(Directional d, Lateral l) noexcept {
  if (l == Lateral::None) return true;
  return d == Directional::Forward || d == Directional::Backward;
}

Situation::Situation(Directional d, Lateral l) : directional_(d), lateral_(l) {
  if (!is_valid_maneuver(d, l)) {
    throw ValidationError("lateral maneuver '" + std::string(lateral_name(l)) +
                          "' cannot be combined with directional '" +
                          std::string(directional_name(d)) + "'");
  }
}

std::string describe(const Situation& s) {
  return "(" + std::string(directional_name(s.directional())) + ", " +
         std::string(lateral_name(s.lateral())) + ")";
}

}  // namespace awareness
