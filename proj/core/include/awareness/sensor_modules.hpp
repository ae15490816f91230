#pragma once

#include <array>
#include <filesystem>
#include <string>
#include <vector>

#include "awareness/region.hpp"

namespace awareness {

// Relation between two processing modules. The configuration search honors
// dependency edges (a non-source module needs its dependency present in the
// same candidate); linkability edges are carried through but not enforced,
// and loading such a fixture produces a warning.
struct Relation {
  enum class Kind { Dependency, Linkability };

  Kind kind = Kind::Dependency;
  std::string subject;
  std::string object;

  bool operator==(const Relation&) const = default;
};

// A processing module as seen by the configuration search: what it costs,
// what performance it contributes, and which regions it can observe.
// Source modules generate data on their own and may start a configuration.
struct ModuleDescriptor {
  std::string id;
  double cost = 1.0;
  double performance = 0.0;  // +infinity means "always sufficient"
  RegionSet coverage;
  bool is_source = true;
  std::vector<Relation> relations;

  bool operator==(const ModuleDescriptor&) const = default;
};

// How a sensor module's 270° field of view splits into three 90° quadrants:
// the middle quadrant sits on the module's corner region, the two outer
// quadrants take two regions each.
struct QuadrantLayout {
  std::string module_id;
  std::array<RegionSet, 3> quadrants;  // [middle, outer_a, outer_b]

  RegionSet covered() const noexcept {
    return quadrants[0] | quadrants[1] | quadrants[2];
  }

  bool operator==(const QuadrantLayout&) const = default;
};

// Module descriptors plus matching quadrant layouts for one vehicle.
struct VehicleFixture {
  std::vector<ModuleDescriptor> modules;
  std::vector<QuadrantLayout> layouts;
  std::vector<std::string> warnings;  // non-fatal findings from validation
};

// The four-corner sensor module arrangement: FL, FR, RL, RR, each a source
// with cost 1, infinite performance, five covered regions and no relations.
VehicleFixture unicaragil_fixture();

// Loads a fixture from a JSON descriptor file. Throws ParseError for
// malformed files and ConfigError for semantically inconsistent ones.
VehicleFixture load_fixture(const std::filesystem::path& path);

// Checks ids, relation targets, source coverage and layout/coverage
// agreement. Returns warnings (e.g. ignored linkability relations).
std::vector<std::string> validate_fixture(
    const std::vector<ModuleDescriptor>& modules,
    const std::vector<QuadrantLayout>& layouts);

}  // namespace awareness
