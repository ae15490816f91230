#pragma once

#include <span>
#include <string>
#include <vector>

#include "awareness/attention.hpp"
#include "awareness/config_search.hpp"
#include "awareness/sensor_modules.hpp"

namespace awareness {

enum class ModuleState { Standby, Active };

// Per-module activation for one cycle: standby with zero quadrants, or
// active with one to three of its 90° quadrants processing data.
struct ModuleActivation {
  std::string module_id;
  ModuleState state = ModuleState::Standby;
  int active_quadrants = 0;

  bool operator==(const ModuleActivation&) const = default;
};

ModuleActivation make_activation(std::string module_id, int active_quadrants);

// Projects the attention map onto the candidate's quadrant layouts: a
// quadrant is active iff it overlaps a required region. Each configured
// module applies the map independently; a quadrant stays on even if another
// module already observes its regions. Modules outside the candidate are
// reported in standby. Returns one entry per layout, in layout order.
//
// Throws InternalError when the candidate's active quadrants leave a
// required region unobserved (solver/application mismatch) and ConfigError
// when a candidate member has no layout.
std::vector<ModuleActivation> apply_mlam(const Candidate& candidate,
                                         const Mlam& mlam,
                                         std::span<const QuadrantLayout> layouts);

}  // namespace awareness
