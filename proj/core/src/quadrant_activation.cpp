#include "awareness/quadrant_activation.hpp"

#include "awareness/errors.hpp"

namespace awareness {

ModuleActivation make_activation(std::string module_id, int active_quadrants) {
  if (active_quadrants < 0 || active_quadrants > 3) {
    throw ValidationError("active quadrant count must be within [0, 3]");
  }
  ModuleActivation a;
  a.module_id = std::move(module_id);
  a.active_quadrants = active_quadrants;
  a.state = active_quadrants == 0 ? ModuleState::Standby : ModuleState::Active;
  return a;
}

std::vector<ModuleActivation> apply_mlam(const Candidate& candidate,
                                         const Mlam& mlam,
                                         std::span<const QuadrantLayout> layouts) {
  const RegionSet required = mlam.required_regions();

  std::vector<ModuleActivation> activations;
  activations.reserve(layouts.size());

  RegionSet observed;
  for (const auto& layout : layouts) {
    int quadrants = 0;
    if (candidate.contains(layout.module_id)) {
      for (const RegionSet& quadrant : layout.quadrants) {
        if (quadrant.intersects(required)) {
          ++quadrants;
          observed |= quadrant;
        }
      }
    }
    activations.push_back(make_activation(layout.module_id, quadrants));
  }

  for (const auto& id : candidate.members()) {
    bool has_layout = false;
    for (const auto& layout : layouts) {
      if (layout.module_id == id) {
        has_layout = true;
        break;
      }
    }
    if (!has_layout) {
      throw ConfigError("candidate member '" + id + "' has no quadrant layout");
    }
  }

  if (!observed.contains_all(required)) {
    RegionSet missing;
    for (Region r : required.regions()) {
      if (!observed.contains(r)) missing.insert(r);
    }
    throw InternalError("candidate " + describe(candidate) +
                        " leaves required regions unobserved: {" +
                        describe(missing) + "}");
  }

  return activations;
}

}  // namespace awareness
