#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "awareness/attention.hpp"
#include "awareness/config_search.hpp"
#include "awareness/quadrant_activation.hpp"
#include "awareness/sensor_modules.hpp"
#include "awareness/timeline.hpp"

namespace awareness {

// State of one 1 s cycle: the maneuver, its attention map, the configured
// candidate and the per-module quadrant activations.
struct TickRecord {
  Situation situation;
  Mlam mlam;
  Candidate candidate;
  std::vector<ModuleActivation> activations;
};

struct ModuleStats {
  std::string id;
  std::size_t active_ticks = 0;
  double uptime = 0.0;  // active ticks / total ticks
  // Mean quadrant count over active ticks; absent when the module never ran.
  std::optional<double> mean_active_quadrants;
};

struct SimulationTrace {
  std::vector<std::string> module_ids;  // layout order
  std::vector<TickRecord> ticks;

  std::size_t tick_count() const noexcept { return ticks.size(); }
};

std::vector<ModuleStats> summarize(const SimulationTrace& trace);

// Runs the per-tick pipeline build_mlam -> optimize -> apply_mlam over the
// timeline. The candidate starts empty and each cycle's result feeds the
// next cycle's hysteresis. Deterministic for identical inputs.
//
// Infeasible ticks raise InfeasibleError with the tick index prepended.
SimulationTrace run_simulation(const ManeuverTimeline& timeline,
                               std::span<const ModuleDescriptor> modules,
                               std::span<const QuadrantLayout> layouts);

}  // namespace awareness
