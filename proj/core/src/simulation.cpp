#include "awareness/simulation.hpp"

#include "awareness/errors.hpp"

namespace awareness {

std::vector<ModuleStats> summarize(const SimulationTrace& trace) {
  std::vector<ModuleStats> stats;
  stats.reserve(trace.module_ids.size());
  const std::size_t total = trace.ticks.size();

  for (std::size_t m = 0; m < trace.module_ids.size(); ++m) {
    ModuleStats s;
    s.id = trace.module_ids[m];
    std::size_t quadrant_sum = 0;
    for (const auto& tick : trace.ticks) {
      const auto& activation = tick.activations[m];
      if (activation.state == ModuleState::Active) {
        ++s.active_ticks;
        quadrant_sum += static_cast<std::size_t>(activation.active_quadrants);
      }
    }
    s.uptime = total == 0 ? 0.0
                          : static_cast<double>(s.active_ticks) /
                                static_cast<double>(total);
    if (s.active_ticks > 0) {
      s.mean_active_quadrants = static_cast<double>(quadrant_sum) /
                                static_cast<double>(s.active_ticks);
    }
    stats.push_back(std::move(s));
  }
  return stats;
}

SimulationTrace run_simulation(const ManeuverTimeline& timeline,
                               std::span<const ModuleDescriptor> modules,
                               std::span<const QuadrantLayout> layouts) {
  if (timeline.ticks.empty()) {
    throw ValidationError("empty timeline");
  }
  validate_fixture(std::vector<ModuleDescriptor>(modules.begin(), modules.end()),
                   std::vector<QuadrantLayout>(layouts.begin(), layouts.end()));

  SimulationTrace trace;
  trace.module_ids.reserve(layouts.size());
  for (const auto& layout : layouts) {
    trace.module_ids.push_back(layout.module_id);
  }
  trace.ticks.reserve(timeline.ticks.size());

  Candidate current;  // vehicle starts from standby
  for (std::size_t i = 0; i < timeline.ticks.size(); ++i) {
    TickRecord record;
    record.situation = timeline.ticks[i];
    record.mlam = build_mlam(record.situation);
    try {
      record.candidate = optimize(record.mlam, modules, current);
    } catch (const InfeasibleError& e) {
      throw InfeasibleError("tick " + std::to_string(i) + ": " + e.what(),
                            e.uncovered_regions());
    }
    record.activations = apply_mlam(record.candidate, record.mlam, layouts);
    current = record.candidate;
    trace.ticks.push_back(std::move(record));
  }
  return trace;
}

}  // namespace awareness
