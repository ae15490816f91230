#pragma once

#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include "awareness/quadrant_activation.hpp"
#include "awareness/simulation.hpp"

namespace awareness {

// Electrical power of one sensor module as a function of its active
// quadrant count. Partial processing (1 or 2 quadrants) costs slightly more
// than full processing because the detection networks pad reduced inputs
// back to their fixed size; standby drops consumption sharply.
struct PowerModel {
  double p_full_w = 0.0;        // all three quadrants active
  double ratio_partial = 1.023; // 1 or 2 quadrants, relative to p_full_w
  double ratio_standby = 0.56;  // 0 quadrants, relative to p_full_w

  void validate() const;  // throws ValidationError
};

// p_full such that n_modules fully active for the whole trip consume the
// given energy. Default ratios attached.
PowerModel calibrate_from_trip(double baseline_kwh, double trip_duration_s,
                               int n_modules);

double module_power_w(const PowerModel& model, const ModuleActivation& activation);
double module_power_w(const PowerModel& model, int active_quadrants);

// Measured samples, nominally 100 per second, labeled with the quadrant
// count the module was configured to while recording.
struct PowerSample {
  double timestamp_s = 0.0;
  int active_quadrants = 0;
  double watts = 0.0;
};

struct PowerSampleSet {
  std::vector<PowerSample> samples;
};

// CSV with header "timestamp_s,active_quadrants,watts". Throws ParseError
// with the offending line number.
PowerSampleSet load_power_samples(const std::filesystem::path& path);

struct GroupStats {
  std::size_t count = 0;
  double median = 0.0;
  double q1 = 0.0;
  double q3 = 0.0;
};

// Order statistics per quadrant count. Median is the mid-ordinal value
// (mean of the two central values for even counts); quartiles interpolate
// linearly between order statistics. Empty groups are omitted.
std::map<int, GroupStats> summarize_samples(const PowerSampleSet& samples);

// Builds a model from sample medians: p_full from the 3-quadrant group,
// ratio_partial from the pooled 1- and 2-quadrant groups, ratio_standby
// from the 0-quadrant group. Missing ratio groups keep the defaults; a
// missing 3-quadrant group is an error.
PowerModel model_from_samples(const PowerSampleSet& samples);

// Total energy of the trace: every module contributes each tick, standby
// modules at standby power.
double integrate_energy_kwh(const SimulationTrace& trace, const PowerModel& model);

struct EnergyReport {
  std::string horizon;  // "trip" or "day"
  double baseline_kwh = 0.0;
  double aware_kwh = 0.0;
  double reduction = 0.0;  // 1 - aware/baseline
  double trip_duration_s = 0.0;
  double boarding_s = 0.0;
  double shift_s = 0.0;
  double trips = 1.0;
  int n_modules = 4;
  PowerModel model;
};

// Trace energy against the all-modules-fully-active baseline.
EnergyReport trip_report(const SimulationTrace& trace, const PowerModel& model);

// Scales one trip to a working day: back-to-back trips separated by
// boarding pauses with all modules in standby, against a baseline that
// keeps every module fully active for the entire shift. Fractional trips
// by default; `whole_trips` floors the count.
EnergyReport day_scenario(double trip_kwh_aware, double trip_duration_s,
                          double boarding_s, double shift_s,
                          const PowerModel& model, bool whole_trips = false,
                          int n_modules = 4);

// JSON round trip for reports (stable field order, schema tag included).
std::string energy_report_to_json(const EnergyReport& report);
EnergyReport load_energy_report(const std::filesystem::path& path);
std::string power_model_to_json(const PowerModel& model);

}  // namespace awareness
