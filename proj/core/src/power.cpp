#include "awareness/power.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "awareness/errors.hpp"

namespace awareness {

namespace {
constexpr double kSecondsPerHour = 3600.0;
constexpr double kWattsPerKilowatt = 1000.0;
}  // namespace

void PowerModel::validate() const {
  if (!(p_full_w > 0.0) || !std::isfinite(p_full_w)) {
    throw ValidationError("power model needs p_full_w > 0");
  }
  if (!(ratio_standby > 0.0) || !(ratio_standby < 1.0)) {
    throw ValidationError("power model needs 0 < ratio_standby < 1");
  }
  if (!(ratio_partial > 1.0) || !std::isfinite(ratio_partial)) {
    throw ValidationError("power model needs ratio_partial > 1");
  }
}

PowerModel calibrate_from_trip(double baseline_kwh, double trip_duration_s,
                               int n_modules) {
  if (!(baseline_kwh > 0.0)) {
    throw ValidationError("baseline energy must be positive");
  }
  if (!(trip_duration_s > 0.0)) {
    throw ValidationError("trip duration must be positive");
  }
  if (n_modules <= 0) {
    throw ValidationError("module count must be positive");
  }
  PowerModel model;
  const double duration_h = trip_duration_s / kSecondsPerHour;
  model.p_full_w = baseline_kwh * kWattsPerKilowatt /
                   (static_cast<double>(n_modules) * duration_h);
  model.validate();
  return model;
}

double module_power_w(const PowerModel& model, int active_quadrants) {
  if (active_quadrants <= 0) return model.ratio_standby * model.p_full_w;
  if (active_quadrants < 3) return model.ratio_partial * model.p_full_w;
  return model.p_full_w;
}

double module_power_w(const PowerModel& model, const ModuleActivation& activation) {
  return module_power_w(model, activation.active_quadrants);
}

PowerSampleSet load_power_samples(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) {
    throw ParseError(path.string(), 0, "cannot open file");
  }

  PowerSampleSet set;
  std::string line;
  std::size_t line_no = 0;
  bool header_seen = false;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (!header_seen) {
      if (line != "timestamp_s,active_quadrants,watts") {
        throw ParseError(path.string(), line_no,
                         "expected header 'timestamp_s,active_quadrants,watts'");
      }
      header_seen = true;
      continue;
    }
    std::stringstream fields(line);
    std::string ts, quadrants, watts;
    if (!std::getline(fields, ts, ',') || !std::getline(fields, quadrants, ',') ||
        !std::getline(fields, watts)) {
      throw ParseError(path.string(), line_no, "expected 3 comma-separated fields");
    }
    PowerSample sample;
    try {
      sample.timestamp_s = std::stod(ts);
      sample.active_quadrants = std::stoi(quadrants);
      sample.watts = std::stod(watts);
    } catch (const std::exception&) {
      throw ParseError(path.string(), line_no, "malformed numeric field");
    }
    if (sample.active_quadrants < 0 || sample.active_quadrants > 3) {
      throw ParseError(path.string(), line_no,
                       "active_quadrants must be within [0, 3]");
    }
    if (!(sample.watts > 0.0)) {
      throw ParseError(path.string(), line_no, "watts must be positive");
    }
    set.samples.push_back(sample);
  }
  if (!header_seen) {
    throw ParseError(path.string(), 0, "empty sample file");
  }
  return set;
}

namespace {

double quantile_sorted(const std::vector<double>& sorted, double q) {
  const std::size_t n = sorted.size();
  if (n == 1) return sorted[0];
  const double pos = q * static_cast<double>(n - 1);
  const std::size_t lo = static_cast<std::size_t>(pos);
  const double frac = pos - static_cast<double>(lo);
  if (lo + 1 >= n) return sorted[n - 1];
  return sorted[lo] + frac * (sorted[lo + 1] - sorted[lo]);
}

}  // namespace

std::map<int, GroupStats> summarize_samples(const PowerSampleSet& samples) {
  std::map<int, std::vector<double>> groups;
  for (const auto& sample : samples.samples) {
    groups[sample.active_quadrants].push_back(sample.watts);
  }

  std::map<int, GroupStats> stats;
  for (auto& [quadrants, values] : groups) {
    std::sort(values.begin(), values.end());
    GroupStats g;
    g.count = values.size();
    g.median = quantile_sorted(values, 0.5);
    g.q1 = quantile_sorted(values, 0.25);
    g.q3 = quantile_sorted(values, 0.75);
    stats[quadrants] = g;
  }
  return stats;
}

PowerModel model_from_samples(const PowerSampleSet& samples) {
  const auto stats = summarize_samples(samples);
  const auto full = stats.find(3);
  if (full == stats.end()) {
    throw ValidationError(
        "sample set has no 3-quadrant group to anchor the model");
  }

  PowerModel model;
  model.p_full_w = full->second.median;

  std::vector<double> partial;
  for (const auto& sample : samples.samples) {
    if (sample.active_quadrants == 1 || sample.active_quadrants == 2) {
      partial.push_back(sample.watts);
    }
  }
  if (!partial.empty()) {
    std::sort(partial.begin(), partial.end());
    model.ratio_partial = quantile_sorted(partial, 0.5) / model.p_full_w;
  }
  if (const auto standby = stats.find(0); standby != stats.end()) {
    model.ratio_standby = standby->second.median / model.p_full_w;
  }
  model.validate();
  return model;
}

double integrate_energy_kwh(const SimulationTrace& trace, const PowerModel& model) {
  if (trace.ticks.empty()) {
    throw ValidationError("cannot integrate energy over an empty trace");
  }
  model.validate();
  double joules = 0.0;
  for (const auto& tick : trace.ticks) {
    for (const auto& activation : tick.activations) {
      joules += module_power_w(model, activation) * ManeuverTimeline::kTickPeriodS;
    }
  }
  return joules / (kSecondsPerHour * kWattsPerKilowatt);
}

namespace {

double checked_reduction(double baseline_kwh, double aware_kwh) {
  double reduction = 1.0 - aware_kwh / baseline_kwh;
  if (reduction < 0.0 && reduction > -1e-9) reduction = 0.0;  // fp noise
  if (reduction < 0.0 || reduction >= 1.0) {
    throw ValidationError("aware energy must not exceed the baseline");
  }
  return reduction;
}

}  // namespace

EnergyReport trip_report(const SimulationTrace& trace, const PowerModel& model) {
  EnergyReport report;
  report.horizon = "trip";
  report.model = model;
  report.n_modules = static_cast<int>(trace.module_ids.size());
  report.trip_duration_s =
      static_cast<double>(trace.tick_count()) * ManeuverTimeline::kTickPeriodS;
  report.trips = 1.0;
  report.baseline_kwh = static_cast<double>(report.n_modules) * model.p_full_w *
                        report.trip_duration_s /
                        (kSecondsPerHour * kWattsPerKilowatt);
  report.aware_kwh = integrate_energy_kwh(trace, model);
  report.reduction = checked_reduction(report.baseline_kwh, report.aware_kwh);
  return report;
}

EnergyReport day_scenario(double trip_kwh_aware, double trip_duration_s,
                          double boarding_s, double shift_s,
                          const PowerModel& model, bool whole_trips,
                          int n_modules) {
  model.validate();
  if (!(trip_kwh_aware > 0.0)) {
    throw ValidationError("trip energy must be positive");
  }
  if (!(trip_duration_s > 0.0) || boarding_s < 0.0 || !(shift_s > 0.0)) {
    throw ValidationError("durations must be positive (boarding may be zero)");
  }
  if (n_modules <= 0) {
    throw ValidationError("module count must be positive");
  }

  double trips = shift_s / (trip_duration_s + boarding_s);
  if (whole_trips) trips = std::floor(trips);

  const double driving_s = trips * trip_duration_s;
  const double standby_s = shift_s - driving_s;  // boarding and idle remainder

  const double standby_kw = static_cast<double>(n_modules) * model.p_full_w *
                            model.ratio_standby / kWattsPerKilowatt;
  const double baseline_kw =
      static_cast<double>(n_modules) * model.p_full_w / kWattsPerKilowatt;

  EnergyReport report;
  report.horizon = "day";
  report.model = model;
  report.n_modules = n_modules;
  report.trip_duration_s = trip_duration_s;
  report.boarding_s = boarding_s;
  report.shift_s = shift_s;
  report.trips = trips;
  report.baseline_kwh = baseline_kw * shift_s / kSecondsPerHour;
  report.aware_kwh =
      trips * trip_kwh_aware + standby_kw * standby_s / kSecondsPerHour;
  report.reduction = checked_reduction(report.baseline_kwh, report.aware_kwh);
  return report;
}

namespace {

using ordered_json = nlohmann::ordered_json;

ordered_json model_json(const PowerModel& model) {
  ordered_json j;
  j["p_full_w"] = model.p_full_w;
  j["ratio_partial"] = model.ratio_partial;
  j["ratio_standby"] = model.ratio_standby;
  return j;
}

}  // namespace

std::string power_model_to_json(const PowerModel& model) {
  ordered_json j = model_json(model);
  j["spec_version"] = 1;
  return j.dump(2) + "\n";
}

std::string energy_report_to_json(const EnergyReport& report) {
  ordered_json j;
  j["spec_version"] = 1;
  j["horizon"] = report.horizon;
  j["baseline_kwh"] = report.baseline_kwh;
  j["aware_kwh"] = report.aware_kwh;
  j["reduction"] = report.reduction;
  j["parameters"]["trip_duration_s"] = report.trip_duration_s;
  j["parameters"]["boarding_s"] = report.boarding_s;
  j["parameters"]["shift_s"] = report.shift_s;
  j["parameters"]["trips"] = report.trips;
  j["parameters"]["n_modules"] = report.n_modules;
  j["model"] = model_json(report.model);
  return j.dump(2) + "\n";
}

EnergyReport load_energy_report(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) {
    throw ParseError(path.string(), 0, "cannot open file");
  }
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(path.string(), 0, e.what());
  }
  try {
    EnergyReport report;
    report.horizon = doc.at("horizon").get<std::string>();
    report.baseline_kwh = doc.at("baseline_kwh").get<double>();
    report.aware_kwh = doc.at("aware_kwh").get<double>();
    report.reduction = doc.at("reduction").get<double>();
    const auto& params = doc.at("parameters");
    report.trip_duration_s = params.at("trip_duration_s").get<double>();
    report.boarding_s = params.value("boarding_s", 0.0);
    report.shift_s = params.value("shift_s", 0.0);
    report.trips = params.value("trips", 1.0);
    report.n_modules = params.value("n_modules", 4);
    const auto& model = doc.at("model");
    report.model.p_full_w = model.at("p_full_w").get<double>();
    report.model.ratio_partial = model.at("ratio_partial").get<double>();
    report.model.ratio_standby = model.at("ratio_standby").get<double>();
    report.model.validate();
    return report;
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(path.string(), 0, e.what());
  }
}

}  // namespace awareness
