// awareness-sim: maneuver-aware sensor module configuration and energy
// simulator for a four-corner sensor vehicle.
//
// Subcommands: simulate, day-report, generate-route, calibrate.
// Exit codes: 0 success, 2 usage error, 3 input/parse error, 4 infeasible.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "awareness/attention.hpp"
#include "awareness/config_search.hpp"
#include "awareness/errors.hpp"
#include "awareness/power.hpp"
#include "awareness/sensor_modules.hpp"
#include "awareness/simulation.hpp"
#include "awareness/timeline.hpp"

namespace {

namespace fs = std::filesystem;
using nlohmann::ordered_json;

constexpr int kExitOk = 0;
constexpr int kExitUsage = 2;
constexpr int kExitInput = 3;
constexpr int kExitInfeasible = 4;

int diagnose(const std::string& code, const std::string& message, int exit_code) {
  std::cerr << "error: " << code << ": " << message << "\n";
  return exit_code;
}

std::string fmt(double value, int precision) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.*f", precision, value);
  return buf;
}

double parse_duration_s(const std::string& text) {
  static const std::vector<std::pair<std::string, double>> kUnits = {
      {"min", 60.0}, {"h", 3600.0}, {"s", 1.0}, {"m", 60.0}};
  std::string body = text;
  double factor = 1.0;
  for (const auto& [suffix, unit] : kUnits) {
    if (body.size() > suffix.size() &&
        body.compare(body.size() - suffix.size(), suffix.size(), suffix) == 0) {
      body = body.substr(0, body.size() - suffix.size());
      factor = unit;
      break;
    }
  }
  std::size_t used = 0;
  double value = 0.0;
  try {
    value = std::stod(body, &used);
  } catch (const std::exception&) {
    throw awareness::ValidationError("cannot parse duration '" + text + "'");
  }
  if (used != body.size()) {
    throw awareness::ValidationError("cannot parse duration '" + text + "'");
  }
  return value * factor;
}

double parse_energy_kwh(const std::string& text) {
  std::string lower = text;
  for (char& c : lower) c = static_cast<char>(std::tolower(c));
  double factor = 1.0;
  std::string body = lower;
  if (lower.size() > 3 && lower.compare(lower.size() - 3, 3, "kwh") == 0) {
    body = lower.substr(0, lower.size() - 3);
  } else if (lower.size() > 2 && lower.compare(lower.size() - 2, 2, "wh") == 0) {
    body = lower.substr(0, lower.size() - 2);
    factor = 1e-3;
  }
  std::size_t used = 0;
  double value = 0.0;
  try {
    value = std::stod(body, &used);
  } catch (const std::exception&) {
    throw awareness::ValidationError("cannot parse energy '" + text + "'");
  }
  if (used != body.size()) {
    throw awareness::ValidationError("cannot parse energy '" + text + "'");
  }
  return value * factor;
}

struct Calibration {
  double baseline_kwh = 0.0;
  double trip_duration_s = 0.0;
  std::optional<int> n_modules;
};

// "--calibrate 0.171kWh,555s[,4]"
Calibration parse_calibration(const std::string& text) {
  std::vector<std::string> parts;
  std::string part;
  std::stringstream stream(text);
  while (std::getline(stream, part, ',')) parts.push_back(part);
  if (parts.size() < 2 || parts.size() > 3) {
    throw awareness::ValidationError(
        "expected '<energy>,<duration>[,<modules>]', got '" + text + "'");
  }
  Calibration cal;
  cal.baseline_kwh = parse_energy_kwh(parts[0]);
  cal.trip_duration_s = parse_duration_s(parts[1]);
  if (parts.size() == 3) {
    try {
      cal.n_modules = std::stoi(parts[2]);
    } catch (const std::exception&) {
      throw awareness::ValidationError("cannot parse module count '" + parts[2] + "'");
    }
  }
  return cal;
}

void write_text_file(const fs::path& path, const std::string& content) {
  if (path.has_parent_path()) {
    fs::create_directories(path.parent_path());
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw awareness::ParseError(path.string(), 0, "cannot open file for writing");
  }
  out << content;
  if (!out) {
    throw awareness::ParseError(path.string(), 0, "write failed");
  }
}

std::string trace_csv(const awareness::SimulationTrace& trace) {
  std::string out = "tick,directional,lateral,candidate";
  for (const auto& id : trace.module_ids) {
    out += "," + id + "_quadrants";
  }
  out += "\n";
  for (std::size_t i = 0; i < trace.ticks.size(); ++i) {
    const auto& tick = trace.ticks[i];
    out += std::to_string(i);
    out += ",";
    out += directional_name(tick.situation.directional());
    out += ",";
    out += lateral_name(tick.situation.lateral());
    out += ",";
    for (std::size_t m = 0; m < tick.candidate.members().size(); ++m) {
      if (m > 0) out += "+";
      out += tick.candidate.members()[m];
    }
    for (const auto& activation : tick.activations) {
      out += "," + std::to_string(activation.active_quadrants);
    }
    out += "\n";
  }
  return out;
}

std::string uptime_csv(const std::vector<awareness::ModuleStats>& stats) {
  std::string out = "module,active_ticks,uptime,mean_active_quadrants\n";
  for (const auto& s : stats) {
    out += s.id + "," + std::to_string(s.active_ticks) + "," + fmt(s.uptime, 6) + ",";
    if (s.mean_active_quadrants) {
      out += fmt(*s.mean_active_quadrants, 6);
    }
    out += "\n";
  }
  return out;
}

std::string distribution_csv(const awareness::DistributionReport& report) {
  std::string out = "kind,maneuver,share\n";
  for (std::size_t i = 0; i < awareness::kDirectionalCount; ++i) {
    const auto d = static_cast<awareness::Directional>(i);
    out += "directional," + std::string(directional_name(d)) + "," +
           fmt(report.share(d), 6) + "\n";
  }
  for (std::size_t i = 0; i < awareness::kLateralCount; ++i) {
    const auto l = static_cast<awareness::Lateral>(i);
    out += "lateral," + std::string(lateral_name(l)) + "," +
           fmt(report.share(l), 6) + "\n";
  }
  return out;
}

ordered_json summary_json(const std::string& route_name,
                          const awareness::SimulationTrace& trace,
                          const std::vector<awareness::ModuleStats>& stats,
                          const awareness::DistributionReport& distribution,
                          const awareness::EnergyReport& energy) {
  ordered_json j;
  j["spec_version"] = 1;
  j["route"] = route_name;
  j["ticks"] = trace.tick_count();
  j["modules"] = ordered_json::array();
  for (const auto& s : stats) {
    ordered_json m;
    m["id"] = s.id;
    m["active_ticks"] = s.active_ticks;
    m["uptime"] = s.uptime;
    if (s.mean_active_quadrants) {
      m["mean_active_quadrants"] = *s.mean_active_quadrants;
    } else {
      m["mean_active_quadrants"] = nullptr;
    }
    j["modules"].push_back(std::move(m));
  }
  for (std::size_t i = 0; i < awareness::kDirectionalCount; ++i) {
    const auto d = static_cast<awareness::Directional>(i);
    j["distribution"]["directional"][std::string(directional_name(d))] =
        distribution.share(d);
  }
  for (std::size_t i = 0; i < awareness::kLateralCount; ++i) {
    const auto l = static_cast<awareness::Lateral>(i);
    j["distribution"]["lateral"][std::string(lateral_name(l))] =
        distribution.share(l);
  }
  j["energy"] = nlohmann::ordered_json::parse(energy_report_to_json(energy));
  return j;
}

struct CommonOptions {
  std::string route_file;
  bool reference_route = false;
  std::string calibrate_spec;
  std::string samples_file;
  std::string fixture_file;
};

awareness::VehicleFixture load_fixture_or_default(const CommonOptions& opts) {
  awareness::VehicleFixture fixture = opts.fixture_file.empty()
                                          ? awareness::unicaragil_fixture()
                                          : awareness::load_fixture(opts.fixture_file);
  for (const auto& warning : fixture.warnings) {
    std::cerr << "warning: " << warning << "\n";
  }
  return fixture;
}

awareness::ManeuverTimeline load_route(const CommonOptions& opts) {
  if (opts.reference_route) {
    return awareness::generate_reference_route();
  }
  return awareness::load_timeline(opts.route_file);
}

awareness::PowerModel resolve_power_model(const CommonOptions& opts,
                                          int fixture_modules) {
  if (!opts.samples_file.empty()) {
    return awareness::model_from_samples(
        awareness::load_power_samples(opts.samples_file));
  }
  const Calibration cal = parse_calibration(opts.calibrate_spec);
  return awareness::calibrate_from_trip(cal.baseline_kwh, cal.trip_duration_s,
                                        cal.n_modules.value_or(fixture_modules));
}

int run_simulate(const CommonOptions& opts, const std::string& out_dir,
                 const std::vector<std::string>& formats) {
  const awareness::VehicleFixture fixture = load_fixture_or_default(opts);
  const awareness::ManeuverTimeline timeline = load_route(opts);
  const awareness::PowerModel model =
      resolve_power_model(opts, static_cast<int>(fixture.modules.size()));

  const awareness::SimulationTrace trace =
      awareness::run_simulation(timeline, fixture.modules, fixture.layouts);
  const auto stats = awareness::summarize(trace);
  const auto distribution = awareness::maneuver_distribution(timeline);
  const awareness::EnergyReport energy = awareness::trip_report(trace, model);

  bool want_csv = false;
  bool want_json = false;
  for (const auto& f : formats) {
    if (f == "csv") want_csv = true;
    if (f == "json") want_json = true;
  }

  const fs::path dir(out_dir);
  if (want_csv) {
    write_text_file(dir / "trace.csv", trace_csv(trace));
    write_text_file(dir / "uptime.csv", uptime_csv(stats));
    write_text_file(dir / "distribution.csv", distribution_csv(distribution));
  }
  if (want_json) {
    write_text_file(dir / "energy.json", energy_report_to_json(energy));
    write_text_file(dir / "summary.json",
                    summary_json(timeline.name, trace, stats, distribution, energy)
                            .dump(2) +
                        "\n");
  }

  std::cout << "route: " << timeline.name << " (" << trace.tick_count()
            << " ticks)\n";
  for (const auto& s : stats) {
    std::cout << "module " << s.id << ": uptime " << fmt(100.0 * s.uptime, 1)
              << " %";
    if (s.mean_active_quadrants) {
      std::cout << ", mean active quadrants " << fmt(*s.mean_active_quadrants, 2);
    }
    std::cout << "\n";
  }
  std::cout << "trip energy: baseline " << fmt(energy.baseline_kwh, 6)
            << " kWh, aware " << fmt(energy.aware_kwh, 6) << " kWh, reduction "
            << fmt(100.0 * energy.reduction, 1) << " %\n";
  std::cout << "artifacts: " << dir.string() << "\n";
  return kExitOk;
}

int run_day_report(const CommonOptions& opts, const std::string& from_file,
                   const std::string& shift_text, const std::string& boarding_text,
                   bool whole_trips, const std::string& out_file) {
  const double shift_s = parse_duration_s(shift_text);
  const double boarding_s = parse_duration_s(boarding_text);

  double trip_kwh = 0.0;
  double trip_duration_s = 0.0;
  awareness::PowerModel model;
  int n_modules = 4;

  if (!from_file.empty()) {
    const awareness::EnergyReport trip = awareness::load_energy_report(from_file);
    trip_kwh = trip.aware_kwh;
    trip_duration_s = trip.trip_duration_s;
    model = trip.model;
    n_modules = trip.n_modules;
  } else {
    const awareness::VehicleFixture fixture = load_fixture_or_default(opts);
    const awareness::ManeuverTimeline timeline = load_route(opts);
    model = resolve_power_model(opts, static_cast<int>(fixture.modules.size()));
    const awareness::SimulationTrace trace =
        awareness::run_simulation(timeline, fixture.modules, fixture.layouts);
    const awareness::EnergyReport trip = awareness::trip_report(trace, model);
    trip_kwh = trip.aware_kwh;
    trip_duration_s = trip.trip_duration_s;
    n_modules = trip.n_modules;
  }

  const awareness::EnergyReport day = awareness::day_scenario(
      trip_kwh, trip_duration_s, boarding_s, shift_s, model, whole_trips,
      n_modules);
  const std::string json = energy_report_to_json(day);
  std::cout << json;
  if (!out_file.empty()) {
    write_text_file(out_file, json);
  }
  return kExitOk;
}

int run_generate_route(const std::string& out_file) {
  awareness::save_route(out_file, "reference_route",
                        awareness::reference_route_segments());
  std::cout << "wrote " << out_file << "\n";
  return kExitOk;
}

int run_calibrate(const std::string& trip_spec, const std::string& samples_file,
                  const std::string& out_file, const std::string& stats_out) {
  awareness::PowerModel model;
  std::optional<awareness::PowerSampleSet> samples;
  if (!samples_file.empty()) {
    samples = awareness::load_power_samples(samples_file);
    model = awareness::model_from_samples(*samples);
  } else {
    const Calibration cal = parse_calibration(trip_spec);
    model = awareness::calibrate_from_trip(cal.baseline_kwh, cal.trip_duration_s,
                                           cal.n_modules.value_or(4));
  }

  const std::string json = awareness::power_model_to_json(model);
  std::cout << json;
  if (!out_file.empty()) {
    write_text_file(out_file, json);
  }
  if (!stats_out.empty()) {
    if (!samples) {
      throw awareness::ValidationError("--stats-out needs --samples");
    }
    std::string csv = "active_quadrants,count,median_w,q1_w,q3_w\n";
    for (const auto& [quadrants, stats] : awareness::summarize_samples(*samples)) {
      csv += std::to_string(quadrants) + "," + std::to_string(stats.count) + "," +
             fmt(stats.median, 6) + "," + fmt(stats.q1, 6) + "," +
             fmt(stats.q3, 6) + "\n";
    }
    write_text_file(stats_out, csv);
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Maneuver-aware sensor module configuration and energy simulator"};
  app.require_subcommand(1);

  CommonOptions common;
  std::string out_dir = ".";
  std::vector<std::string> formats = {"csv", "json"};

  auto* sim = app.add_subcommand(
      "simulate", "Run the per-tick configuration loop over a route");
  auto* sim_route = sim->add_option_group("route source");
  sim_route->add_option("--route", common.route_file, "Timeline file (JSON)");
  sim_route->add_flag("--reference-route", common.reference_route,
                      "Use the built-in 555 s shuttle route");
  sim_route->require_option(1);
  auto* sim_power = sim->add_option_group("power model source");
  sim_power->add_option("--calibrate", common.calibrate_spec,
                        "Calibrate from '<energy>,<duration>[,<modules>]', "
                        "e.g. 0.171kWh,555s");
  sim_power->add_option("--samples", common.samples_file,
                        "Measured power samples (CSV)");
  sim_power->require_option(1);
  sim->add_option("--fixture", common.fixture_file,
                  "Module descriptor file (default: built-in four-corner fixture)");
  sim->add_option("--out", out_dir, "Output directory")->capture_default_str();
  sim->add_option("--formats", formats, "Artifact formats (csv, json)")
      ->delimiter(',')
      ->check(CLI::IsMember({"csv", "json"}));

  std::string from_file;
  std::string shift_text = "10h";
  std::string boarding_text = "5min";
  bool whole_trips = false;
  std::string day_out;
  auto* day = app.add_subcommand(
      "day-report", "Scale one trip to a working day of back-to-back trips");
  day->add_option("--from", from_file, "Trip energy report (energy.json)");
  day->add_option("--route", common.route_file, "Timeline file (JSON)");
  day->add_flag("--reference-route", common.reference_route,
                "Use the built-in 555 s shuttle route");
  day->add_option("--calibrate", common.calibrate_spec,
                  "Calibrate from '<energy>,<duration>[,<modules>]'");
  day->add_option("--samples", common.samples_file, "Measured power samples (CSV)");
  day->add_option("--fixture", common.fixture_file, "Module descriptor file");
  day->add_option("--shift", shift_text, "Shift duration")->capture_default_str();
  day->add_option("--boarding", boarding_text, "Boarding pause between trips")
      ->capture_default_str();
  day->add_flag("--whole-trips", whole_trips,
                "Floor the trip count instead of allowing fractional trips");
  day->add_option("--out", day_out, "Also write the report to this file");

  std::string route_out = "reference_route.json";
  auto* gen = app.add_subcommand("generate-route",
                                 "Write the built-in route as a segment file");
  gen->add_option("output", route_out, "Output path")->capture_default_str();

  std::string trip_spec;
  std::string cal_samples;
  std::string cal_out;
  std::string stats_out;
  auto* cal = app.add_subcommand("calibrate", "Derive a power model");
  auto* cal_source = cal->add_option_group("model source");
  cal_source->add_option("--trip", trip_spec,
                         "Calibrate from '<energy>,<duration>[,<modules>]'");
  cal_source->add_option("--samples", cal_samples, "Measured power samples (CSV)");
  cal_source->require_option(1);
  cal->add_option("--out", cal_out, "Also write the model to this file");
  cal->add_option("--stats-out", stats_out,
                  "Write per-quadrant-count sample statistics (CSV)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    return diagnose("usage", e.what(), kExitUsage);
  }

  try {
    if (sim->parsed()) {
      return run_simulate(common, out_dir, formats);
    }
    if (day->parsed()) {
      if (from_file.empty()) {
        const bool has_route = common.reference_route || !common.route_file.empty();
        const bool has_power =
            !common.calibrate_spec.empty() || !common.samples_file.empty();
        if (!has_route || !has_power) {
          return diagnose("usage",
                          "day-report needs --from, or a route source "
                          "(--route/--reference-route) plus a power source "
                          "(--calibrate/--samples)",
                          kExitUsage);
        }
        if (common.reference_route && !common.route_file.empty()) {
          return diagnose("usage", "pick one of --route and --reference-route",
                          kExitUsage);
        }
        if (!common.calibrate_spec.empty() && !common.samples_file.empty()) {
          return diagnose("usage", "pick one of --calibrate and --samples",
                          kExitUsage);
        }
      }
      return run_day_report(common, from_file, shift_text, boarding_text,
                            whole_trips, day_out);
    }
    if (gen->parsed()) {
      return run_generate_route(route_out);
    }
    if (cal->parsed()) {
      return run_calibrate(trip_spec, cal_samples, cal_out, stats_out);
    }
  } catch (const awareness::InfeasibleError& e) {
    return diagnose(e.code(), e.what(), kExitInfeasible);
  } catch (const awareness::Error& e) {
    return diagnose(e.code(), e.what(), kExitInput);
  } catch (const std::exception& e) {
    return diagnose("internal", e.what(), kExitInput);
  }
  return diagnose("usage", "no subcommand given", kExitUsage);
}
