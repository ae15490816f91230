#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <nlohmann/json.hpp>
#include <sys/wait.h>

#include "awareness/power.hpp"
#include "awareness/timeline.hpp"

namespace {

namespace fs = std::filesystem;

struct RunResult {
  int exit_code = -1;
  std::string out;
  std::string err;
};

std::string slurp(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::stringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

fs::path scratch_dir() {
  const fs::path dir = fs::temp_directory_path() / "awareness_cli_test";
  fs::create_directories(dir);
  return dir;
}

RunResult run_cli(const std::string& args) {
  static int counter = 0;
  const fs::path dir = scratch_dir();
  const fs::path out = dir / ("stdout_" + std::to_string(counter) + ".txt");
  const fs::path err = dir / ("stderr_" + std::to_string(counter) + ".txt");
  ++counter;

  const std::string command = std::string(CLI_BIN) + " " + args + " > " +
                              out.string() + " 2> " + err.string();
  const int status = std::system(command.c_str());

  RunResult result;
  result.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  result.out = slurp(out);
  result.err = slurp(err);
  return result;
}

fs::path write_file(const std::string& name, const std::string& content) {
  const fs::path path = scratch_dir() / name;
  std::ofstream out(path, std::ios::binary);
  out << content;
  return path;
}

}  // namespace

TEST_CASE("help and usage errors") {
  CHECK(run_cli("--help").exit_code == 0);
  CHECK(run_cli("simulate --help").exit_code == 0);

  auto result = run_cli("");
  CHECK(result.exit_code == 2);
  CHECK(result.err.rfind("error: usage:", 0) == 0);

  result = run_cli("simulate --reference-route");  // no power source
  CHECK(result.exit_code == 2);
  CHECK(result.err.rfind("error: usage:", 0) == 0);

  result = run_cli("simulate --bogus-flag");
  CHECK(result.exit_code == 2);

  result = run_cli("day-report");
  CHECK(result.exit_code == 2);
}

TEST_CASE("generate-route is deterministic and loadable") {
  const fs::path route_a = scratch_dir() / "route_a.json";
  const fs::path route_b = scratch_dir() / "route_b.json";

  CHECK(run_cli("generate-route " + route_a.string()).exit_code == 0);
  CHECK(run_cli("generate-route " + route_b.string()).exit_code == 0);
  CHECK(slurp(route_a) == slurp(route_b));
  CHECK(!slurp(route_a).empty());

  const auto timeline = awareness::load_timeline(route_a);
  CHECK(timeline.tick_count() == 555);
}

TEST_CASE("simulate produces the full artifact set") {
  const fs::path out_dir = scratch_dir() / "sim_out";
  const auto result = run_cli("simulate --reference-route --calibrate "
                              "0.171kWh,555s --out " +
                              out_dir.string());
  REQUIRE(result.exit_code == 0);
  CHECK(result.out.find("reduction") != std::string::npos);

  for (const auto* name :
       {"trace.csv", "uptime.csv", "distribution.csv", "energy.json",
        "summary.json"}) {
    CAPTURE(name);
    CHECK(fs::exists(out_dir / name));
  }

  // Front uptime accumulates to exactly one.
  double fl_uptime = -1.0;
  double fr_uptime = -1.0;
  std::stringstream uptime(slurp(out_dir / "uptime.csv"));
  std::string line;
  std::getline(uptime, line);
  CHECK(line == "module,active_ticks,uptime,mean_active_quadrants");
  while (std::getline(uptime, line)) {
    std::stringstream fields(line);
    std::string id, ticks, up;
    std::getline(fields, id, ',');
    std::getline(fields, ticks, ',');
    std::getline(fields, up, ',');
    if (id == "FL") fl_uptime = std::stod(up);
    if (id == "FR") fr_uptime = std::stod(up);
  }
  CHECK(fl_uptime + fr_uptime == doctest::Approx(1.0).epsilon(1e-6));
  CHECK(fl_uptime > fr_uptime);

  const auto energy = awareness::load_energy_report(out_dir / "energy.json");
  CHECK(energy.horizon == "trip");
  CHECK(energy.baseline_kwh == doctest::Approx(0.171).epsilon(1e-9));

  // Byte-identical artifacts on a second run.
  const fs::path out_dir2 = scratch_dir() / "sim_out2";
  REQUIRE(run_cli("simulate --reference-route --calibrate 0.171kWh,555s --out " +
                  out_dir2.string())
              .exit_code == 0);
  CHECK(slurp(out_dir / "trace.csv") == slurp(out_dir2 / "trace.csv"));
  CHECK(slurp(out_dir / "energy.json") == slurp(out_dir2 / "energy.json"));
}

TEST_CASE("format selection restricts the artifact set") {
  const fs::path csv_only = scratch_dir() / "sim_csv";
  REQUIRE(run_cli("simulate --reference-route --calibrate 0.171kWh,555s "
                  "--formats csv --out " +
                  csv_only.string())
              .exit_code == 0);
  CHECK(fs::exists(csv_only / "trace.csv"));
  CHECK(!fs::exists(csv_only / "energy.json"));

  const fs::path json_only = scratch_dir() / "sim_json";
  REQUIRE(run_cli("simulate --reference-route --calibrate 0.171kWh,555s "
                  "--formats json --out " +
                  json_only.string())
              .exit_code == 0);
  CHECK(!fs::exists(json_only / "trace.csv"));
  CHECK(fs::exists(json_only / "energy.json"));
  CHECK(fs::exists(json_only / "summary.json"));

  CHECK(run_cli("simulate --reference-route --calibrate 0.171kWh,555s "
                "--formats yaml")
            .exit_code == 2);
}

TEST_CASE("simulate accepts measured samples as the power source") {
  const fs::path samples = fs::path(TEST_DATA_DIR) / "power_samples.csv";
  const fs::path out_dir = scratch_dir() / "sim_samples";
  const auto result = run_cli("simulate --reference-route --samples " +
                              samples.string() + " --out " + out_dir.string());
  REQUIRE(result.exit_code == 0);
  const auto energy = awareness::load_energy_report(out_dir / "energy.json");
  CHECK(energy.model.p_full_w == doctest::Approx(277.3).epsilon(1e-9));
  CHECK(energy.model.ratio_partial == doctest::Approx(1.023).epsilon(1e-9));
}

TEST_CASE("simulate reports input errors") {
  auto result = run_cli("simulate --route /nonexistent/route.json --calibrate "
                        "0.171kWh,555s");
  CHECK(result.exit_code == 3);
  CHECK(result.err.rfind("error: parse:", 0) == 0);

  const auto empty = write_file("empty_route.json", R"({"segments": []})");
  result = run_cli("simulate --route " + empty.string() +
                   " --calibrate 0.171kWh,555s");
  CHECK(result.exit_code == 3);
  CHECK(result.err.find("empty timeline") != std::string::npos);

  result = run_cli("simulate --reference-route --calibrate nonsense");
  CHECK(result.exit_code == 3);
  CHECK(result.err.rfind("error: validation:", 0) == 0);
}

TEST_CASE("simulate exits with the infeasibility code") {
  // Two rear modules cannot observe the front region.
  const auto fixture = write_file("rear_only.json", R"({
    "modules": [
      {"id": "RL", "coverage": ["fl", "br", "b", "bl", "l"],
       "quadrants": [["bl"], ["b", "br"], ["l", "fl"]]},
      {"id": "RR", "coverage": ["fr", "r", "br", "b", "bl"],
       "quadrants": [["br"], ["b", "bl"], ["r", "fr"]]}
    ]
  })");
  const auto route = write_file("forward_route.json", R"({
    "segments": [{"directional": "forward", "duration_s": 2}]
  })");
  const auto result =
      run_cli("simulate --route " + route.string() + " --fixture " +
              fixture.string() + " --calibrate 0.171kWh,555s");
  CHECK(result.exit_code == 4);
  CHECK(result.err.rfind("error: infeasible:", 0) == 0);
}

TEST_CASE("day-report consumes simulate output") {
  const fs::path out_dir = scratch_dir() / "sim_for_day";
  REQUIRE(run_cli("simulate --reference-route --calibrate 0.171kWh,555s --out " +
                  out_dir.string())
              .exit_code == 0);

  auto result =
      run_cli("day-report --from " + (out_dir / "energy.json").string());
  REQUIRE(result.exit_code == 0);
  const auto day = nlohmann::json::parse(result.out);
  CHECK(day.at("horizon") == "day");
  CHECK(day.at("parameters").at("shift_s") == doctest::Approx(36000.0));
  CHECK(day.at("parameters").at("boarding_s") == doctest::Approx(300.0));
  CHECK(day.at("reduction").get<double>() > 0.35);

  result = run_cli("day-report --from " + (out_dir / "energy.json").string() +
                   " --shift 1h");
  REQUIRE(result.exit_code == 0);
  CHECK(nlohmann::json::parse(result.out).at("parameters").at("trips").get<double>() ==
        doctest::Approx(3600.0 / 855.0).epsilon(1e-9));

  // Without boarding pauses the shift packs trips back to back.
  result = run_cli("day-report --from " + (out_dir / "energy.json").string() +
                   " --boarding 0 --shift 555s");
  REQUIRE(result.exit_code == 0);
  const auto packed = nlohmann::json::parse(result.out);
  CHECK(packed.at("parameters").at("trips").get<double>() ==
        doctest::Approx(1.0).epsilon(1e-9));

  CHECK(run_cli("day-report --from /nonexistent/energy.json").exit_code == 3);
}

TEST_CASE("day-report can run the simulation itself") {
  const auto result = run_cli(
      "day-report --reference-route --calibrate 0.171kWh,555s --whole-trips");
  REQUIRE(result.exit_code == 0);
  CHECK(nlohmann::json::parse(result.out).at("parameters").at("trips") ==
        doctest::Approx(42.0));
}

TEST_CASE("calibrate emits models and sample statistics") {
  auto result = run_cli("calibrate --trip 0.171kWh,555s");
  REQUIRE(result.exit_code == 0);
  CHECK(nlohmann::json::parse(result.out).at("p_full_w").get<double>() ==
        doctest::Approx(277.2973).epsilon(1e-6));

  const fs::path samples = fs::path(TEST_DATA_DIR) / "power_samples.csv";
  const fs::path stats = scratch_dir() / "stats.csv";
  result = run_cli("calibrate --samples " + samples.string() + " --stats-out " +
                   stats.string());
  REQUIRE(result.exit_code == 0);
  const std::string csv = slurp(stats);
  CHECK(csv.rfind("active_quadrants,count,median_w,q1_w,q3_w", 0) == 0);
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 5);  // header + 4 groups

  CHECK(run_cli("calibrate --trip 0.171kWh").exit_code == 3);
}
