#include "awareness/sensor_modules.hpp"

#include <cmath>
#include <fstream>
#include <limits>
#include <set>
#include <sstream>

#include <nlohmann/json.hpp>

#include "awareness/errors.hpp"

namespace awareness {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

ModuleDescriptor corner_module(std::string id, RegionSet coverage) {
  ModuleDescriptor m;
  m.id = std::move(id);
  m.cost = 1.0;
  m.performance = kInf;
  m.coverage = coverage;
  m.is_source = true;
  return m;
}

QuadrantLayout corner_layout(std::string id, Region middle, RegionSet outer_a,
                             RegionSet outer_b) {
  QuadrantLayout q;
  q.module_id = std::move(id);
  q.quadrants = {RegionSet{middle}, outer_a, outer_b};
  return q;
}

}  // namespace

VehicleFixture unicaragil_fixture() {
  VehicleFixture fx;
  fx.modules = {
      corner_module("FL", {Region::Fl, Region::F, Region::Fr, Region::Bl, Region::L}),
      corner_module("FR", {Region::Fl, Region::F, Region::Fr, Region::R, Region::Br}),
      corner_module("RL", {Region::Fl, Region::Br, Region::B, Region::Bl, Region::L}),
      corner_module("RR", {Region::Fr, Region::R, Region::Br, Region::B, Region::Bl}),
  };
  fx.layouts = {
      corner_layout("FL", Region::Fl, {Region::F, Region::Fr}, {Region::L, Region::Bl}),
      corner_layout("FR", Region::Fr, {Region::F, Region::Fl}, {Region::R, Region::Br}),
      corner_layout("RL", Region::Bl, {Region::B, Region::Br}, {Region::L, Region::Fl}),
      corner_layout("RR", Region::Br, {Region::B, Region::Bl}, {Region::R, Region::Fr}),
  };
  fx.warnings = validate_fixture(fx.modules, fx.layouts);
  return fx;
}

std::vector<std::string> validate_fixture(
    const std::vector<ModuleDescriptor>& modules,
    const std::vector<QuadrantLayout>& layouts) {
  std::vector<std::string> warnings;
  std::set<std::string> ids;
  for (const auto& m : modules) {
    if (m.id.empty()) {
      throw ConfigError("module with empty id");
    }
    if (!ids.insert(m.id).second) {
      throw ConfigError("duplicate module id '" + m.id + "'");
    }
    if (m.cost < 0) {
      throw ConfigError("module '" + m.id + "' has negative cost");
    }
    if (std::isnan(m.performance) || m.performance < 0) {
      throw ConfigError("module '" + m.id + "' has invalid performance");
    }
    if (m.is_source && m.coverage.empty()) {
      throw ConfigError("source module '" + m.id + "' has empty coverage");
    }
  }
  for (const auto& m : modules) {
    bool has_dependency = false;
    for (const auto& rel : m.relations) {
      if (!ids.count(rel.object)) {
        throw ConfigError("module '" + m.id + "' has a relation to unknown module '" +
                          rel.object + "'");
      }
      if (rel.object == m.id) {
        throw ConfigError("module '" + m.id + "' has a relation to itself");
      }
      if (rel.kind == Relation::Kind::Dependency) {
        has_dependency = true;
        if (m.is_source) {
          warnings.push_back("dependency of source module '" + m.id +
                             "' is ignored by the configuration search");
        }
      } else {
        warnings.push_back("linkability relation on module '" + m.id +
                           "' is not enforced by the configuration search");
      }
    }
    if (!m.is_source && !has_dependency) {
      throw ConfigError("non-source module '" + m.id +
                        "' needs at least one dependency relation");
    }
  }
  for (const auto& q : layouts) {
    if (!ids.count(q.module_id)) {
      throw ConfigError("quadrant layout for unknown module '" + q.module_id + "'");
    }
    for (const auto& quadrant : q.quadrants) {
      if (quadrant.empty()) {
        throw ConfigError("module '" + q.module_id + "' has an empty quadrant");
      }
    }
    for (const auto& m : modules) {
      if (m.id == q.module_id && q.covered() != m.coverage) {
        throw ConfigError("quadrants of module '" + q.module_id +
                          "' cover {" + describe(q.covered()) +
                          "} but the descriptor declares {" +
                          describe(m.coverage) + "}");
      }
    }
  }
  return warnings;
}

namespace {

using json = nlohmann::json;

RegionSet regions_from_json(const json& arr, const std::string& context) {
  if (!arr.is_array()) {
    throw ConfigError(context + ": expected an array of region names");
  }
  RegionSet set;
  for (const auto& entry : arr) {
    if (!entry.is_string()) {
      throw ConfigError(context + ": region names must be strings");
    }
    auto region = region_from_name(entry.get<std::string>());
    if (!region) {
      throw ConfigError(context + ": unknown region '" +
                        entry.get<std::string>() + "'");
    }
    set.insert(*region);
  }
  return set;
}

double performance_from_json(const json& value, const std::string& context) {
  if (value.is_string()) {
    const std::string s = value.get<std::string>();
    if (s == "inf" || s == "infinity") {
      return std::numeric_limits<double>::infinity();
    }
    throw ConfigError(context + ": performance must be a number or \"inf\"");
  }
  if (value.is_number()) {
    return value.get<double>();
  }
  throw ConfigError(context + ": performance must be a number or \"inf\"");
}

std::size_t line_of_byte(const std::string& text, std::size_t byte) {
  std::size_t line = 1;
  for (std::size_t i = 0; i < byte && i < text.size(); ++i) {
    if (text[i] == '\n') ++line;
  }
  return line;
}

void parse_modules(const json& doc, const std::string& path, VehicleFixture& fx) {
  for (const auto& entry : doc["modules"]) {
    if (!entry.is_object() || !entry.contains("id") || !entry["id"].is_string()) {
      throw ParseError(path, 0, "every module needs a string 'id'");
    }
    ModuleDescriptor m;
    m.id = entry["id"].get<std::string>();
    const std::string context = "module '" + m.id + "'";
    m.cost = entry.value("cost", 1.0);
    m.performance = entry.contains("performance")
                        ? performance_from_json(entry["performance"], context)
                        : std::numeric_limits<double>::infinity();
    if (entry.contains("coverage")) {
      m.coverage = regions_from_json(entry["coverage"], context);
    }
    m.is_source = entry.value("is_source", true);
    if (entry.contains("relations")) {
      for (const auto& rel : entry["relations"]) {
        Relation r;
        r.subject = m.id;
        const std::string kind = rel.value("kind", "dependency");
        if (kind == "dependency") {
          r.kind = Relation::Kind::Dependency;
        } else if (kind == "linkability") {
          r.kind = Relation::Kind::Linkability;
        } else {
          throw ConfigError(context + ": unknown relation kind '" + kind + "'");
        }
        if (!rel.contains("object") || !rel["object"].is_string()) {
          throw ConfigError(context + ": relation needs a string 'object'");
        }
        r.object = rel["object"].get<std::string>();
        m.relations.push_back(std::move(r));
      }
    }
    if (entry.contains("quadrants")) {
      const auto& quads = entry["quadrants"];
      if (!quads.is_array() || quads.size() != 3) {
        throw ConfigError(context + ": 'quadrants' must list exactly 3 region sets");
      }
      QuadrantLayout layout;
      layout.module_id = m.id;
      for (std::size_t i = 0; i < 3; ++i) {
        layout.quadrants[i] =
            regions_from_json(quads[i], context + " quadrant " + std::to_string(i));
      }
      fx.layouts.push_back(std::move(layout));
    }
    fx.modules.push_back(std::move(m));
  }
}

}  // namespace

VehicleFixture load_fixture(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) {
    throw ParseError(path.string(), 0, "cannot open file");
  }
  std::stringstream buffer;
  buffer << in.rdbuf();
  const std::string text = buffer.str();

  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(path.string(), line_of_byte(text, e.byte), e.what());
  }

  if (!doc.is_object() || !doc.contains("modules") || !doc["modules"].is_array()) {
    throw ParseError(path.string(), 0, "expected an object with a 'modules' array");
  }

  VehicleFixture fx;
  try {
    parse_modules(doc, path.string(), fx);
  } catch (const json::exception& e) {
    throw ParseError(path.string(), 0, e.what());
  }

  fx.warnings = validate_fixture(fx.modules, fx.layouts);
  return fx;
}

}  // namespace awareness
