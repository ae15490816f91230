#include "awareness/timeline.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "awareness/errors.hpp"

namespace awareness {

ManeuverTimeline expand_segments(std::string name,
                                 const std::vector<RouteSegment>& segments) {
  ManeuverTimeline timeline;
  timeline.name = std::move(name);
  for (std::size_t i = 0; i < segments.size(); ++i) {
    const auto& seg = segments[i];
    if (seg.duration_s <= 0) {
      throw ValidationError("segment " + std::to_string(i + 1) +
                            ": duration must be positive");
    }
    for (int t = 0; t < seg.duration_s; ++t) {
      timeline.ticks.push_back(seg.situation);
    }
  }
  return timeline;
}

namespace {

using json = nlohmann::json;
using ordered_json = nlohmann::ordered_json;

std::size_t line_of_byte(const std::string& text, std::size_t byte) {
  std::size_t line = 1;
  for (std::size_t i = 0; i < byte && i < text.size(); ++i) {
    if (text[i] == '\n') ++line;
  }
  return line;
}

Situation situation_from_json(const json& entry, const std::string& path,
                              const std::string& what, std::size_t index) {
  const std::string label = what + " " + std::to_string(index + 1);
  if (!entry.is_object()) {
    throw ParseError(path, 0, label + ": expected an object");
  }
  if (!entry.contains("directional") || !entry["directional"].is_string()) {
    throw ParseError(path, 0, label + ": missing string field 'directional'");
  }
  const std::string dm = entry["directional"].get<std::string>();
  auto directional = directional_from_name(dm);
  if (!directional) {
    throw ParseError(path, 0, label + ": unknown directional maneuver '" + dm + "'");
  }
  Lateral lateral = Lateral::None;
  if (entry.contains("lateral")) {
    if (!entry["lateral"].is_string()) {
      throw ParseError(path, 0, label + ": 'lateral' must be a string");
    }
    const std::string lm = entry["lateral"].get<std::string>();
    auto parsed = lateral_from_name(lm);
    if (!parsed) {
      throw ParseError(path, 0, label + ": unknown lateral maneuver '" + lm + "'");
    }
    lateral = *parsed;
  }
  try {
    return Situation(*directional, lateral);
  } catch (const ValidationError& e) {
    throw ParseError(path, 0, label + ": " + e.what());
  }
}

int duration_from_json(const json& entry, const std::string& path,
                       std::size_t index) {
  const std::string label = "segment " + std::to_string(index + 1);
  if (!entry.contains("duration_s") || !entry["duration_s"].is_number()) {
    throw ParseError(path, 0, label + ": missing numeric field 'duration_s'");
  }
  const double value = entry["duration_s"].get<double>();
  if (!(value > 0) || value != std::floor(value)) {
    throw ParseError(path, 0,
                     label + ": duration_s must be a positive whole number of seconds");
  }
  return static_cast<int>(value);
}

}  // namespace

ManeuverTimeline load_timeline(const std::filesystem::path& path) {
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

  if (!doc.is_object()) {
    throw ParseError(path.string(), 0, "expected a top-level object");
  }
  if (doc.contains("tick_period_s") && doc["tick_period_s"] != 1) {
    throw ParseError(path.string(), 0, "tick_period_s must be 1");
  }

  std::string name;
  try {
    name = doc.value("name", path.stem().string());
  } catch (const json::exception& e) {
    throw ParseError(path.string(), 0, e.what());
  }

  if (doc.contains("segments")) {
    if (!doc["segments"].is_array()) {
      throw ParseError(path.string(), 0, "'segments' must be an array");
    }
    std::vector<RouteSegment> segments;
    std::size_t index = 0;
    for (const auto& entry : doc["segments"]) {
      RouteSegment seg;
      seg.situation = situation_from_json(entry, path.string(), "segment", index);
      seg.duration_s = duration_from_json(entry, path.string(), index);
      segments.push_back(seg);
      ++index;
    }
    return expand_segments(name, segments);
  }

  if (doc.contains("ticks")) {
    if (!doc["ticks"].is_array()) {
      throw ParseError(path.string(), 0, "'ticks' must be an array");
    }
    ManeuverTimeline timeline;
    timeline.name = name;
    std::size_t index = 0;
    for (const auto& entry : doc["ticks"]) {
      timeline.ticks.push_back(
          situation_from_json(entry, path.string(), "tick", index));
      ++index;
    }
    return timeline;
  }

  throw ParseError(path.string(), 0, "expected a 'segments' or 'ticks' array");
}

void save_route(const std::filesystem::path& path, const std::string& name,
                const std::vector<RouteSegment>& segments) {
  ordered_json doc;
  doc["name"] = name;
  doc["tick_period_s"] = 1;
  doc["segments"] = ordered_json::array();
  for (const auto& seg : segments) {
    ordered_json entry;
    entry["directional"] = std::string(directional_name(seg.situation.directional()));
    entry["lateral"] = std::string(lateral_name(seg.situation.lateral()));
    entry["duration_s"] = seg.duration_s;
    doc["segments"].push_back(std::move(entry));
  }

  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw ParseError(path.string(), 0, "cannot open file for writing");
  }
  out << doc.dump(2) << "\n";
  if (!out) {
    throw ParseError(path.string(), 0, "write failed");
  }
}

std::vector<RouteSegment> reference_route_segments() {
  const auto seg = [](Directional d, Lateral l, int duration) {
    return RouteSegment{Situation(d, l), duration};
  };
  using D = Directional;
  using L = Lateral;

  // 555 ticks: sideways parking at both ends, turns and lane changes inside
  // forward stretches, maneuvering in contiguous blocks. Tick counts give
  // forward 498, maneuvering 41, left/right 8 each, laterals 11/12/4/6.
  return {
      seg(D::Left, L::None, 8),
      seg(D::Forward, L::None, 45),
      seg(D::Forward, L::TurnLeft, 4),
      seg(D::Forward, L::None, 45),
      seg(D::Maneuvering, L::None, 12),
      seg(D::Forward, L::None, 40),
      seg(D::Forward, L::TurnRight, 4),
      seg(D::Forward, L::None, 30),
      seg(D::Forward, L::ChangeLeft, 2),
      seg(D::Forward, L::None, 50),
      seg(D::Forward, L::TurnLeft, 4),
      seg(D::Forward, L::None, 35),
      seg(D::Maneuvering, L::None, 12),
      seg(D::Forward, L::None, 30),
      seg(D::Forward, L::TurnRight, 4),
      seg(D::Forward, L::None, 25),
      seg(D::Maneuvering, L::None, 9),
      seg(D::Forward, L::None, 20),
      seg(D::Forward, L::ChangeLeft, 2),
      seg(D::Forward, L::None, 45),
      seg(D::Forward, L::TurnLeft, 3),
      seg(D::Forward, L::None, 30),
      seg(D::Forward, L::ChangeRight, 3),
      seg(D::Forward, L::None, 25),
      seg(D::Forward, L::ChangeRight, 3),
      seg(D::Forward, L::None, 20),
      seg(D::Maneuvering, L::None, 8),
      seg(D::Forward, L::None, 14),
      seg(D::Forward, L::TurnRight, 4),
      seg(D::Forward, L::None, 11),
      seg(D::Right, L::None, 8),
  };
}

ManeuverTimeline generate_reference_route() {
  return expand_segments("reference_route", reference_route_segments());
}

DistributionReport maneuver_distribution(const ManeuverTimeline& timeline) {
  if (timeline.ticks.empty()) {
    throw ValidationError("empty timeline");
  }
  DistributionReport report;
  for (const Situation& s : timeline.ticks) {
    report.directional_share[static_cast<std::size_t>(s.directional())] += 1.0;
    report.lateral_share[static_cast<std::size_t>(s.lateral())] += 1.0;
  }
  const double n = static_cast<double>(timeline.ticks.size());
  for (double& v : report.directional_share) v /= n;
  for (double& v : report.lateral_share) v /= n;
  return report;
}

}  // namespace awareness
