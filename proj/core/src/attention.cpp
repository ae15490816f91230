#include "awareness/attention.hpp"

#include <string>

#include <nlohmann/json.hpp>

#include "awareness/errors.hpp"

namespace awareness {

std::string_view attention_layer_name(AttentionLayer layer) noexcept {
  switch (layer) {
    case AttentionLayer::DirectionalIntention:
      return "directional_intention";
    case AttentionLayer::LateralIntention:
      return "lateral_intention";
    case AttentionLayer::Maneuvering:
      return "maneuvering";
  }
  return "?";
}

std::vector<AttentionLayer> activate_layers(const Situation& situation) {
  std::vector<AttentionLayer> layers;
  switch (situation.directional()) {
    case Directional::Forward:
    case Directional::Backward:
    case Directional::Left:
    case Directional::Right:
      layers.push_back(AttentionLayer::DirectionalIntention);
      break;
    case Directional::Maneuvering:
      layers.push_back(AttentionLayer::Maneuvering);
      break;
    case Directional::Standby:
      break;
  }
  if (situation.lateral() != Lateral::None) {
    layers.push_back(AttentionLayer::LateralIntention);
  }
  return layers;
}

namespace {

RegionSet directional_intention_regions(Directional d) {
  switch (d) {
    case Directional::Forward:
      return {Region::Fl, Region::F, Region::Fr};
    case Directional::Backward:
      return {Region::Br, Region::B, Region::Bl};
    case Directional::Left:
      return {Region::Fl, Region::Bl, Region::L};
    case Directional::Right:
      return {Region::Fr, Region::R, Region::Br};
    default:
      return {};
  }
}

// Turns are independent of the driving direction; lane changes pull in the
// diagonal region behind (forward) or ahead (backward) of the movement.
RegionSet lateral_intention_regions(Lateral l, Directional d) {
  switch (l) {
    case Lateral::TurnLeft:
      return {Region::Fl, Region::Bl, Region::L};
    case Lateral::TurnRight:
      return {Region::Fr, Region::R, Region::Br};
    case Lateral::ChangeLeft: {
      RegionSet set{Region::L};
      set.insert(d == Directional::Forward ? Region::Bl : Region::Fl);
      return set;
    }
    case Lateral::ChangeRight: {
      RegionSet set{Region::R};
      set.insert(d == Directional::Forward ? Region::Br : Region::Fr);
      return set;
    }
    default:
      return {};
  }
}

bool layer_active(AttentionLayer layer, const Situation& situation) {
  for (AttentionLayer active : activate_layers(situation)) {
    if (active == layer) return true;
  }
  return false;
}

}  // namespace

RegionSet layer_regions(AttentionLayer layer, const Situation& situation) {
  if (!layer_active(layer, situation)) {
    throw ContractError("layer '" + std::string(attention_layer_name(layer)) +
                        "' is not active for maneuver " + describe(situation));
  }
  switch (layer) {
    case AttentionLayer::DirectionalIntention:
      return directional_intention_regions(situation.directional());
    case AttentionLayer::LateralIntention:
      return lateral_intention_regions(situation.lateral(),
                                       situation.directional());
    case AttentionLayer::Maneuvering:
      return RegionSet::all();
  }
  return {};
}

Mlam build_mlam(const Situation& situation) {
  Mlam mlam;
  for (AttentionLayer layer : activate_layers(situation)) {
    for (Region r : layer_regions(layer, situation).regions()) {
      mlam.add(r, 1);
    }
  }
  return mlam;
}

std::string mlam_to_json(const Mlam& mlam) {
  nlohmann::ordered_json j;
  for (Region r : kAllRegions) {
    j[std::string(region_name(r))] = mlam.at(r);
  }
  return j.dump();
}

Mlam mlam_from_json(const std::string& text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ValidationError(std::string("malformed attention map: ") + e.what());
  }
  if (!doc.is_object()) {
    throw ValidationError("attention map must be a JSON object");
  }
  Mlam mlam;
  for (const auto& [key, value] : doc.items()) {
    const auto region = region_from_name(key);
    if (!region) {
      throw ValidationError("unknown region '" + key + "' in attention map");
    }
    if (!value.is_number_integer() || value.get<int>() < 0) {
      throw ValidationError("requirement for region '" + key +
                            "' must be a non-negative integer");
    }
    mlam.set(*region, value.get<int>());
  }
  return mlam;
}

}  // namespace awareness
