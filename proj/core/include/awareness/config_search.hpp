#pragma once

#include <cstddef>
#include <initializer_list>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "awareness/attention.hpp"
#include "awareness/sensor_modules.hpp"

namespace awareness {

// A module combination candidate. Members are stored sorted and unique, so
// two candidates with the same members compare equal.
class Candidate {
 public:
  Candidate() = default;
  Candidate(std::initializer_list<std::string_view> members);
  explicit Candidate(std::vector<std::string> members);

  bool contains(std::string_view id) const noexcept;
  std::size_t size() const noexcept { return members_.size(); }
  bool empty() const noexcept { return members_.empty(); }
  const std::vector<std::string>& members() const noexcept { return members_; }

  std::size_t overlap(const Candidate& other) const noexcept;

  bool operator==(const Candidate&) const = default;
  auto operator<=>(const Candidate&) const = default;

 private:
  std::vector<std::string> members_;
};

// "{FL, RR}" style rendering for diagnostics.
std::string describe(const Candidate& candidate);

struct ForestNode {
  Candidate candidate;
  std::vector<ForestNode> children;
};

// Enumeration structure over valid candidates: one tree per subset of the
// source modules, extended level by level with non-source modules whose
// dependencies are already present.
struct ConfigurationForest {
  std::vector<ModuleDescriptor> modules;  // descriptors the forest was built from
  std::vector<ForestNode> trees;

  std::size_t root_count() const noexcept { return trees.size(); }
  std::size_t node_count() const noexcept;
  std::size_t leaf_depth() const noexcept;  // longest child chain below any root

  // Every candidate in the forest, depth-first in deterministic order.
  std::vector<const ForestNode*> all_nodes() const;
};

// Enumerates all valid candidates. Roots are exactly the subsets of the
// source modules (the empty candidate included); every child extends its
// parent by one non-source module whose dependency relations are satisfied.
// Throws ConfigError for inconsistent descriptor sets.
ConfigurationForest build_forest(std::span<const ModuleDescriptor> modules);

// Drops every tree whose best achievable coverage (union over the root and
// all of its descendants) misses a required region. Never drops a tree that
// still contains a feasible candidate.
ConfigurationForest prune_forest(ConfigurationForest forest, const Mlam& mlam);

// Minimum-cost candidate whose members' summed performance meets the
// requirement in every required region (infinite performance always
// suffices). `current` is the configuration active on the previous cycle;
// ties are broken in its favor to keep modules from flapping, then by
// fewer members, then by the module order of `modules`.
//
// Throws InfeasibleError (naming the uncoverable regions) when no valid
// candidate satisfies the map.
Candidate optimize(const Mlam& mlam, std::span<const ModuleDescriptor> modules,
                   const Candidate& current);

}  // namespace awareness
