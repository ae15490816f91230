#include "awareness/config_search.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <map>
#include <set>

#include "awareness/errors.hpp"

namespace awareness {

Candidate::Candidate(std::initializer_list<std::string_view> members) {
  members_.reserve(members.size());
  for (std::string_view m : members) members_.emplace_back(m);
  std::sort(members_.begin(), members_.end());
  members_.erase(std::unique(members_.begin(), members_.end()), members_.end());
}

Candidate::Candidate(std::vector<std::string> members)
    : members_(std::move(members)) {
  std::sort(members_.begin(), members_.end());
  members_.erase(std::unique(members_.begin(), members_.end()), members_.end());
}

bool Candidate::contains(std::string_view id) const noexcept {
  return std::binary_search(members_.begin(), members_.end(), id);
}

std::size_t Candidate::overlap(const Candidate& other) const noexcept {
  std::size_t n = 0;
  for (const auto& m : members_) {
    if (other.contains(m)) ++n;
  }
  return n;
}

std::string describe(const Candidate& candidate) {
  std::string out = "{";
  for (std::size_t i = 0; i < candidate.members().size(); ++i) {
    if (i > 0) out += ", ";
    out += candidate.members()[i];
  }
  out += "}";
  return out;
}

namespace {

std::size_t count_nodes(const ForestNode& node) {
  std::size_t n = 1;
  for (const auto& child : node.children) n += count_nodes(child);
  return n;
}

std::size_t depth_below(const ForestNode& node) {
  std::size_t d = 0;
  for (const auto& child : node.children) {
    d = std::max(d, 1 + depth_below(child));
  }
  return d;
}

void collect_nodes(const ForestNode& node, std::vector<const ForestNode*>& out) {
  out.push_back(&node);
  for (const auto& child : node.children) collect_nodes(child, out);
}

}  // namespace

std::size_t ConfigurationForest::node_count() const noexcept {
  std::size_t n = 0;
  for (const auto& tree : trees) n += count_nodes(tree);
  return n;
}

std::size_t ConfigurationForest::leaf_depth() const noexcept {
  std::size_t d = 0;
  for (const auto& tree : trees) d = std::max(d, depth_below(tree));
  return d;
}

std::vector<const ForestNode*> ConfigurationForest::all_nodes() const {
  std::vector<const ForestNode*> out;
  for (const auto& tree : trees) collect_nodes(tree, out);
  return out;
}

namespace {

// Index-mask view of the descriptor list used during the search. Masks keep
// subset operations exact and cheap; ids only reappear at the interface.
struct SearchContext {
  std::span<const ModuleDescriptor> modules;
  std::vector<std::size_t> sources;
  std::vector<std::size_t> non_sources;
  // Per non-source module: indices its dependency relations point at.
  std::map<std::size_t, std::vector<std::size_t>> dependencies;

  std::size_t index_of(std::string_view id) const {
    for (std::size_t i = 0; i < modules.size(); ++i) {
      if (modules[i].id == id) return i;
    }
    return modules.size();
  }
};

SearchContext make_context(std::span<const ModuleDescriptor> modules) {
  if (modules.size() > 32) {
    throw ConfigError("configuration search supports at most 32 modules");
  }
  validate_fixture(std::vector<ModuleDescriptor>(modules.begin(), modules.end()), {});
  SearchContext ctx{modules, {}, {}, {}};
  for (std::size_t i = 0; i < modules.size(); ++i) {
    if (modules[i].is_source) {
      ctx.sources.push_back(i);
    } else {
      ctx.non_sources.push_back(i);
      for (const auto& rel : modules[i].relations) {
        if (rel.kind == Relation::Kind::Dependency) {
          ctx.dependencies[i].push_back(ctx.index_of(rel.object));
        }
      }
    }
  }
  return ctx;
}

using Mask = std::uint32_t;

bool dependencies_satisfied(const SearchContext& ctx, std::size_t module_index,
                            Mask members) {
  auto it = ctx.dependencies.find(module_index);
  if (it == ctx.dependencies.end()) return true;
  for (std::size_t dep : it->second) {
    if ((members & (Mask{1} << dep)) == 0) return false;
  }
  return true;
}

Candidate candidate_from_mask(const SearchContext& ctx, Mask mask) {
  std::vector<std::string> members;
  for (std::size_t i = 0; i < ctx.modules.size(); ++i) {
    if (mask & (Mask{1} << i)) members.push_back(ctx.modules[i].id);
  }
  return Candidate(std::move(members));
}

// Expands a node with every non-source module admissible on top of it.
// Visited-set per tree: the same member set never appears twice in a tree.
void expand_node(const SearchContext& ctx, Mask members, ForestNode& node,
                 std::set<Mask>& visited) {
  for (std::size_t i : ctx.non_sources) {
    const Mask bit = Mask{1} << i;
    if (members & bit) continue;
    if (!dependencies_satisfied(ctx, i, members)) continue;
    const Mask next = members | bit;
    if (!visited.insert(next).second) continue;
    ForestNode child;
    child.candidate = candidate_from_mask(ctx, next);
    expand_node(ctx, next, child, visited);
    node.children.push_back(std::move(child));
  }
}

RegionSet mask_coverage(const SearchContext& ctx, Mask mask) {
  RegionSet covered;
  for (std::size_t i = 0; i < ctx.modules.size(); ++i) {
    if (mask & (Mask{1} << i)) covered |= ctx.modules[i].coverage;
  }
  return covered;
}

Mask mask_of(const SearchContext& ctx, const Candidate& candidate) {
  Mask mask = 0;
  for (const auto& id : candidate.members()) {
    const std::size_t i = ctx.index_of(id);
    if (i < ctx.modules.size()) mask |= Mask{1} << i;
  }
  return mask;
}

RegionSet tree_coverage(const SearchContext& ctx, const ForestNode& node) {
  RegionSet covered = mask_coverage(ctx, mask_of(ctx, node.candidate));
  for (const auto& child : node.children) {
    covered |= tree_coverage(ctx, child);
  }
  return covered;
}

// Per-region check of the aggregated performance constraint: summed
// performance of the covering members must reach the requirement, where any
// infinite member settles the region on its own.
bool feasible(const SearchContext& ctx, Mask members, const Mlam& mlam) {
  for (Region r : kAllRegions) {
    const int req = mlam.at(r);
    if (req <= 0) continue;
    double sum = 0.0;
    bool satisfied = false;
    for (std::size_t i = 0; i < ctx.modules.size(); ++i) {
      if ((members & (Mask{1} << i)) == 0) continue;
      if (!ctx.modules[i].coverage.contains(r)) continue;
      if (std::isinf(ctx.modules[i].performance)) {
        satisfied = true;
        break;
      }
      sum += ctx.modules[i].performance;
    }
    if (!satisfied && sum < static_cast<double>(req)) return false;
  }
  return true;
}

double mask_cost(const SearchContext& ctx, Mask mask) {
  double cost = 0.0;
  for (std::size_t i = 0; i < ctx.modules.size(); ++i) {
    if (mask & (Mask{1} << i)) cost += ctx.modules[i].cost;
  }
  return cost;
}

std::vector<std::size_t> sorted_indices(const SearchContext& ctx, Mask mask) {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < ctx.modules.size(); ++i) {
    if (mask & (Mask{1} << i)) out.push_back(i);
  }
  return out;
}

struct Ranked {
  Mask mask = 0;
  double cost = 0.0;
  std::size_t overlap = 0;
  std::size_t size = 0;
  std::vector<std::size_t> order;  // member indices, ascending
};

// Selection order: cheapest first, then largest overlap with the previous
// configuration (activation hysteresis), then fewest members, then the
// earliest member sequence in descriptor order.
bool better(const Ranked& a, const Ranked& b) {
  if (a.cost != b.cost) return a.cost < b.cost;
  if (a.overlap != b.overlap) return a.overlap > b.overlap;
  if (a.size != b.size) return a.size < b.size;
  return std::lexicographical_compare(a.order.begin(), a.order.end(),
                                      b.order.begin(), b.order.end());
}

}  // namespace

ConfigurationForest build_forest(std::span<const ModuleDescriptor> modules) {
  const SearchContext ctx = make_context(modules);

  ConfigurationForest forest;
  forest.modules.assign(modules.begin(), modules.end());

  const std::size_t n_sources = ctx.sources.size();
  for (Mask subset = 0; subset < (Mask{1} << n_sources); ++subset) {
    Mask members = 0;
    for (std::size_t j = 0; j < n_sources; ++j) {
      if (subset & (Mask{1} << j)) members |= Mask{1} << ctx.sources[j];
    }
    ForestNode root;
    root.candidate = candidate_from_mask(ctx, members);
    std::set<Mask> visited{members};
    expand_node(ctx, members, root, visited);
    forest.trees.push_back(std::move(root));
  }
  return forest;
}

ConfigurationForest prune_forest(ConfigurationForest forest, const Mlam& mlam) {
  const SearchContext ctx = make_context(forest.modules);
  const RegionSet required = mlam.required_regions();

  std::vector<ForestNode> kept;
  for (auto& tree : forest.trees) {
    if (tree_coverage(ctx, tree).contains_all(required)) {
      kept.push_back(std::move(tree));
    }
  }
  forest.trees = std::move(kept);
  return forest;
}

Candidate optimize(const Mlam& mlam, std::span<const ModuleDescriptor> modules,
                   const Candidate& current) {
  const SearchContext ctx = make_context(modules);
  const ConfigurationForest forest =
      prune_forest(build_forest(modules), mlam);

  const Mask current_mask = mask_of(ctx, current);

  bool found = false;
  Ranked best;
  for (const ForestNode* node : forest.all_nodes()) {
    const Mask mask = mask_of(ctx, node->candidate);
    if (!feasible(ctx, mask, mlam)) continue;
    Ranked entry;
    entry.mask = mask;
    entry.cost = mask_cost(ctx, mask);
    entry.overlap = static_cast<std::size_t>(
        std::popcount(static_cast<Mask>(mask & current_mask)));
    entry.size = static_cast<std::size_t>(std::popcount(mask));
    entry.order = sorted_indices(ctx, mask);
    if (!found || better(entry, best)) {
      best = std::move(entry);
      found = true;
    }
  }

  if (!found) {
    // The full module set is the most capable candidate; regions it cannot
    // satisfy are the ones making the requirement infeasible.
    Mask full = 0;
    for (std::size_t i = 0; i < ctx.modules.size(); ++i) full |= Mask{1} << i;
    std::vector<std::string> uncovered;
    for (Region r : kAllRegions) {
      const int req = mlam.at(r);
      if (req <= 0) continue;
      Mlam single;
      single.set(r, req);
      if (!feasible(ctx, full, single)) {
        uncovered.emplace_back(region_name(r));
      }
    }
    std::string msg = "no module combination satisfies the attention map";
    if (!uncovered.empty()) {
      msg += "; uncoverable regions: ";
      for (std::size_t i = 0; i < uncovered.size(); ++i) {
        if (i > 0) msg += ", ";
        msg += uncovered[i];
      }
    }
    throw InfeasibleError(msg, std::move(uncovered));
  }

  return candidate_from_mask(ctx, best.mask);
}

}  // namespace awareness
