#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <random>
#include <set>

#include "awareness/config_search.hpp"
#include "awareness/errors.hpp"
#include "support/oracles.hpp"

using awareness::Candidate;
using awareness::ConfigurationForest;
using awareness::Directional;
using awareness::Lateral;
using awareness::Mlam;
using awareness::ModuleDescriptor;
using awareness::Region;
using awareness::RegionSet;
using awareness::Situation;

namespace {

ModuleDescriptor source(std::string id, RegionSet coverage, double cost = 1.0) {
  ModuleDescriptor m;
  m.id = std::move(id);
  m.cost = cost;
  m.performance = std::numeric_limits<double>::infinity();
  m.coverage = coverage;
  m.is_source = true;
  return m;
}

ModuleDescriptor dependent(std::string id, std::string on, RegionSet coverage) {
  ModuleDescriptor m;
  m.id = std::move(id);
  m.coverage = coverage;
  m.is_source = false;
  m.performance = std::numeric_limits<double>::infinity();
  awareness::Relation rel;
  rel.kind = awareness::Relation::Kind::Dependency;
  rel.subject = m.id;
  rel.object = std::move(on);
  m.relations.push_back(rel);
  return m;
}

std::set<Candidate> root_candidates(const ConfigurationForest& forest) {
  std::set<Candidate> out;
  for (const auto& tree : forest.trees) out.insert(tree.candidate);
  return out;
}

}  // namespace

TEST_CASE("fixture coverage matches the vehicle table") {
  const auto fixture = awareness::unicaragil_fixture();
  REQUIRE(fixture.modules.size() == 4);
  CHECK(fixture.warnings.empty());

  const auto& fl = fixture.modules[0];
  const auto& fr = fixture.modules[1];
  const auto& rl = fixture.modules[2];
  const auto& rr = fixture.modules[3];
  CHECK(fl.id == "FL");
  CHECK(fl.coverage ==
        RegionSet{Region::Fl, Region::F, Region::Fr, Region::Bl, Region::L});
  CHECK(fr.coverage ==
        RegionSet{Region::Fl, Region::F, Region::Fr, Region::R, Region::Br});
  CHECK(rl.coverage ==
        RegionSet{Region::Fl, Region::Br, Region::B, Region::Bl, Region::L});
  CHECK(rr.coverage ==
        RegionSet{Region::Fr, Region::R, Region::Br, Region::B, Region::Bl});
  for (const auto& m : fixture.modules) {
    CHECK(m.coverage.size() == 5);
    CHECK(m.cost == 1.0);
    CHECK(std::isinf(m.performance));
    CHECK(m.is_source);
    CHECK(m.relations.empty());
  }
}

TEST_CASE("forest over the fixture has 16 roots and no children") {
  const auto fixture = awareness::unicaragil_fixture();
  const auto forest = build_forest(fixture.modules);
  CHECK(forest.root_count() == 16);
  CHECK(forest.node_count() == 16);
  CHECK(forest.leaf_depth() == 0);

  const auto roots = root_candidates(forest);
  CHECK(roots.size() == 16);
  CHECK(roots.count(Candidate{}));
  CHECK(roots.count(Candidate{"FL", "FR", "RL", "RR"}));
}

TEST_CASE("forest over no modules has the single empty root") {
  const auto forest = build_forest(std::vector<ModuleDescriptor>{});
  CHECK(forest.root_count() == 1);
  CHECK(forest.trees[0].candidate.empty());
  CHECK(forest.trees[0].children.empty());
}

TEST_CASE("forest expands non-source modules under satisfied dependencies") {
  const std::vector<ModuleDescriptor> modules = {
      source("A", {Region::Fl}),
      source("B", {Region::F}),
      dependent("C", "A", {Region::Fr}),
  };
  const auto forest = build_forest(modules);
  CHECK(forest.root_count() == 4);
  CHECK(forest.node_count() == 6);
  CHECK(forest.leaf_depth() == 1);

  const auto roots = root_candidates(forest);
  CHECK(roots == std::set<Candidate>{Candidate{}, Candidate{"A"}, Candidate{"B"},
                                     Candidate{"A", "B"}});
  for (const auto& tree : forest.trees) {
    if (tree.candidate == Candidate{"A"}) {
      REQUIRE(tree.children.size() == 1);
      CHECK(tree.children[0].candidate == Candidate{"A", "C"});
    } else if (tree.candidate == Candidate{"A", "B"}) {
      REQUIRE(tree.children.size() == 1);
      CHECK(tree.children[0].candidate == Candidate{"A", "B", "C"});
    } else {
      CHECK(tree.children.empty());
    }
  }
}

TEST_CASE("forest construction rejects inconsistent descriptor sets") {
  auto a = source("A", {Region::Fl});
  CHECK_THROWS_AS(build_forest(std::vector<ModuleDescriptor>{a, a}),
                  awareness::ConfigError);

  CHECK_THROWS_AS(
      build_forest(std::vector<ModuleDescriptor>{
          a, dependent("C", "missing", {Region::F})}),
      awareness::ConfigError);

  ModuleDescriptor orphan;
  orphan.id = "orphan";
  orphan.is_source = false;
  orphan.coverage = {Region::F};
  CHECK_THROWS_AS(build_forest(std::vector<ModuleDescriptor>{a, orphan}),
                  awareness::ConfigError);
}

TEST_CASE("pruning drops trees that cannot reach a required region") {
  const auto fixture = awareness::unicaragil_fixture();
  const auto forest = build_forest(fixture.modules);

  SUBCASE("forward map keeps only trees touching the front") {
    const Mlam mlam = build_mlam(Situation(Directional::Forward, Lateral::None));
    const auto pruned = prune_forest(forest, mlam);
    CHECK(pruned.root_count() == 12);
    const auto roots = root_candidates(pruned);
    CHECK(!roots.count(Candidate{}));
    CHECK(!roots.count(Candidate{"RL"}));
    CHECK(!roots.count(Candidate{"RR"}));
    CHECK(!roots.count(Candidate{"RL", "RR"}));
  }

  SUBCASE("all-zero map prunes nothing") {
    const auto pruned = prune_forest(forest, Mlam{});
    CHECK(pruned.root_count() == 16);
  }

  SUBCASE("full surround map prunes every insufficient union") {
    const Mlam mlam =
        build_mlam(Situation(Directional::Maneuvering, Lateral::None));
    const auto pruned = prune_forest(forest, mlam);
    const auto roots = root_candidates(pruned);
    for (const auto& single : {"FL", "FR", "RL", "RR"}) {
      CHECK(!roots.count(Candidate{single}));
    }
    CHECK(!roots.count(Candidate{}));
    // The two diagonal pairs are the only pairs seeing all eight regions.
    CHECK(roots.count(Candidate{"FL", "RR"}));
    CHECK(roots.count(Candidate{"FR", "RL"}));
    CHECK(!roots.count(Candidate{"FL", "FR"}));
    CHECK(!roots.count(Candidate{"RL", "RR"}));
    CHECK(pruned.root_count() == 7);
  }
}

TEST_CASE("optimizer picks the cheapest covering configuration") {
  const auto fixture = awareness::unicaragil_fixture();
  const Mlam forward = build_mlam(Situation(Directional::Forward, Lateral::None));
  const Mlam surround =
      build_mlam(Situation(Directional::Maneuvering, Lateral::None));

  CHECK(optimize(forward, fixture.modules, Candidate{}) == Candidate{"FL"});
  CHECK(optimize(forward, fixture.modules, Candidate{"FR"}) == Candidate{"FR"});
  CHECK(optimize(surround, fixture.modules, Candidate{"FL"}) ==
        Candidate{"FL", "RR"});
  CHECK(optimize(surround, fixture.modules, Candidate{"RL"}) ==
        Candidate{"FR", "RL"});
  CHECK(optimize(surround, fixture.modules, Candidate{}) == Candidate{"FL", "RR"});
  CHECK(optimize(Mlam{}, fixture.modules, Candidate{"FL", "RR"}) == Candidate{});
}

TEST_CASE("optimizer reports uncoverable regions") {
  const std::vector<ModuleDescriptor> modules = {
      source("RL", {Region::Fl, Region::Br, Region::B, Region::Bl, Region::L}),
      source("RR", {Region::Fr, Region::R, Region::Br, Region::B, Region::Bl}),
  };
  const Mlam forward = build_mlam(Situation(Directional::Forward, Lateral::None));
  try {
    optimize(forward, modules, Candidate{});
    FAIL("expected infeasibility");
  } catch (const awareness::InfeasibleError& e) {
    CHECK(e.uncovered_regions() == std::vector<std::string>{"f"});
  }
}

TEST_CASE("optimizer equals brute force on the fixture sweep") {
  const auto fixture = awareness::unicaragil_fixture();
  for (const auto& mlam_case : oracles::canonical_mlams()) {
    const Mlam mlam = oracles::to_mlam(mlam_case.expected);
    for (const Candidate& current : oracles::fixture_current_sets()) {
      CAPTURE(mlam_case.label);
      CAPTURE(describe(current));
      const auto expected =
          oracles::brute_force_optimize(mlam, fixture.modules, current);
      REQUIRE(expected.feasible);
      CHECK(optimize(mlam, fixture.modules, current) == expected.candidate);
    }
  }
}

TEST_CASE("optimizer cost never grows when requirements are dropped") {
  const auto fixture = awareness::unicaragil_fixture();
  const auto cost_of = [&](const Candidate& c) {
    double cost = 0.0;
    for (const auto& id : c.members()) {
      for (const auto& m : fixture.modules) {
        if (m.id == id) cost += m.cost;
      }
    }
    return cost;
  };

  for (const auto& mlam_case : oracles::canonical_mlams()) {
    const Mlam full = oracles::to_mlam(mlam_case.expected);
    const double full_cost = cost_of(optimize(full, fixture.modules, Candidate{}));
    const auto required = full.required_regions().regions();

    // Every subset of the required regions zeroed out.
    for (std::uint32_t mask = 0; mask < (1u << required.size()); ++mask) {
      Mlam reduced = full;
      for (std::size_t i = 0; i < required.size(); ++i) {
        if (mask & (1u << i)) reduced.set(required[i], 0);
      }
      const double reduced_cost =
          cost_of(optimize(reduced, fixture.modules, Candidate{}));
      CHECK(reduced_cost <= full_cost);
    }
  }
}

TEST_CASE("optimizer equals brute force on randomized instances") {
  std::mt19937 rng(42);
  int infeasible_seen = 0;
  for (int i = 0; i < 200; ++i) {
    const auto inst = oracles::random_instance(rng);
    CAPTURE(i);
    const auto expected =
        oracles::brute_force_optimize(inst.mlam, inst.modules, inst.current);
    if (expected.feasible) {
      CHECK(optimize(inst.mlam, inst.modules, inst.current) == expected.candidate);
    } else {
      ++infeasible_seen;
      CHECK_THROWS_AS(optimize(inst.mlam, inst.modules, inst.current),
                      awareness::InfeasibleError);
    }
  }
  CHECK(infeasible_seen > 0);  // the sweep exercises both outcomes
}

TEST_CASE("finite performances aggregate per region") {
  // Two cost-1 modules of performance 1 must team up against requirement 2
  // even though either alone covers the region.
  std::vector<ModuleDescriptor> modules = {
      source("A", {Region::F}), source("B", {Region::F}),
      source("C", {Region::F}, 2.5)};
  modules[0].performance = 1.0;
  modules[1].performance = 1.0;
  modules[2].performance = 2.0;

  Mlam mlam;
  mlam.set(Region::F, 2);
  CHECK(optimize(mlam, modules, Candidate{}) == Candidate{"A", "B"});

  // Requirement 3 forces the strong module in; the full set only pays off
  // once the requirement exceeds what any pair can sum to.
  mlam.set(Region::F, 3);
  CHECK(optimize(mlam, modules, Candidate{}) == Candidate{"A", "C"});

  mlam.set(Region::F, 4);
  CHECK(optimize(mlam, modules, Candidate{}) == Candidate{"A", "B", "C"});

  mlam.set(Region::F, 5);
  CHECK_THROWS_AS(optimize(mlam, modules, Candidate{}),
                  awareness::InfeasibleError);

  // A randomized sweep with strictly finite performances.
  std::mt19937 rng(7);
  for (int i = 0; i < 100; ++i) {
    auto inst = oracles::random_instance(rng, 5);
    for (auto& m : inst.modules) {
      if (std::isinf(m.performance)) m.performance = 2.0;
      m.is_source = true;
      m.relations.clear();
    }
    const auto expected =
        oracles::brute_force_optimize(inst.mlam, inst.modules, inst.current);
    if (expected.feasible) {
      CHECK(optimize(inst.mlam, inst.modules, inst.current) == expected.candidate);
    } else {
      CHECK_THROWS_AS(optimize(inst.mlam, inst.modules, inst.current),
                      awareness::InfeasibleError);
    }
  }
}

TEST_CASE("bundled descriptor file equals the built-in fixture") {
  const auto bundled = awareness::load_fixture(
      std::filesystem::path(TEST_DATA_DIR) / "unicaragil_modules.json");
  const auto builtin = awareness::unicaragil_fixture();
  CHECK(bundled.modules == builtin.modules);
  CHECK(bundled.layouts == builtin.layouts);
  CHECK(bundled.warnings.empty());
}

TEST_CASE("descriptor files are validated on load") {
  namespace fs = std::filesystem;
  const auto write = [](const std::string& name, const std::string& content) {
    const fs::path path = fs::temp_directory_path() / name;
    std::ofstream out(path, std::ios::binary);
    out << content;
    return path;
  };

  SUBCASE("dependency relations load and carry warnings for linkability") {
    const auto path = write("fixture_rel.json", R"({
      "modules": [
        {"id": "A", "coverage": ["fl"]},
        {"id": "B", "coverage": ["f"], "is_source": false,
         "relations": [{"kind": "dependency", "object": "A"},
                       {"kind": "linkability", "object": "A"}]}
      ]
    })");
    const auto fixture = awareness::load_fixture(path);
    REQUIRE(fixture.modules.size() == 2);
    CHECK(fixture.modules[1].relations.size() == 2);
    CHECK(fixture.modules[1].relations[0].subject == "B");
    CHECK(fixture.modules[1].relations[0].object == "A");
    REQUIRE(fixture.warnings.size() == 1);
    CHECK(fixture.warnings[0].find("linkability") != std::string::npos);
  }

  SUBCASE("unknown region names are rejected") {
    const auto path = write("fixture_bad_region.json",
                            R"({"modules": [{"id": "A", "coverage": ["zz"]}]})");
    CHECK_THROWS_AS(awareness::load_fixture(path), awareness::ConfigError);
  }

  SUBCASE("quadrants must cover exactly the declared coverage") {
    const auto path = write("fixture_bad_quads.json", R"({
      "modules": [{"id": "A", "coverage": ["fl", "f"],
                   "quadrants": [["fl"], ["f"], ["fr"]]}]
    })");
    CHECK_THROWS_AS(awareness::load_fixture(path), awareness::ConfigError);
  }

  SUBCASE("quadrant lists need three entries") {
    const auto path = write("fixture_two_quads.json", R"({
      "modules": [{"id": "A", "coverage": ["fl", "f"],
                   "quadrants": [["fl"], ["f"]]}]
    })");
    CHECK_THROWS_AS(awareness::load_fixture(path), awareness::ConfigError);
  }

  SUBCASE("unknown relation kinds and targets are rejected") {
    const auto kind = write("fixture_bad_kind.json", R"({
      "modules": [{"id": "A", "coverage": ["fl"],
                   "relations": [{"kind": "tangles", "object": "A"}]}]
    })");
    CHECK_THROWS_AS(awareness::load_fixture(kind), awareness::ConfigError);

    const auto target = write("fixture_bad_target.json", R"({
      "modules": [{"id": "A", "coverage": ["fl"],
                   "relations": [{"kind": "dependency", "object": "Z"}]}]
    })");
    CHECK_THROWS_AS(awareness::load_fixture(target), awareness::ConfigError);
  }

  SUBCASE("broken json reports a parse error") {
    const auto path = write("fixture_broken.json", "{\"modules\": [\n  {oops\n]}");
    CHECK_THROWS_AS(awareness::load_fixture(path), awareness::ParseError);
    CHECK_THROWS_AS(awareness::load_fixture("/nonexistent/fixture.json"),
                    awareness::ParseError);
  }

  SUBCASE("finite performance numbers load as numbers") {
    const auto path = write("fixture_finite.json", R"({
      "modules": [{"id": "A", "coverage": ["fl"], "performance": 2.0},
                  {"id": "B", "coverage": ["f"], "performance": "inf"}]
    })");
    const auto fixture = awareness::load_fixture(path);
    CHECK(fixture.modules[0].performance == 2.0);
    CHECK(std::isinf(fixture.modules[1].performance));
  }
}

TEST_CASE("candidate value semantics") {
  const Candidate c{"FR", "FL", "FR"};
  CHECK(c.size() == 2);
  CHECK(c.members() == std::vector<std::string>{"FL", "FR"});
  CHECK(c.contains("FL"));
  CHECK(!c.contains("RL"));
  CHECK(c.overlap(Candidate{"FR", "RR"}) == 1);
  CHECK(describe(c) == "{FL, FR}");
  CHECK(describe(Candidate{}) == "{}");
}
