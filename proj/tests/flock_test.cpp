#include <gtest/gtest.h>

#include <random>

#include "epsilite/flock.hpp"
#include "test_support.hpp"

namespace {

using namespace epsilite;
using epsilite::testing::data_metamodel;
using epsilite::testing::data_model;
using epsilite::testing::data_text;

flock::Strategy strategy(const std::string& file) { return flock::parse_flock(data_text(file), file); }

Model g1(Access access = Access::read_only) { return data_model("g1.model", "graph.mm", "G", access); }

std::vector<std::string> ids_of(const Value& collection) {
  std::vector<std::string> out;
  for (const auto& v : collection.as_collection()->items) out.push_back(v.as_element().id);
  return out;
}

TEST(ParseFlock, CorpusShapes) {
  auto evolve = strategy("evolve.mig");
  ASSERT_EQ(evolve.rules.size(), 2u);
  for (const auto& r : evolve.rules) EXPECT_TRUE(std::holds_alternative<flock::MigrateRule>(r.body));

  auto deletes = strategy("delete_node_edges.mig");
  ASSERT_EQ(deletes.rules.size(), 2u);
  const auto& second = std::get<flock::DeleteRule>(deletes.rules[1].body);
  EXPECT_EQ(second.type.name, "Edge");
  EXPECT_EQ(std::get<eol::BinaryExpr>(second.when->node).op, eol::BinaryOp::or_);

  auto linked = strategy("linked.mig");
  EXPECT_EQ(linked.rules.size(), 2u);
  ASSERT_EQ(linked.operations.size(), 2u);
  for (const auto& op : linked.operations) EXPECT_EQ(op->context.model, "Original");
}

TEST(ParseFlock, Rejections) {
  EXPECT_THROW(flock::parse_flock("delete Node"), DiagnosticError);
  EXPECT_THROW(flock::parse_flock("migrate Node"), DiagnosticError);
  EXPECT_THROW(flock::parse_flock("migrate { }"), DiagnosticError);
  EXPECT_THROW(flock::parse_flock("transform Node { }"), DiagnosticError);
  EXPECT_TRUE(flock::parse_flock("").rules.empty());
}

TEST(Migrate, ReversalSwapsEveryEdge) {
  Model original = g1();
  auto result = flock::migrate_model(strategy("reverse.mig"), original, original.metamodel_ptr());
  const Model& m = result.migrated;
  EXPECT_EQ(m.name(), "Migrated");
  for (const auto& el : original.elements()) {
    if (el.type->name() != "Edge") continue;
    EXPECT_EQ(m.get_feature(el.id, "src").as_element().id, original.get_feature(el.id, "trg").as_element().id);
    EXPECT_EQ(m.get_feature(el.id, "trg").as_element().id, original.get_feature(el.id, "src").as_element().id);
  }
  for (int i = 1; i <= 4; ++i) {
    std::string id = "n" + std::to_string(i);
    EXPECT_EQ(m.get_feature(id, "name").as_string(), id);
  }
}

TEST(Migrate, EvolvedMetamodel) {
  Model original = g1();
  auto result = flock::migrate_model(strategy("evolve.mig"), original, data_metamodel("graph_evolved.mm"));
  const Model& m = result.migrated;
  EXPECT_EQ(ids_of(m.get_feature("g", "gcs")),
            (std::vector<std::string>{"n1", "n2", "n3", "n4", "e1", "e2", "e3", "e4"}));
  for (int i = 1; i <= 4; ++i) {
    std::string id = "n" + std::to_string(i);
    EXPECT_EQ(m.get_feature(id, "text").as_string(), id);
  }
  EXPECT_EQ(m.get_feature("e4", "src").as_element().id, "n2");
  EXPECT_TRUE(m.audit().empty());
}

TEST(Migrate, DeleteRulesDropNodeAndIncidentEdges) {
  Model original = g1();
  auto result = flock::migrate_model(strategy("delete_node_edges.mig"), original, original.metamodel_ptr());
  const Model& m = result.migrated;
  EXPECT_EQ(ids_of(m.get_feature("g", "nodes")), (std::vector<std::string>{"n2", "n3", "n4"}));
  EXPECT_EQ(ids_of(m.get_feature("g", "edges")), (std::vector<std::string>{"e2", "e4"}));
  EXPECT_EQ(result.map.size(), 6u);
  EXPECT_FALSE(result.map.lookup("n1"));
}

TEST(Migrate, DeletedTargetsBecomeUndefined) {
  Model original = g1();
  auto only_node = flock::parse_flock("delete Node when: original.name == \"n1\"");
  auto result = flock::migrate_model(only_node, original, original.metamodel_ptr());
  EXPECT_TRUE(result.migrated.get_feature("e1", "src").is_undefined());
  EXPECT_TRUE(result.migrated.get_feature("e3", "trg").is_undefined());
}

TEST(Migrate, LinkedMetamodelAfterEvolution) {
  Model original = g1();
  auto evolved = flock::migrate_model(strategy("evolve.mig"), original, data_metamodel("graph_evolved.mm"));
  Model step = evolved.migrated;
  step.set_access(Access::read_only);
  auto linked = flock::migrate_model(strategy("linked.mig"), step, data_metamodel("graph_linked.mm"));
  const Model& m = linked.migrated;
  EXPECT_EQ(ids_of(m.get_feature("g", "nodes")), (std::vector<std::string>{"n1", "n2", "n3", "n4"}));
  EXPECT_EQ(ids_of(m.get_feature("n1", "linksTo")), (std::vector<std::string>{"n2"}));
  EXPECT_EQ(ids_of(m.get_feature("n2", "linksTo")), (std::vector<std::string>{"n3", "n2"}));
  EXPECT_EQ(ids_of(m.get_feature("n3", "linksTo")), (std::vector<std::string>{"n1"}));
  EXPECT_TRUE(ids_of(m.get_feature("n4", "linksTo")).empty());
  EXPECT_EQ(m.all_instances(*m.metamodel().find_class("Node")).size(), 4u);
  EXPECT_EQ(m.elements().size(), 5u);
}

TEST(Migrate, RuleMatchingPrefersMostSpecificType) {
  Model original = data_model("g1.model", "graph.mm");
  auto to_evolved = flock::migrate_model(strategy("evolve.mig"), original, data_metamodel("graph_evolved.mm"));
  Model evolved = to_evolved.migrated;
  auto s = flock::parse_flock(R"(
    migrate GraphComponent { "gc ".print(); }
    migrate Node { "node ".print(); }
    delete GraphComponent when: true
    delete Edge when: false
  )");
  auto result = flock::migrate_model(s, evolved, evolved.metamodel_ptr());
  // nodes are deleted by the general rule, edges survive through the specific one
  EXPECT_EQ(result.output, "gc gc gc gc ");
  EXPECT_EQ(result.migrated.elements().size(), 5u);
}

TEST(Migrate, OriginalIsReadOnlyInsideRules) {
  Model original = g1(Access::read_write);
  std::string before = serialize_model(original);
  auto s = flock::parse_flock("migrate Node { original.name = \"x\"; }");
  try {
    flock::migrate_model(s, original, original.metamodel_ptr());
    FAIL();
  } catch (const RuntimeError& e) {
    EXPECT_TRUE(e.is_access_violation());
  }
  EXPECT_EQ(serialize_model(original), before);
  EXPECT_EQ(original.access(), Access::read_write);
}

TEST(Migrate, NonConformingResultIsAnError) {
  Model original = g1();
  auto s = flock::parse_flock("migrate Node { var other = new Migrated!Graph; other.nodes.add(migrated); }");
  auto result = flock::migrate_model(s, original, original.metamodel_ptr());
  // moving nodes into a fresh graph is legal; the result is still audited clean
  EXPECT_TRUE(result.migrated.audit().empty());
  auto bad = flock::parse_flock("migrate Node { migrated.name = 3; }");
  EXPECT_THROW(flock::migrate_model(bad, original, original.metamodel_ptr()), RuntimeError);
}

TEST(Equivalent, MapsElementsAndCollections) {
  Model original = g1();
  // the linked metamodel has no Edge, so edges are dropped during allocation
  auto result = flock::migrate_model(flock::Strategy{}, original, data_metamodel("graph_linked.mm"));
  const auto& map = result.map;
  const Model& m = result.migrated;
  Value n2 = flock::equivalent(map, original, m, original.ref("n2"));
  EXPECT_EQ(n2.as_element().id, "n2");
  EXPECT_EQ(n2.as_element().model, "Migrated");
  Value mixed = flock::equivalent(map, original, m,
                                  Value::sequence({original.ref("n1"), original.ref("e1"), original.ref("n2")}));
  EXPECT_EQ(ids_of(mixed), (std::vector<std::string>{"n1", "n2"}));
  EXPECT_TRUE(flock::equivalent(map, original, m, original.ref("e1")).is_undefined());
  EXPECT_TRUE(flock::equivalent(map, original, m, Value()).is_undefined());
  EXPECT_EQ(flock::equivalent(map, original, m, Value::set({original.ref("n1")})).as_collection()->kind,
            CollectionKind::set);
  EXPECT_THROW(flock::equivalent(map, original, m, Value(3)), ModelError);
}

// An empty strategy onto the same metamodel reproduces the original; the map
// holds every element and the original is left alone.
TEST(FlockProperty, IdentityMigration) {
  std::mt19937 rng(17);
  flock::Strategy empty;
  for (int round = 0; round < 100; ++round) {
    auto graph = epsilite::testing::random_graph(rng);
    Model original = epsilite::testing::graph_model(graph, "G", Access::read_write);
    std::string before = serialize_model(original);
    auto result = flock::migrate_model(empty, original, original.metamodel_ptr());
    EXPECT_TRUE(isomorphic(original, result.migrated));
    EXPECT_EQ(serialize_model(result.migrated), before);
    EXPECT_EQ(serialize_model(original), before);
    EXPECT_EQ(result.map.size(), original.elements().size());
  }
}

// The equivalence map holds exactly the survivors of the delete guards.
TEST(FlockProperty, MapIsExactlyTheSurvivors) {
  std::mt19937 rng(23);
  auto s = flock::parse_flock("delete Node when: original.name == \"n1\"\n"
                              "delete Edge when: original.src == original.trg");
  for (int round = 0; round < 100; ++round) {
    auto graph = epsilite::testing::random_graph(rng);
    Model original = epsilite::testing::graph_model(graph);
    auto result = flock::migrate_model(s, original, original.metamodel_ptr());
    std::vector<std::string> expected{"g"};
    for (int i = 1; i < graph.nodes; ++i) expected.push_back(epsilite::testing::node_id(i));
    for (std::size_t i = 0; i < graph.edges.size(); ++i)
      if (graph.edges[i].first != graph.edges[i].second) expected.push_back("e" + std::to_string(i + 1));
    std::vector<std::string> mapped;
    for (const auto& [from, to] : result.map.pairs()) {
      EXPECT_TRUE(original.contains(from));
      EXPECT_TRUE(result.migrated.contains(to));
      mapped.push_back(from);
    }
    EXPECT_EQ(mapped, expected);
  }
}

// Evolve then link on random graphs: linksTo is the successor relation.
TEST(FlockProperty, LinksToMatchesAdjacency) {
  std::mt19937 rng(29);
  auto evolve = strategy("evolve.mig");
  auto link = strategy("linked.mig");
  for (int round = 0; round < 100; ++round) {
    auto graph = epsilite::testing::random_graph(rng);
    Model original = epsilite::testing::graph_model(graph, "G", Access::read_only);
    Model step = flock::migrate_model(evolve, original, data_metamodel("graph_evolved.mm")).migrated;
    step.set_access(Access::read_only);
    Model final_model = flock::migrate_model(link, step, data_metamodel("graph_linked.mm")).migrated;
    auto succ = epsilite::testing::successor_oracle(graph);
    for (int i = 0; i < graph.nodes; ++i) {
      EXPECT_EQ(ids_of(final_model.get_feature(epsilite::testing::node_id(i), "linksTo")), succ[i]);
    }
  }
}

}  // namespace
