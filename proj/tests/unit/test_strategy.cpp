#include "doctest.h"
#include "helpers.hpp"
#include "smp/instances.hpp"

using namespace smp;

namespace {

ElementId E(std::uint32_t v) { return ElementId{v}; }

}  // namespace

TEST_CASE("tree construction") {
  const auto u = testing::bernoulli_universe({"a", "b", "c"});
  DecisionTree t(u);
  CHECK(t.size() == 1);
  CHECK(t.is_leaf(t.root()));
  CHECK(t.depth() == 0);
  const auto kids = t.expand(t.root(), E(0));
  REQUIRE(kids.size() == 2);
  const auto c0 = kids[0];
  const auto c1 = kids[1];
  CHECK(t.child(t.root(), testing::active(*u, "a")) == c0);
  CHECK(t.parent(c0) == t.root());
  CHECK_FALSE(t.parent(t.root()).has_value());
  CHECK_THROWS_AS(t.expand(c0, E(0)), ValidationError);
  CHECK_THROWS_AS(t.expand(t.root(), E(1)), ValidationError);
  t.expand(c0, E(1));
  CHECK(t.depth() == 2);
  CHECK(t.leaves().size() == 3);
  CHECK(t.element(t.root()) == E(0));
  CHECK_THROWS(t.element(c1));
  CHECK_THROWS(t.child(t.root(), testing::active(*u, "b")));
  const auto deep = t.children(c0)[1];
  const ProbePath p = t.path_to(deep);
  REQUIRE(p.size() == 2);
  CHECK(p[0] == Observation{E(0), TypeId{0}});
  CHECK(p[1] == Observation{E(1), TypeId{3}});
  CHECK(t.next(p) == std::nullopt);
  const std::vector<Observation> first{p[0]};
  CHECK(t.next(first) == E(1));
}

TEST_CASE("path trees and materialization") {
  const auto u = testing::bernoulli_universe({"a", "b", "c"});
  const std::vector<ElementId> seq{E(2), E(0)};
  const DecisionTree p = path_tree(u, seq);
  CHECK(p.depth() == 2);
  CHECK(p.size() == 1 + 2 + 4);
  for (auto leaf : p.leaves()) {
    const auto path = p.path_to(leaf);
    REQUIRE(path.size() == 2);
    CHECK(path[0].element == E(2));
    CHECK(path[1].element == E(0));
  }
  const DecisionTree m = materialize(p, u);
  CHECK(m == p);
  const std::vector<ElementId> repeat{E(0), E(0)};
  CHECK_THROWS_AS(path_tree(u, repeat), ValidationError);
  CHECK_THROWS_AS(materialize(p, u, 3), CapExceededError);
  const DecisionTree empty = path_tree(u, {});
  CHECK(empty.size() == 1);
}

TEST_CASE("random walk paths") {
  const auto u = testing::bernoulli_universe({"a", "b", "c"});
  DecisionTree t(u);
  const auto kids = t.expand(t.root(), E(0));
  const auto active_child = kids[0];
  const auto inactive_child = kids[1];
  t.expand(active_child, E(1));
  t.expand(inactive_child, E(2));
  TypeVector x;
  x.set(E(0), TypeId{1});
  x.set(E(2), TypeId{4});
  const ProbePath path = random_walk_path(t, x);
  REQUIRE(path.size() == 2);
  CHECK(path[1] == Observation{E(2), TypeId{4}});
  TypeVector missing;
  missing.set(E(0), TypeId{0});
  CHECK_THROWS_AS(random_walk_path(t, missing), ValidationError);
}

TEST_CASE("column strategy walks column 0 when nothing is active") {
  const InstanceBundle b = gen_submodular_lb(Number::parse("1/2"));
  REQUIRE(b.tree.has_value());
  const int depth = submodular_lb_depth(Number::parse("1/2"));
  TypeVector x;
  for (ElementId e : b.universe->elements()) x.set(e, b.universe->type_at(e, 1));
  const ProbePath path = random_walk_path(*b.tree, x);
  REQUIRE(path.size() == static_cast<std::size_t>(depth + 1));
  for (int l = 0; l <= depth; ++l) {
    CHECK(b.universe->element_name(path[l].element) == ColumnLayout::name(0, l));
  }
  TypeVector y = x;
  y.set(*b.universe->find_element(ColumnLayout::name(0, 0)), testing::active(*b.universe, ColumnLayout::name(0, 0)));
  const ProbePath jump = random_walk_path(*b.tree, y);
  REQUIRE(jump.size() >= 2);
  CHECK(b.universe->element_name(jump[1].element) == ColumnLayout::name(1, 0));
}

TEST_CASE("constraints") {
  SUBCASE("budget") {
    const Constraint c = constraint_budget({1.0, 2.0, 3.0}, 4.0);
    const std::vector<ElementId> ok{E(0), E(2)};
    const std::vector<ElementId> over{E(1), E(2)};
    CHECK(c->contains(ok));
    CHECK_FALSE(c->contains(over));
    CHECK(c->contains({}));
    CHECK_THROWS_AS(constraint_budget({-1.0}, 1.0), ValidationError);
  }
  SUBCASE("cardinality") {
    const Constraint c = constraint_cardinality(2);
    const std::vector<ElementId> two{E(0), E(1)};
    const std::vector<ElementId> three{E(0), E(1), E(2)};
    CHECK(c->contains(two));
    CHECK_FALSE(c->contains(three));
  }
  SUBCASE("dag path from a fixed start") {
    // 0 -> 1 -> 2, 0 -> 2
    const Constraint c = constraint_dag_path({{E(1), E(2)}, {E(2)}, {}}, E(0));
    const std::vector<ElementId> full{E(0), E(1), E(2)};
    const std::vector<ElementId> skip{E(0), E(2)};
    const std::vector<ElementId> wrong_start{E(1), E(2)};
    const std::vector<ElementId> backwards{E(0), E(1), E(0)};
    CHECK(c->contains(full));
    CHECK(c->contains(skip));
    CHECK_FALSE(c->contains(wrong_start));
    CHECK_FALSE(c->contains(backwards));
  }
  SUBCASE("tree fan") {
    // Root 0 with children 1, 2; 1 -> 3 and 2 -> 4. Elements: 0=(0,1), 1=(0,2), 2=(1,3), 3=(2,4), 4 not an edge.
    const Constraint c = constraint_tree_fan({TreeFanConstraint::Edge{0, 1}, TreeFanConstraint::Edge{0, 2},
                                              TreeFanConstraint::Edge{1, 3}, TreeFanConstraint::Edge{2, 4},
                                              std::nullopt},
                                             0);
    const std::vector<ElementId> siblings{E(0), E(1)};
    const std::vector<ElementId> chain{E(0), E(2)};
    const std::vector<ElementId> touches_root{E(1), E(2)};
    const std::vector<ElementId> off_path{E(2), E(3)};
    CHECK(c->contains(siblings));
    CHECK(c->contains(chain));
    CHECK(c->contains(touches_root));
    CHECK_FALSE(c->contains(off_path));
    const std::vector<ElementId> not_edge{E(4)};
    CHECK_THROWS_AS(c->contains(not_edge), ValidationError);
    CHECK_THROWS_AS(constraint_tree_fan({TreeFanConstraint::Edge{0, 1}, TreeFanConstraint::Edge{1, 0}}, 0),
                    ValidationError);
  }
  SUBCASE("table") {
    const Constraint c = constraint_table({{E(0)}, {E(0), E(1)}});
    const std::vector<ElementId> both{E(0), E(1)};
    const std::vector<ElementId> other{E(1)};
    CHECK(c->contains(both));
    CHECK_FALSE(c->contains(other));
  }
}

TEST_CASE("tree feasibility") {
  const auto u = testing::bernoulli_universe({"a", "b", "c"});
  const DecisionTree leaf(u);
  CHECK(check_tree_feasible(leaf, *constraint_cardinality(0)).feasible);
  const std::vector<ElementId> seq{E(0), E(1), E(2)};
  const DecisionTree deep = path_tree(u, seq);
  CHECK(check_tree_feasible(deep, *constraint_cardinality(3)).feasible);
  const FeasibilityResult r = check_tree_feasible(deep, *constraint_cardinality(2));
  CHECK_FALSE(r.feasible);
  CHECK(r.witness == seq);
  const std::vector<ElementId> prefix{E(0), E(1)};
  const auto table = constraint_table({{E(0)}, prefix});
  CHECK(check_tree_feasible(path_tree(u, prefix), *table).feasible);
}

TEST_CASE("reference trees of the constructions are feasible") {
  for (const char* eps : {"1/2", "3/10"}) {
    const InstanceBundle b = gen_submodular_lb(Number::parse(eps));
    REQUIRE(b.tree.has_value());
    CHECK(check_tree_feasible(*b.tree, *b.constraint).feasible);
  }
  const InstanceBundle t = gen_tree_lb(2, 2, Number::parse("1/2"));
  REQUIRE(t.tree.has_value());
  CHECK(check_tree_feasible(*t.tree, *t.constraint).feasible);
}
