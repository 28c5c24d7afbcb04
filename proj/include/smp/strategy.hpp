#pragma once

// Adaptive decision trees, prefix-closed probing constraints, feasibility
// checking and random-walk path extraction.

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "smp/core.hpp"

namespace smp {

using ProbePath = std::vector<Observation>;

/// Anything that picks the next probe from the observations so far. Explicit
/// trees implement it; so do rule-based strategies whose trees are too large
/// to materialize.
class ProbeStrategy {
 public:
  virtual ~ProbeStrategy() = default;
  // Next element to probe after `path`, or nullopt to stop.
  virtual std::optional<ElementId> next(std::span<const Observation> path) const = 0;
};

/// Rooted decision tree. Internal nodes carry an element and exactly one
/// child per type of that element (in type order); no element repeats on a
/// root-leaf path.
class DecisionTree final : public ProbeStrategy {
 public:
  using NodeId = std::uint32_t;

  // A tree consisting of a single leaf.
  explicit DecisionTree(UniversePtr universe);

  NodeId root() const { return 0; }
  std::size_t size() const { return nodes_.size(); }
  const Universe& universe() const { return *universe_; }
  const UniversePtr& universe_ptr() const { return universe_; }

  // Turns leaf `node` into an internal node probing `e`, with one fresh leaf
  // per type. Returns the children. Throws if `node` is internal or `e`
  // already appears on the path to `node`.
  std::span<const NodeId> expand(NodeId node, ElementId e);

  bool is_leaf(NodeId n) const { return !nodes_.at(n).element.has_value(); }
  ElementId element(NodeId n) const;
  std::span<const NodeId> children(NodeId n) const { return nodes_.at(n).children; }
  NodeId child(NodeId n, TypeId t) const;
  std::optional<NodeId> parent(NodeId n) const;
  // Number of internal nodes on the longest root-leaf path.
  std::size_t depth() const;
  std::vector<NodeId> leaves() const;
  // Observations along the root path to `n`.
  ProbePath path_to(NodeId n) const;

  std::optional<ElementId> next(std::span<const Observation> path) const override;

  friend bool operator==(const DecisionTree& a, const DecisionTree& b);

 private:
  struct Node {
    std::optional<ElementId> element;
    std::vector<NodeId> children;
    std::optional<NodeId> parent;
  };
  UniversePtr universe_;
  std::vector<Node> nodes_;
};

// Follows arc X_e at every node; throws ValidationError if the vector misses an element on the way.
ProbePath random_walk_path(const DecisionTree& tree, const TypeVector& vector);

// Explicit tree of `strategy`, expanding every type at every probe. Throws
// CapExceededError beyond `node_cap` nodes.
DecisionTree materialize(const ProbeStrategy& strategy, UniversePtr universe, std::size_t node_cap = 1u << 20);

// Non-branching tree that probes `sequence` regardless of outcomes.
DecisionTree path_tree(UniversePtr universe, std::span<const ElementId> sequence);

enum class ConstraintKind { budget, cardinality, dag_path, tree_fan, table };

const char* to_string(ConstraintKind kind);

/// Family C of feasible probing sequences. A sequence is feasible iff every
/// step passes may_extend, which makes C prefix-closed by construction.
class ConstraintOracle {
 public:
  virtual ~ConstraintOracle() = default;
  virtual bool may_extend(std::span<const ElementId> prefix, ElementId next) const = 0;
  virtual ConstraintKind kind() const = 0;
  // Membership of a whole sequence. Stepwise by default; explicit tables
  // answer directly, which is what check_prefix_closed audits.
  virtual bool contains(std::span<const ElementId> sequence) const;
};

using Constraint = std::shared_ptr<const ConstraintOracle>;

class BudgetConstraint final : public ConstraintOracle {
 public:
  BudgetConstraint(std::vector<double> cost, double budget);
  bool may_extend(std::span<const ElementId> prefix, ElementId next) const override;
  ConstraintKind kind() const override { return ConstraintKind::budget; }
  const std::vector<double>& cost() const { return cost_; }
  double budget() const { return budget_; }

 private:
  std::vector<double> cost_;
  double budget_;
};

class CardinalityConstraint final : public ConstraintOracle {
 public:
  explicit CardinalityConstraint(std::size_t max_length) : max_(max_length) {}
  bool may_extend(std::span<const ElementId> prefix, ElementId) const override { return prefix.size() < max_; }
  ConstraintKind kind() const override { return ConstraintKind::cardinality; }
  std::size_t max_length() const { return max_; }

 private:
  std::size_t max_;
};

/// Directed paths starting at `start` in the graph given by `arcs`.
class DagPathConstraint final : public ConstraintOracle {
 public:
  DagPathConstraint(std::vector<std::vector<ElementId>> arcs, ElementId start);
  bool may_extend(std::span<const ElementId> prefix, ElementId next) const override;
  ConstraintKind kind() const override { return ConstraintKind::dag_path; }
  const std::vector<std::vector<ElementId>>& arcs() const { return arcs_; }
  ElementId start() const { return start_; }

 private:
  std::vector<std::vector<ElementId>> arcs_;  // sorted per source
  ElementId start_;
};

/// Elements are edges of a rooted tree. A sequence is feasible while some
/// root-leaf vertex path touches an endpoint of every probed edge.
class TreeFanConstraint final : public ConstraintOracle {
 public:
  struct Edge {
    std::uint32_t parent;
    std::uint32_t child;
    friend bool operator==(const Edge&, const Edge&) = default;
  };
  // edges[e] is the edge for element e; nullopt marks elements that are not edges.
  TreeFanConstraint(std::vector<std::optional<Edge>> edges, std::uint32_t root);
  bool may_extend(std::span<const ElementId> prefix, ElementId next) const override;
  ConstraintKind kind() const override { return ConstraintKind::tree_fan; }
  const std::vector<std::optional<Edge>>& edges() const { return edges_; }
  std::uint32_t root() const { return root_; }

 private:
  // Leaves (in DFS order) below the edge's parent vertex: [first, last).
  std::pair<std::uint32_t, std::uint32_t> leaf_range(ElementId e) const;
  std::vector<std::optional<Edge>> edges_;
  std::uint32_t root_;
  std::vector<std::pair<std::uint32_t, std::uint32_t>> range_of_vertex_;
};

/// Explicit list of feasible sequences; may violate prefix-closure.
class TableConstraint final : public ConstraintOracle {
 public:
  explicit TableConstraint(std::vector<std::vector<ElementId>> sequences);
  bool may_extend(std::span<const ElementId> prefix, ElementId next) const override;
  bool contains(std::span<const ElementId> sequence) const override;
  ConstraintKind kind() const override { return ConstraintKind::table; }
  const std::vector<std::vector<ElementId>>& sequences() const { return sequences_; }

 private:
  std::vector<std::vector<ElementId>> sequences_;  // sorted
};

Constraint constraint_budget(std::vector<double> cost, double budget);
Constraint constraint_cardinality(std::size_t max_length);
Constraint constraint_dag_path(std::vector<std::vector<ElementId>> arcs, ElementId start);
Constraint constraint_tree_fan(std::vector<std::optional<TreeFanConstraint::Edge>> edges, std::uint32_t root);
Constraint constraint_table(std::vector<std::vector<ElementId>> sequences);

struct FeasibilityResult {
  bool feasible = true;
  std::vector<ElementId> witness;  // element sequence of the first infeasible root-leaf path
};

FeasibilityResult check_tree_feasible(const DecisionTree& tree, const ConstraintOracle& constraint);

}  // namespace smp
