#include "smp/strategy.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <functional>
#include <string>

namespace smp {

DecisionTree::DecisionTree(UniversePtr universe) : universe_(std::move(universe)) {
  if (!universe_) throw ValidationError("decision tree: null universe");
  nodes_.push_back(Node{});
}

std::span<const DecisionTree::NodeId> DecisionTree::expand(NodeId node, ElementId e) {
  if (node >= nodes_.size()) throw ValidationError("decision tree: node out of range");
  if (!is_leaf(node)) throw ValidationError("decision tree: node " + std::to_string(node) + " is already internal");
  if (e.value >= universe_->element_count()) throw ValidationError("decision tree: unknown element");
  for (std::optional<NodeId> n = nodes_[node].parent; n; n = nodes_[*n].parent) {
    if (*nodes_[*n].element == e) {
      throw ValidationError("decision tree: element '" + universe_->element_name(e) + "' repeats on a path");
    }
  }
  const std::size_t count = universe_->type_count(e);
  std::vector<NodeId> kids;
  kids.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    kids.push_back(static_cast<NodeId>(nodes_.size()));
    nodes_.push_back(Node{std::nullopt, {}, node});
  }
  nodes_[node].element = e;
  nodes_[node].children = std::move(kids);
  return nodes_[node].children;
}

ElementId DecisionTree::element(NodeId n) const {
  const auto& node = nodes_.at(n);
  if (!node.element) throw ValidationError("decision tree: leaf has no element");
  return *node.element;
}

DecisionTree::NodeId DecisionTree::child(NodeId n, TypeId t) const {
  const ElementId e = element(n);
  if (!universe_->owns(e, t)) {
    throw ValidationError("decision tree: type '" + universe_->type_name(t) + "' is not a type of '" +
                          universe_->element_name(e) + "'");
  }
  return nodes_[n].children[universe_->local_index(t)];
}

std::optional<DecisionTree::NodeId> DecisionTree::parent(NodeId n) const { return nodes_.at(n).parent; }

std::size_t DecisionTree::depth() const {
  // Children are always appended after their parent.
  std::vector<std::size_t> d(nodes_.size(), 0);
  std::size_t best = 0;
  for (NodeId n = 0; n < nodes_.size(); ++n) {
    if (nodes_[n].parent) d[n] = d[*nodes_[n].parent] + 1;
    if (is_leaf(n)) best = std::max(best, d[n]);
  }
  return best;
}

std::vector<DecisionTree::NodeId> DecisionTree::leaves() const {
  std::vector<NodeId> out;
  std::vector<NodeId> stack{root()};
  while (!stack.empty()) {
    const NodeId n = stack.back();
    stack.pop_back();
    if (is_leaf(n)) {
      out.push_back(n);
      continue;
    }
    const auto& kids = nodes_[n].children;
    for (auto it = kids.rbegin(); it != kids.rend(); ++it) stack.push_back(*it);
  }
  return out;
}

ProbePath DecisionTree::path_to(NodeId n) const {
  ProbePath path;
  for (NodeId cur = n; nodes_.at(cur).parent;) {
    const NodeId up = *nodes_[cur].parent;
    const ElementId e = *nodes_[up].element;
    const auto& kids = nodes_[up].children;
    const auto local = static_cast<std::size_t>(std::find(kids.begin(), kids.end(), cur) - kids.begin());
    path.push_back(Observation{e, universe_->type_at(e, local)});
    cur = up;
  }
  std::reverse(path.begin(), path.end());
  return path;
}

std::optional<ElementId> DecisionTree::next(std::span<const Observation> path) const {
  NodeId n = root();
  for (const auto& o : path) {
    if (is_leaf(n) || element(n) != o.element) throw ValidationError("decision tree: path does not follow the tree");
    n = child(n, o.type);
  }
  return nodes_[n].element;
}

bool operator==(const DecisionTree& a, const DecisionTree& b) {
  if (a.universe_->element_count() != b.universe_->element_count()) return false;
  std::vector<std::pair<DecisionTree::NodeId, DecisionTree::NodeId>> stack{{a.root(), b.root()}};
  while (!stack.empty()) {
    auto [x, y] = stack.back();
    stack.pop_back();
    if (a.nodes_[x].element != b.nodes_[y].element) return false;
    const auto& kx = a.nodes_[x].children;
    const auto& ky = b.nodes_[y].children;
    if (kx.size() != ky.size()) return false;
    for (std::size_t i = 0; i < kx.size(); ++i) stack.emplace_back(kx[i], ky[i]);
  }
  return true;
}

ProbePath random_walk_path(const DecisionTree& tree, const TypeVector& vector) {
  ProbePath path;
  DecisionTree::NodeId n = tree.root();
  while (!tree.is_leaf(n)) {
    const ElementId e = tree.element(n);
    const TypeId t = vector.at(e);
    path.push_back(Observation{e, t});
    n = tree.child(n, t);
  }
  return path;
}

DecisionTree materialize(const ProbeStrategy& strategy, UniversePtr universe, std::size_t node_cap) {
  DecisionTree tree(std::move(universe));
  std::deque<std::pair<DecisionTree::NodeId, ProbePath>> queue;
  queue.emplace_back(tree.root(), ProbePath{});
  while (!queue.empty()) {
    auto [node, path] = std::move(queue.front());
    queue.pop_front();
    const auto e = strategy.next(path);
    if (!e) continue;
    const std::size_t count = tree.universe().type_count(*e);
    if (tree.size() + count > node_cap) {
      throw CapExceededError("materialized tree exceeds " + std::to_string(node_cap) + " nodes");
    }
    const auto kids = tree.expand(node, *e);
    std::vector<DecisionTree::NodeId> ids(kids.begin(), kids.end());
    for (std::size_t i = 0; i < ids.size(); ++i) {
      ProbePath next = path;
      next.push_back(Observation{*e, tree.universe().type_at(*e, i)});
      queue.emplace_back(ids[i], std::move(next));
    }
  }
  return tree;
}

DecisionTree path_tree(UniversePtr universe, std::span<const ElementId> sequence) {
  DecisionTree tree(std::move(universe));
  std::vector<DecisionTree::NodeId> frontier{tree.root()};
  for (ElementId e : sequence) {
    std::vector<DecisionTree::NodeId> next;
    for (auto n : frontier) {
      const auto kids = tree.expand(n, e);
      next.insert(next.end(), kids.begin(), kids.end());
    }
    frontier = std::move(next);
  }
  return tree;
}

const char* to_string(ConstraintKind kind) {
  switch (kind) {
    case ConstraintKind::budget: return "budget";
    case ConstraintKind::cardinality: return "cardinality";
    case ConstraintKind::dag_path: return "dag_path";
    case ConstraintKind::tree_fan: return "tree_fan";
    case ConstraintKind::table: return "table";
  }
  return "unknown";
}

bool ConstraintOracle::contains(std::span<const ElementId> sequence) const {
  for (std::size_t i = 0; i < sequence.size(); ++i) {
    if (!may_extend(sequence.first(i), sequence[i])) return false;
  }
  return true;
}

BudgetConstraint::BudgetConstraint(std::vector<double> cost, double budget) : cost_(std::move(cost)), budget_(budget) {
  for (double c : cost_) {
    if (!(c >= 0.0)) throw ValidationError("budget constraint: negative cost");
  }
}

bool BudgetConstraint::may_extend(std::span<const ElementId> prefix, ElementId next) const {
  if (next.value >= cost_.size()) throw ValidationError("budget constraint: element without a cost");
  double total = cost_[next.value];
  for (ElementId e : prefix) total += cost_.at(e.value);
  return total <= budget_ + 1e-12 * std::max(1.0, std::abs(budget_));
}

DagPathConstraint::DagPathConstraint(std::vector<std::vector<ElementId>> arcs, ElementId start)
    : arcs_(std::move(arcs)), start_(start) {
  for (auto& out : arcs_) {
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
  }
}

bool DagPathConstraint::may_extend(std::span<const ElementId> prefix, ElementId next) const {
  if (prefix.empty()) return next == start_;
  const auto last = prefix.back().value;
  if (last >= arcs_.size()) return false;
  return std::binary_search(arcs_[last].begin(), arcs_[last].end(), next);
}

TreeFanConstraint::TreeFanConstraint(std::vector<std::optional<Edge>> edges, std::uint32_t root)
    : edges_(std::move(edges)), root_(root) {
  std::uint32_t vertices = root + 1;
  for (const auto& e : edges_) {
    if (e) vertices = std::max({vertices, e->parent + 1, e->child + 1});
  }
  std::vector<std::vector<std::uint32_t>> children(vertices);
  std::vector<int> parent_count(vertices, 0);
  for (const auto& e : edges_) {
    if (!e) continue;
    if (e->parent == e->child) throw ValidationError("tree-fan constraint: self-loop edge");
    children[e->parent].push_back(e->child);
    if (++parent_count[e->child] > 1) throw ValidationError("tree-fan constraint: vertex with two parents");
  }
  if (parent_count[root_] != 0) throw ValidationError("tree-fan constraint: root has a parent");
  for (auto& c : children) std::sort(c.begin(), c.end());
  range_of_vertex_.assign(vertices, {0, 0});
  std::vector<bool> seen(vertices, false);
  std::uint32_t next_leaf = 0;
  // Iterative post-order DFS assigning leaf intervals.
  std::vector<std::pair<std::uint32_t, std::size_t>> stack{{root_, 0}};
  seen[root_] = true;
  range_of_vertex_[root_].first = 0;
  while (!stack.empty()) {
    auto& [v, i] = stack.back();
    if (i == 0) range_of_vertex_[v].first = next_leaf;
    if (children[v].empty()) {
      range_of_vertex_[v] = {next_leaf, next_leaf + 1};
      ++next_leaf;
      stack.pop_back();
      continue;
    }
    if (i < children[v].size()) {
      const std::uint32_t c = children[v][i++];
      if (seen[c]) throw ValidationError("tree-fan constraint: edges contain a cycle");
      seen[c] = true;
      stack.emplace_back(c, 0);
    } else {
      range_of_vertex_[v].second = next_leaf;
      stack.pop_back();
    }
  }
  for (const auto& e : edges_) {
    if (e && !seen[e->child]) throw ValidationError("tree-fan constraint: edge not reachable from the root");
  }
}

std::pair<std::uint32_t, std::uint32_t> TreeFanConstraint::leaf_range(ElementId e) const {
  if (e.value >= edges_.size() || !edges_[e.value]) {
    throw ValidationError("tree-fan constraint: element " + std::to_string(e.value) + " is not a tree edge");
  }
  return range_of_vertex_[edges_[e.value]->parent];
}

bool TreeFanConstraint::may_extend(std::span<const ElementId> prefix, ElementId next) const {
  // A path touches edge (u,v) iff it passes through the parent u.
  auto [lo, hi] = leaf_range(next);
  for (ElementId e : prefix) {
    const auto [a, b] = leaf_range(e);
    lo = std::max(lo, a);
    hi = std::min(hi, b);
  }
  return lo < hi;
}

TableConstraint::TableConstraint(std::vector<std::vector<ElementId>> sequences) : sequences_(std::move(sequences)) {
  std::sort(sequences_.begin(), sequences_.end());
  sequences_.erase(std::unique(sequences_.begin(), sequences_.end()), sequences_.end());
}

bool TableConstraint::contains(std::span<const ElementId> sequence) const {
  if (sequence.empty()) return true;
  const std::vector<ElementId> key(sequence.begin(), sequence.end());
  return std::binary_search(sequences_.begin(), sequences_.end(), key);
}

bool TableConstraint::may_extend(std::span<const ElementId> prefix, ElementId next) const {
  std::vector<ElementId> key(prefix.begin(), prefix.end());
  key.push_back(next);
  return contains(key);
}

Constraint constraint_budget(std::vector<double> cost, double budget) {
  return std::make_shared<BudgetConstraint>(std::move(cost), budget);
}

Constraint constraint_cardinality(std::size_t max_length) { return std::make_shared<CardinalityConstraint>(max_length); }

Constraint constraint_dag_path(std::vector<std::vector<ElementId>> arcs, ElementId start) {
  return std::make_shared<DagPathConstraint>(std::move(arcs), start);
}

Constraint constraint_tree_fan(std::vector<std::optional<TreeFanConstraint::Edge>> edges, std::uint32_t root) {
  return std::make_shared<TreeFanConstraint>(std::move(edges), root);
}

Constraint constraint_table(std::vector<std::vector<ElementId>> sequences) {
  return std::make_shared<TableConstraint>(std::move(sequences));
}

FeasibilityResult check_tree_feasible(const DecisionTree& tree, const ConstraintOracle& constraint) {
  std::vector<ElementId> sequence;
  FeasibilityResult result;
  std::function<bool(DecisionTree::NodeId)> visit = [&](DecisionTree::NodeId n) {
    if (tree.is_leaf(n)) {
      if (constraint.contains(sequence)) return true;
      result.feasible = false;
      result.witness = sequence;
      return false;
    }
    sequence.push_back(tree.element(n));
    for (auto c : tree.children(n)) {
      if (!visit(c)) return false;
    }
    sequence.pop_back();
    return true;
  };
  visit(tree.root());
  return result;
}

}  // namespace smp
