#pragma once

// Exact and Monte Carlo evaluation of adaptive, random-walk non-adaptive and
// interleaved-greedy values, plus the best non-adaptive sequence on tiny
// instances.

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "smp/core.hpp"
#include "smp/families.hpp"
#include "smp/strategy.hpp"
#include "smp/valuation.hpp"

namespace smp {

enum class EvalMode { exact, monte_carlo };
enum class Arithmetic { floating, rational };

const char* to_string(EvalMode mode);

struct TraceEntry {
  DecisionTree::NodeId node;
  double value;  // expected value collected below `node` given the observations above it
};

struct EvalReport {
  std::string quantity;
  double value = 0.0;
  EvalMode mode = EvalMode::exact;
  std::optional<Rational> exact_value;  // rational mode only
  std::optional<std::uint64_t> trials;
  std::optional<std::uint64_t> seed;
  std::optional<double> std_error;  // Monte Carlo only
  std::vector<TraceEntry> trace;
  std::map<std::string, double> extras;
};

struct ExactOptions {
  Arithmetic arithmetic = Arithmetic::floating;
  std::uint64_t cap = kDefaultAssignmentCap;  // per-path assignment space
  bool trace = false;
};

// E_X[f(X_S(X))] by the root decomposition: at each node, condition on the
// probed type and recurse on the contracted function.
EvalReport adap_exact(const DecisionTree& tree, const Valuation& f, const TypeDistribution& dist,
                      const ExactOptions& options = {});

// The same quantity as a sum over root-leaf paths of P(path) f(types on path).
EvalReport adap_exact_by_paths(const DecisionTree& tree, const Valuation& f, const TypeDistribution& dist,
                               const ExactOptions& options = {});

// E_{X,X'}[f(X'_S(X))]: follow the tree with X, then re-draw the path's elements.
EvalReport alg_exact(const DecisionTree& tree, const Valuation& f, const TypeDistribution& dist,
                     const ExactOptions& options = {});

// E_{X,X'}[greedy(X_S u X'_S)], scanning the path root to leaf and feeding X'_e
// then X_e to the greedy procedure. extras["online_selector"] holds the
// expected number of true types X'_e the online rule keeps.
EvalReport greedy_interleaved_exact(const DecisionTree& tree, const Family& family, const TypeDistribution& dist,
                                    const ExactOptions& options = {});

// E_X[f(X_S)] for a fixed element set.
double expected_set_value(const Universe& universe, const TypeDistribution& dist, const ValuationFunction& f,
                          std::span<const ElementId> elements, std::uint64_t cap = kDefaultAssignmentCap);
Rational expected_set_value_exact(const Universe& universe, const TypeDistribution& dist, const ValuationFunction& f,
                                  std::span<const ElementId> elements, std::uint64_t cap = kDefaultAssignmentCap);

inline constexpr std::uint64_t kDefaultSequenceCap = 1'000'000;
inline constexpr std::size_t kMaxExactElements = 64;

struct BestNonadaptive {
  std::vector<ElementId> sequence;
  double value = 0.0;
  std::optional<Rational> exact_value;
  std::uint64_t sequences_examined = 0;
};

// Exhaustive search over repeat-free feasible sequences of length <= max_len.
// Ties go to the lexicographically smallest sequence.
BestNonadaptive best_nonadaptive_exact(const Universe& universe, const TypeDistribution& dist, const Valuation& f,
                                       const ConstraintOracle& constraint, std::size_t max_len,
                                       const ExactOptions& options = {},
                                       std::uint64_t sequence_cap = kDefaultSequenceCap);

struct McOptions {
  std::uint64_t trials = 10000;
  std::uint64_t seed = 0;
  unsigned threads = 1;
  std::uint64_t block_size = 1024;
};

// Sample means of the defining expectations. Each block of trials draws from
// its own counter-addressed stream and blocks are reduced in index order, so
// results do not depend on the thread count.
EvalReport adap_mc(const ProbeStrategy& strategy, const Universe& universe, const Valuation& f,
                   const TypeDistribution& dist, const McOptions& options);
EvalReport alg_mc(const ProbeStrategy& strategy, const Universe& universe, const Valuation& f,
                  const TypeDistribution& dist, const McOptions& options);
EvalReport greedy_mc(const ProbeStrategy& strategy, const Universe& universe, const Family& family,
                     const TypeDistribution& dist, const McOptions& options);

/// Visits every root-leaf path with its probability.
template <class Scalar, class Fn>
void for_each_leaf_path(const DecisionTree& tree, const TypeDistribution& dist, Fn&& fn) {
  ProbePath path;
  struct Frame {
    DecisionTree::NodeId node;
    std::size_t next_child;
    Scalar prob;
  };
  std::vector<Frame> stack{{tree.root(), 0, Scalar(1)}};
  while (!stack.empty()) {
    Frame& top = stack.back();
    if (tree.is_leaf(top.node)) {
      fn(static_cast<const ProbePath&>(path), static_cast<const Scalar&>(top.prob));
      stack.pop_back();
      if (!path.empty()) path.pop_back();
      continue;
    }
    const auto kids = tree.children(top.node);
    if (top.next_child == kids.size()) {
      stack.pop_back();
      if (!path.empty()) path.pop_back();
      continue;
    }
    const std::size_t i = top.next_child++;
    const ElementId e = tree.element(top.node);
    const TypeId t = tree.universe().type_at(e, i);
    const Scalar p = top.prob * dist.template p<Scalar>(t);
    const DecisionTree::NodeId c = kids[i];
    path.push_back(Observation{e, t});
    stack.push_back(Frame{c, 0, p});
  }
}

}  // namespace smp
