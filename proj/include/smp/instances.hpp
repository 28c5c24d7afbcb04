#pragma once

// Lower-bound constructions with their closed-form oracles, and seeded random
// instances for the property suites.

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "smp/core.hpp"
#include "smp/families.hpp"
#include "smp/strategy.hpp"
#include "smp/valuation.hpp"

namespace smp {

struct InstanceBundle {
  std::string construction;
  std::map<std::string, std::string> parameters;
  UniversePtr universe;
  TypeDistribution dist;
  Valuation valuation;
  Family family;  // set when the valuation is a rank function of this family
  Constraint constraint;
  std::optional<DecisionTree> tree;            // explicit reference strategy
  std::shared_ptr<const ProbeStrategy> rule;   // rule form, for instances too large to materialize

  // The explicit tree when present, otherwise the rule; null if neither.
  const ProbeStrategy* strategy() const;
};

// ---- Column instance for submodular functions ----

// Smallest D with (1-eps)^D < eps^2. Exact comparison when eps is exact.
int submodular_lb_depth(const Number& eps);

/// Element layout of the column instance: e(k,l) for k + l <= D, numbered
/// column by column.
class ColumnLayout {
 public:
  explicit ColumnLayout(int depth);
  int depth() const { return depth_; }
  std::size_t size() const { return coords_.size(); }
  bool exists(int k, int l) const { return k >= 0 && l >= 0 && k + l <= depth_; }
  ElementId at(int k, int l) const;
  std::pair<int, int> coords(ElementId e) const { return coords_.at(e.value); }
  static std::string name(int k, int l);

 private:
  int depth_;
  std::vector<std::uint32_t> column_start_;
  std::vector<std::pair<int, int>> coords_;
};

/// Probe e(0,0); after e(k,l) probe e(k+l+1,0) if it was active, else e(k,l+1).
class ColumnStrategy final : public ProbeStrategy {
 public:
  ColumnStrategy(UniversePtr universe, int depth);
  std::optional<ElementId> next(std::span<const Observation> path) const override;
  int depth() const { return layout_.depth(); }

 private:
  UniversePtr universe_;
  ColumnLayout layout_;
};

inline constexpr std::size_t kReferenceTreeNodeCap = std::size_t{1} << 18;

// 0 < eps <= 1/2; D from submodular_lb_depth.
InstanceBundle gen_submodular_lb(const Number& eps);
// Same construction with an explicit depth D >= 0 and any 0 < eps < 1.
InstanceBundle gen_submodular_lb_truncated(const Number& eps, int depth);

// adap(k) for k = 0..D (index k), with adap(k) = 0 beyond D.
template <class Scalar>
std::vector<Scalar> submodular_lb_adap_table(const Scalar& eps, int depth) {
  const Scalar q = Scalar(1) - eps;
  std::vector<Scalar> pow(depth + 2, Scalar(1));
  for (int i = 1; i < depth + 2; ++i) pow[i] = pow[i - 1] * q;
  std::vector<Scalar> adap(depth + 2, Scalar(0));
  for (int k = depth; k >= 0; --k) {
    Scalar sum(0);
    for (int i = 0; i <= depth - k; ++i) sum += pow[i] * eps * (pow[k] + adap[k + i + 1]);
    adap[k] = sum;
  }
  adap.pop_back();
  return adap;
}

// alg(k) = max_i [(1-eps)^k (1 - (1-eps)^(i+1)) + alg(k+i+1)], alg = 0 beyond D.
template <class Scalar>
std::vector<Scalar> submodular_lb_alg_table(const Scalar& eps, int depth) {
  const Scalar q = Scalar(1) - eps;
  std::vector<Scalar> pow(depth + 2, Scalar(1));
  for (int i = 1; i < depth + 2; ++i) pow[i] = pow[i - 1] * q;
  std::vector<Scalar> alg(depth + 2, Scalar(0));
  for (int k = depth; k >= 0; --k) {
    Scalar best(0);
    for (int i = 0; i <= depth - k; ++i) {
      Scalar v = pow[k] * (Scalar(1) - pow[i + 1]) + alg[k + i + 1];
      if (i == 0 || v > best) best = v;
    }
    alg[k] = best;
  }
  alg.pop_back();
  return alg;
}

double submodular_lb_adap_recurrence(double eps);
double submodular_lb_alg_opt(double eps);
Rational submodular_lb_adap_recurrence_exact(const Rational& eps);
Rational submodular_lb_alg_opt_exact(const Rational& eps);

// Values of the unbounded construction: adaptive 2 - eps, non-adaptive 1.
inline double submodular_lb_adap_limit(double eps) { return 2.0 - eps; }
inline constexpr double kSubmodularLbAlgLimit = 1.0;

// ---- Perfect w-ary tree instances ----

/// Perfect w-ary tree of depth k in BFS numbering: the children of v are
/// w*v+1 .. w*v+w. Edge element v-1 joins v to its parent.
class PerfectTree {
 public:
  PerfectTree(std::uint32_t depth, std::uint32_t arity);
  std::uint32_t depth() const { return depth_; }
  std::uint32_t arity() const { return arity_; }
  std::uint64_t vertex_count() const { return vertex_count_; }
  std::uint64_t edge_count() const { return vertex_count_ - 1; }
  std::uint64_t parent(std::uint64_t v) const { return (v - 1) / arity_; }
  std::uint64_t child(std::uint64_t v, std::uint32_t i) const { return arity_ * v + 1 + i; }
  std::uint32_t vertex_depth(std::uint64_t v) const;
  bool is_ancestor_or_self(std::uint64_t u, std::uint64_t v) const;

 private:
  std::uint32_t depth_;
  std::uint32_t arity_;
  std::uint64_t vertex_count_;
};

/// Probes the w edges below the current vertex in child order, then moves to
/// the first active one (or the first edge when none is active).
class TreeLevelStrategy final : public ProbeStrategy {
 public:
  TreeLevelStrategy(UniversePtr universe, PerfectTree tree);
  std::optional<ElementId> next(std::span<const Observation> path) const override;
  const PerfectTree& tree() const { return tree_; }

 private:
  UniversePtr universe_;
  PerfectTree tree_;
};

inline constexpr std::uint64_t kTreeInstanceEdgeCap = std::uint64_t{1} << 20;

// Edges of the perfect w-ary depth-k tree, each Bernoulli(p). The valuation is
// the (optionally per-depth weighted) rank of edge sets on one root-leaf path.
InstanceBundle gen_tree_lb(std::uint32_t k, std::uint32_t w, const Number& p,
                           const std::optional<std::vector<Number>>& depth_weights = std::nullopt);

// k (1 - (1-p)^w): expected value of the level strategy.
double tree_lb_adaptive_formula(std::uint32_t k, std::uint32_t w, double p);
// 1 + k p: upper bound on every non-adaptive strategy.
double tree_lb_nonadaptive_bound(std::uint32_t k, double p);

struct PrimeEncoding {
  std::uint32_t k = 0;
  std::vector<std::vector<std::uint32_t>> labels;  // per vertex
  std::vector<std::pair<std::uint32_t, std::uint32_t>> index;  // (i, j) per matroid
  std::vector<Family> matroids;
  Family intersection;
  InstanceBundle bundle;  // the k-ary tree instance with p = 1/k, valued by the intersection's rank
};

bool is_prime(std::uint32_t n);

// k^2 partition matroids whose intersection has exactly the chain sets of the
// k-ary depth-k tree as independent sets. Throws for k not prime.
PrimeEncoding gen_prime_matroid_encoding(std::uint32_t k);

// ---- Random instances ----

enum class RandomValuation { coverage, partition_weighted, matroid_rank, matching_rank };

const char* to_string(RandomValuation v);

struct RandomInstanceParams {
  std::size_t min_elements = 2;
  std::size_t max_elements = 8;
  std::size_t max_types = 3;
  std::size_t max_depth = 4;
  std::vector<RandomValuation> valuations{RandomValuation::coverage, RandomValuation::partition_weighted,
                                          RandomValuation::matroid_rank, RandomValuation::matching_rank};
  std::vector<ConstraintKind> constraints{ConstraintKind::budget, ConstraintKind::cardinality,
                                          ConstraintKind::dag_path};
  std::size_t matroid_count = 1;  // partition matroids intersected by matroid_rank
  std::uint32_t max_weight = 1;   // rank valuations draw integer weights from 1..max_weight
  double stop_probability = 0.2;  // chance that a non-root node stays a leaf
};

// Deterministic per (params, seed). The tree is grown against the constraint.
InstanceBundle gen_random_instance(const RandomInstanceParams& params, std::uint64_t seed);

}  // namespace smp
