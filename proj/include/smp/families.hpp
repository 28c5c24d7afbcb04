#pragma once

// Downward-closed set systems over types: matroids, intersections,
// matchings, the loop / contraction algebra and the greedy procedure.

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "smp/error.hpp"
#include "smp/ids.hpp"
#include "smp/type_set.hpp"
#include "smp/weights.hpp"

namespace smp {

enum class FamilyKind { uniform_matroid, partition_matroid, intersection, matching, chain, table };

const char* to_string(FamilyKind kind);

/// Membership test for a downward-closed family F over the global type set.
/// Types outside ground() are loops: no independent set contains them.
class IndependenceOracle {
 public:
  virtual ~IndependenceOracle() = default;

  bool is_independent(const TypeSet& s) const;
  const TypeSet& ground() const { return ground_; }
  virtual FamilyKind kind() const = 0;
  virtual bool is_matroid() const { return false; }

  // Families with enough structure override this with an exact max-weight
  // independent subset of `candidates`; nullopt falls back to search.
  virtual std::optional<TypeSet> max_weight_subset(const TypeSet& /*candidates*/,
                                                   const WeightMap& /*weights*/) const {
    return std::nullopt;
  }

 protected:
  explicit IndependenceOracle(TypeSet ground) : ground_(std::move(ground)) {}
  // Called only with subsets of ground().
  virtual bool independent_within_ground(const TypeSet& s) const = 0;

 private:
  TypeSet ground_;
};

using Family = std::shared_ptr<const IndependenceOracle>;

class UniformMatroid final : public IndependenceOracle {
 public:
  UniformMatroid(TypeSet ground, std::size_t rank) : IndependenceOracle(std::move(ground)), rank_(rank) {}
  FamilyKind kind() const override { return FamilyKind::uniform_matroid; }
  bool is_matroid() const override { return true; }
  std::size_t rank() const { return rank_; }

 private:
  bool independent_within_ground(const TypeSet& s) const override { return s.size() <= rank_; }
  std::size_t rank_;
};

class PartitionMatroid final : public IndependenceOracle {
 public:
  PartitionMatroid(std::map<TypeId, std::uint32_t> part_of, std::vector<std::uint32_t> capacity);
  FamilyKind kind() const override { return FamilyKind::partition_matroid; }
  bool is_matroid() const override { return true; }
  const std::map<TypeId, std::uint32_t>& part_of() const { return part_of_; }
  const std::vector<std::uint32_t>& capacity() const { return capacity_; }

 private:
  bool independent_within_ground(const TypeSet& s) const override;
  std::map<TypeId, std::uint32_t> part_of_;
  std::vector<std::uint32_t> capacity_;
};

class IntersectionFamily final : public IndependenceOracle {
 public:
  explicit IntersectionFamily(std::vector<Family> members);
  FamilyKind kind() const override { return FamilyKind::intersection; }
  bool is_matroid() const override { return members_.size() == 1 && members_.front()->is_matroid(); }
  const std::vector<Family>& members() const { return members_; }

 private:
  bool independent_within_ground(const TypeSet& s) const override;
  std::vector<Family> members_;
};

class MatchingFamily final : public IndependenceOracle {
 public:
  using Edge = std::pair<std::uint32_t, std::uint32_t>;
  explicit MatchingFamily(std::map<TypeId, Edge> edges);
  FamilyKind kind() const override { return FamilyKind::matching; }
  const std::map<TypeId, Edge>& edges() const { return edges_; }

 private:
  bool independent_within_ground(const TypeSet& s) const override;
  std::map<TypeId, Edge> edges_;
};

/// Sets of tree edges lying on one root-leaf path. Each type names the child
/// vertex of its edge; `parent[v]` is v's parent vertex (root: -1).
class ChainFamily final : public IndependenceOracle {
 public:
  ChainFamily(std::map<TypeId, std::uint32_t> vertex_of, std::vector<std::int64_t> parent);
  FamilyKind kind() const override { return FamilyKind::chain; }
  std::optional<TypeSet> max_weight_subset(const TypeSet& candidates, const WeightMap& weights) const override;
  const std::map<TypeId, std::uint32_t>& vertex_of() const { return vertex_of_; }
  const std::vector<std::int64_t>& parent() const { return parent_; }
  bool is_ancestor_or_self(std::uint32_t u, std::uint32_t v) const;

 private:
  bool independent_within_ground(const TypeSet& s) const override;
  std::map<TypeId, std::uint32_t> vertex_of_;
  std::vector<std::int64_t> parent_;
  std::vector<std::uint32_t> depth_;
};

/// Explicit list of independent sets. Not necessarily downward-closed; used to
/// exercise the verifiers.
class TableFamily final : public IndependenceOracle {
 public:
  TableFamily(TypeSet ground, std::vector<TypeSet> independent);
  FamilyKind kind() const override { return FamilyKind::table; }
  const std::vector<TypeSet>& sets() const { return sets_; }

 private:
  bool independent_within_ground(const TypeSet& s) const override;
  std::vector<TypeSet> sets_;
};

Family make_uniform_matroid(TypeSet ground, std::size_t rank);
Family make_partition_matroid(std::map<TypeId, std::uint32_t> part_of, std::vector<std::uint32_t> capacity);
// Throws ValidationError when the members' grounds differ.
Family intersect(std::vector<Family> members);
// Throws ValidationError on a self-loop edge.
Family make_matching_family(std::map<TypeId, MatchingFamily::Edge> edges);
Family make_chain_family(std::map<TypeId, std::uint32_t> vertex_of, std::vector<std::int64_t> parent);
Family make_table_family(TypeSet ground, std::vector<TypeSet> independent);

/// F contracted by an ordered list of types: (F/t1)/t2/... Persistent:
/// contract() returns a new state and leaves this one untouched.
class ContractionState {
 public:
  explicit ContractionState(Family base);

  bool is_loop(TypeId t) const;
  ContractionState contract(TypeId t) const;  // throws ValidationError if t is a loop
  std::span<const TypeId> contracted() const { return order_; }
  const TypeSet& contracted_set() const { return set_; }
  const Family& base() const { return base_; }

 private:
  Family base_;
  std::vector<TypeId> order_;
  TypeSet set_;
};

bool is_loop(const ContractionState& state, TypeId t);
ContractionState contract_type(const ContractionState& state, TypeId t);

// Scans `ordered` once, contracting non-loops; returns how many were contracted.
std::size_t greedy_rank(const Family& family, std::span<const TypeId> ordered);
// The contracted types themselves, in scan order.
std::vector<TypeId> greedy_select(const Family& family, std::span<const TypeId> ordered);

inline constexpr std::size_t kExhaustiveRankCap = 20;

// Maximum-weight independent subset of `a`. Greedy for matroids, structural
// override where available, otherwise branch-and-bound over the non-loop
// positive-weight members of `a` (CapExceededError past kExhaustiveRankCap).
TypeSet max_weight_independent_subset(const IndependenceOracle& family, const TypeSet& a,
                                      const WeightMap& weights);
// Largest independent subset size (unweighted rank).
std::size_t max_rank(const IndependenceOracle& family, const TypeSet& a);

}  // namespace smp
