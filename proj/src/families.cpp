#include "smp/families.hpp"

#include <algorithm>
#include <numeric>
#include <string>

namespace smp {

WeightMap::WeightMap(std::map<TypeId, Number> weights) : weights_(std::move(weights)) {
  for (const auto& [t, w] : weights_) {
    if (!(w.value() >= 0.0)) throw ValidationError("negative weight on type " + std::to_string(t.value));
    exact_ = exact_ && w.is_exact();
  }
}

WeightMap WeightMap::unit(const TypeSet& types) {
  std::map<TypeId, Number> w;
  for (TypeId t : types) w.emplace(t, Number(1));
  return WeightMap(std::move(w));
}

double WeightMap::weight(TypeId t) const {
  auto it = weights_.find(t);
  return it == weights_.end() ? 0.0 : it->second.value();
}

const Number& WeightMap::number(TypeId t) const {
  static const Number zero(0);
  auto it = weights_.find(t);
  return it == weights_.end() ? zero : it->second;
}

const char* to_string(FamilyKind kind) {
  switch (kind) {
    case FamilyKind::uniform_matroid: return "uniform_matroid";
    case FamilyKind::partition_matroid: return "partition_matroid";
    case FamilyKind::intersection: return "intersection";
    case FamilyKind::matching: return "matching";
    case FamilyKind::chain: return "chain";
    case FamilyKind::table: return "table";
  }
  return "unknown";
}

bool IndependenceOracle::is_independent(const TypeSet& s) const {
  if (!s.is_subset_of(ground_)) return false;
  return independent_within_ground(s);
}

namespace {

TypeSet keys_of(const auto& map) {
  std::vector<TypeId> out;
  out.reserve(map.size());
  for (const auto& [k, v] : map) out.push_back(k);
  return TypeSet(std::move(out));
}

}  // namespace

PartitionMatroid::PartitionMatroid(std::map<TypeId, std::uint32_t> part_of, std::vector<std::uint32_t> capacity)
    : IndependenceOracle(keys_of(part_of)), part_of_(std::move(part_of)), capacity_(std::move(capacity)) {
  for (const auto& [t, part] : part_of_) {
    if (part >= capacity_.size()) {
      throw ValidationError("partition matroid: type " + std::to_string(t.value) + " in part " +
                            std::to_string(part) + " without a capacity");
    }
  }
}

bool PartitionMatroid::independent_within_ground(const TypeSet& s) const {
  std::map<std::uint32_t, std::uint32_t> used;
  for (TypeId t : s) {
    const std::uint32_t part = part_of_.at(t);
    if (++used[part] > capacity_[part]) return false;
  }
  return true;
}

IntersectionFamily::IntersectionFamily(std::vector<Family> members)
    : IndependenceOracle(members.empty() ? TypeSet{} : members.front()->ground()), members_(std::move(members)) {
  if (members_.empty()) throw ValidationError("intersect: no families given");
  for (const auto& m : members_) {
    if (m->ground() != ground()) throw ValidationError("intersect: families have different ground sets");
  }
}

bool IntersectionFamily::independent_within_ground(const TypeSet& s) const {
  return std::all_of(members_.begin(), members_.end(), [&](const Family& m) { return m->is_independent(s); });
}

MatchingFamily::MatchingFamily(std::map<TypeId, Edge> edges)
    : IndependenceOracle(keys_of(edges)), edges_(std::move(edges)) {
  for (const auto& [t, e] : edges_) {
    if (e.first == e.second) {
      throw ValidationError("matching family: type " + std::to_string(t.value) + " is a self-loop edge");
    }
  }
}

bool MatchingFamily::independent_within_ground(const TypeSet& s) const {
  std::vector<std::uint32_t> used;
  used.reserve(2 * s.size());
  for (TypeId t : s) {
    const auto& e = edges_.at(t);
    used.push_back(e.first);
    used.push_back(e.second);
  }
  std::sort(used.begin(), used.end());
  return std::adjacent_find(used.begin(), used.end()) == used.end();
}

ChainFamily::ChainFamily(std::map<TypeId, std::uint32_t> vertex_of, std::vector<std::int64_t> parent)
    : IndependenceOracle(keys_of(vertex_of)), vertex_of_(std::move(vertex_of)), parent_(std::move(parent)) {
  depth_.assign(parent_.size(), 0);
  for (std::size_t v = 0; v < parent_.size(); ++v) {
    std::uint32_t d = 0;
    for (std::int64_t u = parent_[v]; u >= 0; u = parent_[u]) {
      if (static_cast<std::size_t>(u) >= parent_.size() || ++d > parent_.size()) {
        throw ValidationError("chain family: parent array is not a rooted tree");
      }
    }
    depth_[v] = d;
  }
  for (const auto& [t, v] : vertex_of_) {
    if (v >= parent_.size()) throw ValidationError("chain family: vertex out of range");
  }
}

bool ChainFamily::is_ancestor_or_self(std::uint32_t u, std::uint32_t v) const {
  if (depth_[u] > depth_[v]) return false;
  std::int64_t x = v;
  while (depth_[x] > depth_[u]) x = parent_[x];
  return x == static_cast<std::int64_t>(u);
}

bool ChainFamily::independent_within_ground(const TypeSet& s) const {
  std::vector<std::uint32_t> vs;
  vs.reserve(s.size());
  for (TypeId t : s) vs.push_back(vertex_of_.at(t));
  std::sort(vs.begin(), vs.end(), [&](auto a, auto b) { return depth_[a] < depth_[b]; });
  for (std::size_t i = 1; i < vs.size(); ++i) {
    if (!is_ancestor_or_self(vs[i - 1], vs[i])) return false;
  }
  return true;
}

std::optional<TypeSet> ChainFamily::max_weight_subset(const TypeSet& candidates, const WeightMap& weights) const {
  // The best chain ends at some candidate c and takes every candidate on c's root path.
  std::vector<TypeId> usable;
  for (TypeId t : candidates) {
    if (ground().contains(t) && weights.weight(t) > 0.0) usable.push_back(t);
  }
  TypeSet best;
  double best_weight = 0.0;
  for (TypeId c : usable) {
    std::vector<TypeId> chain;
    double w = 0.0;
    for (TypeId t : usable) {
      if (is_ancestor_or_self(vertex_of_.at(t), vertex_of_.at(c))) {
        chain.push_back(t);
        w += weights.weight(t);
      }
    }
    if (w > best_weight) {
      TypeSet candidate(std::move(chain));
      // Several types may share a vertex; keep the set independent.
      if (independent_within_ground(candidate)) {
        best_weight = w;
        best = std::move(candidate);
      } else {
        return std::nullopt;
      }
    }
  }
  return best;
}

TableFamily::TableFamily(TypeSet ground, std::vector<TypeSet> independent)
    : IndependenceOracle(std::move(ground)), sets_(std::move(independent)) {
  std::sort(sets_.begin(), sets_.end());
  sets_.erase(std::unique(sets_.begin(), sets_.end()), sets_.end());
  for (const auto& s : sets_) {
    if (!s.is_subset_of(this->ground())) throw ValidationError("table family: set outside ground");
  }
}

bool TableFamily::independent_within_ground(const TypeSet& s) const {
  return std::binary_search(sets_.begin(), sets_.end(), s);
}

Family make_uniform_matroid(TypeSet ground, std::size_t rank) {
  return std::make_shared<UniformMatroid>(std::move(ground), rank);
}

Family make_partition_matroid(std::map<TypeId, std::uint32_t> part_of, std::vector<std::uint32_t> capacity) {
  return std::make_shared<PartitionMatroid>(std::move(part_of), std::move(capacity));
}

Family intersect(std::vector<Family> members) { return std::make_shared<IntersectionFamily>(std::move(members)); }

Family make_matching_family(std::map<TypeId, MatchingFamily::Edge> edges) {
  return std::make_shared<MatchingFamily>(std::move(edges));
}

Family make_chain_family(std::map<TypeId, std::uint32_t> vertex_of, std::vector<std::int64_t> parent) {
  return std::make_shared<ChainFamily>(std::move(vertex_of), std::move(parent));
}

Family make_table_family(TypeSet ground, std::vector<TypeSet> independent) {
  return std::make_shared<TableFamily>(std::move(ground), std::move(independent));
}

ContractionState::ContractionState(Family base) : base_(std::move(base)) {}

bool ContractionState::is_loop(TypeId t) const {
  if (set_.contains(t)) return true;
  return !base_->is_independent(set_.with(t));
}

ContractionState ContractionState::contract(TypeId t) const {
  if (is_loop(t)) throw ValidationError("cannot contract loop type " + std::to_string(t.value));
  ContractionState next = *this;
  next.order_.push_back(t);
  next.set_.insert(t);
  return next;
}

bool is_loop(const ContractionState& state, TypeId t) { return state.is_loop(t); }

ContractionState contract_type(const ContractionState& state, TypeId t) { return state.contract(t); }

std::vector<TypeId> greedy_select(const Family& family, std::span<const TypeId> ordered) {
  ContractionState state(family);
  for (TypeId t : ordered) {
    if (!state.is_loop(t)) state = state.contract(t);
  }
  return {state.contracted().begin(), state.contracted().end()};
}

std::size_t greedy_rank(const Family& family, std::span<const TypeId> ordered) {
  return greedy_select(family, ordered).size();
}

namespace {

struct BranchAndBound {
  const IndependenceOracle& family;
  std::vector<TypeId> items;  // sorted by weight, heaviest first
  std::vector<double> weight;
  std::vector<double> suffix;
  std::vector<TypeId> current;
  double current_weight = 0.0;
  std::vector<TypeId> best;
  double best_weight = -1.0;

  void run(std::size_t i) {
    if (current_weight > best_weight) {
      best_weight = current_weight;
      best = current;
    }
    if (i == items.size() || current_weight + suffix[i] <= best_weight) return;
    current.push_back(items[i]);
    if (family.is_independent(TypeSet(current))) {
      current_weight += weight[i];
      run(i + 1);
      current_weight -= weight[i];
    }
    current.pop_back();
    run(i + 1);
  }
};

}  // namespace

TypeSet max_weight_independent_subset(const IndependenceOracle& family, const TypeSet& a, const WeightMap& weights) {
  std::vector<TypeId> items;
  for (TypeId t : a) {
    if (weights.weight(t) > 0.0 && family.is_independent(TypeSet{t})) items.push_back(t);
  }
  std::stable_sort(items.begin(), items.end(),
                   [&](TypeId x, TypeId y) { return weights.weight(x) > weights.weight(y); });
  if (family.is_matroid()) {
    std::vector<TypeId> chosen;
    for (TypeId t : items) {
      chosen.push_back(t);
      if (!family.is_independent(TypeSet(chosen))) chosen.pop_back();
    }
    return TypeSet(std::move(chosen));
  }
  if (auto structured = family.max_weight_subset(TypeSet(items), weights)) return *structured;
  if (items.size() > kExhaustiveRankCap) {
    throw CapExceededError("rank computation infeasible: " + std::to_string(items.size()) +
                           " candidate types exceed the exhaustive cap of " + std::to_string(kExhaustiveRankCap));
  }
  BranchAndBound search{family, items, {}, {}, {}, 0.0, {}, -1.0};
  search.weight.reserve(items.size());
  for (TypeId t : items) search.weight.push_back(weights.weight(t));
  search.suffix.assign(items.size() + 1, 0.0);
  for (std::size_t i = items.size(); i-- > 0;) search.suffix[i] = search.suffix[i + 1] + search.weight[i];
  search.run(0);
  return TypeSet(std::move(search.best));
}

std::size_t max_rank(const IndependenceOracle& family, const TypeSet& a) {
  return max_weight_independent_subset(family, a, WeightMap::unit(a)).size();
}

}  // namespace smp
