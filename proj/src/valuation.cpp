#include "smp/valuation.hpp"

#include <algorithm>
#include <string>

namespace smp {

const char* to_string(ValuationKind kind) {
  switch (kind) {
    case ValuationKind::table: return "table";
    case ValuationKind::coverage: return "coverage";
    case ValuationKind::weighted_rank: return "weighted_rank";
    case ValuationKind::partition_weighted: return "partition_weighted";
    case ValuationKind::contracted: return "contracted";
  }
  return "unknown";
}

TableValuation::TableValuation(std::map<TypeSet, Number> table) : table_(std::move(table)) {
  for (const auto& [s, v] : table_) {
    if (!(v.value() >= 0.0)) throw ValidationError("table valuation: negative value");
    exact_ = exact_ && v.is_exact();
  }
  if (auto it = table_.find(TypeSet{}); it != table_.end() && it->second.value() != 0.0) {
    throw ValidationError("table valuation: f(empty set) must be 0");
  }
}

const Number& TableValuation::lookup(const TypeSet& a) const {
  static const Number zero(0);
  if (a.empty()) return zero;
  auto it = table_.find(a);
  if (it == table_.end()) throw ValidationError("table valuation: set of size " + std::to_string(a.size()) + " not listed");
  return it->second;
}

double TableValuation::eval(const TypeSet& a) const { return lookup(a).value(); }

Rational TableValuation::eval_exact(const TypeSet& a) const { return lookup(a).exact(); }

CoverageValuation::CoverageValuation(std::map<TypeId, std::vector<std::uint32_t>> cover_sets)
    : cover_(std::move(cover_sets)) {
  for (auto& [t, items] : cover_) {
    std::sort(items.begin(), items.end());
    items.erase(std::unique(items.begin(), items.end()), items.end());
  }
}

std::size_t CoverageValuation::covered(const TypeSet& a) const {
  std::vector<std::uint32_t> all;
  for (TypeId t : a) {
    if (auto it = cover_.find(t); it != cover_.end()) all.insert(all.end(), it->second.begin(), it->second.end());
  }
  std::sort(all.begin(), all.end());
  return static_cast<std::size_t>(std::unique(all.begin(), all.end()) - all.begin());
}

WeightedRankValuation::WeightedRankValuation(Family family, WeightMap weights)
    : family_(std::move(family)), weights_(std::move(weights)) {
  if (!family_) throw ValidationError("weighted rank: null family");
}

TypeSet WeightedRankValuation::argmax(const TypeSet& a) const {
  return max_weight_independent_subset(*family_, a, weights_);
}

double WeightedRankValuation::eval(const TypeSet& a) const {
  if (a.empty()) return 0.0;
  return weights_.total<double>(argmax(a));
}

Rational WeightedRankValuation::eval_exact(const TypeSet& a) const {
  if (a.empty()) return Rational(0);
  return weights_.total<Rational>(argmax(a));
}

PartitionWeightedValuation::PartitionWeightedValuation(std::map<TypeId, std::uint32_t> part_of,
                                                       std::vector<Number> part_weight)
    : part_of_(std::move(part_of)), part_weight_(std::move(part_weight)) {
  for (const auto& w : part_weight_) {
    if (!(w.value() >= 0.0)) throw ValidationError("partition-weighted valuation: negative part weight");
    exact_ = exact_ && w.is_exact();
  }
  for (const auto& [t, p] : part_of_) {
    if (p >= part_weight_.size()) throw ValidationError("partition-weighted valuation: part without weight");
  }
}

std::vector<std::uint32_t> PartitionWeightedValuation::parts_touched(const TypeSet& a) const {
  std::vector<std::uint32_t> parts;
  for (TypeId t : a) {
    if (auto it = part_of_.find(t); it != part_of_.end()) parts.push_back(it->second);
  }
  std::sort(parts.begin(), parts.end());
  parts.erase(std::unique(parts.begin(), parts.end()), parts.end());
  return parts;
}

double PartitionWeightedValuation::eval(const TypeSet& a) const {
  double sum = 0.0;
  for (auto p : parts_touched(a)) sum += part_weight_[p].value();
  return sum;
}

Rational PartitionWeightedValuation::eval_exact(const TypeSet& a) const {
  Rational sum = 0;
  for (auto p : parts_touched(a)) sum += part_weight_[p].exact();
  return sum;
}

ContractedValuation::ContractedValuation(Valuation base, TypeSet contracted)
    : base_(std::move(base)), set_(std::move(contracted)), base_value_(base_->eval(set_)) {}

double ContractedValuation::eval(const TypeSet& a) const {
  if (a.empty()) return 0.0;
  return base_->eval(set_union(set_, a)) - base_value_;
}

Rational ContractedValuation::eval_exact(const TypeSet& a) const {
  if (a.empty()) return Rational(0);
  return base_->eval_exact(set_union(set_, a)) - base_->eval_exact(set_);
}

Valuation contract(const Valuation& f, const TypeSet& s) {
  if (s.empty()) return f;
  if (f->kind() == ValuationKind::contracted) {
    const auto& c = static_cast<const ContractedValuation&>(*f);
    return std::make_shared<ContractedValuation>(c.base(), set_union(c.contracted(), s));
  }
  return std::make_shared<ContractedValuation>(f, s);
}

Valuation weighted_rank(Family family, WeightMap weights) {
  return std::make_shared<WeightedRankValuation>(std::move(family), std::move(weights));
}

Valuation coverage_valuation(std::map<TypeId, std::vector<std::uint32_t>> cover_sets) {
  return std::make_shared<CoverageValuation>(std::move(cover_sets));
}

Valuation partition_weighted_valuation(std::map<TypeId, std::uint32_t> part_of, std::vector<Number> part_weight) {
  return std::make_shared<PartitionWeightedValuation>(std::move(part_of), std::move(part_weight));
}

Valuation table_valuation(std::map<TypeSet, Number> table) {
  return std::make_shared<TableValuation>(std::move(table));
}

}  // namespace smp
