#pragma once

// Monotone set functions over types: explicit tables, coverage, weighted rank
// of a family, partition-weighted sums, and lazy contraction.

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <type_traits>
#include <vector>

#include "smp/families.hpp"
#include "smp/number.hpp"
#include "smp/type_set.hpp"
#include "smp/weights.hpp"

namespace smp {

enum class ValuationKind { table, coverage, weighted_rank, partition_weighted, contracted };

const char* to_string(ValuationKind kind);

/// f : 2^T -> R>=0 with f(empty) = 0. eval() is pure and thread-safe.
class ValuationFunction {
 public:
  virtual ~ValuationFunction() = default;

  virtual double eval(const TypeSet& a) const = 0;
  // Exact value; throws ValidationError when some parameter has no exact form.
  virtual Rational eval_exact(const TypeSet& a) const = 0;
  virtual bool supports_exact() const = 0;
  virtual ValuationKind kind() const = 0;

  template <class Scalar>
  Scalar value(const TypeSet& a) const {
    if constexpr (std::is_same_v<Scalar, double>) {
      return eval(a);
    } else {
      return eval_exact(a);
    }
  }
};

using Valuation = std::shared_ptr<const ValuationFunction>;

class TableValuation final : public ValuationFunction {
 public:
  // Every set that will be evaluated must be listed; eval of a missing set throws.
  explicit TableValuation(std::map<TypeSet, Number> table);
  double eval(const TypeSet& a) const override;
  Rational eval_exact(const TypeSet& a) const override;
  bool supports_exact() const override { return exact_; }
  ValuationKind kind() const override { return ValuationKind::table; }
  const std::map<TypeSet, Number>& table() const { return table_; }

 private:
  const Number& lookup(const TypeSet& a) const;
  std::map<TypeSet, Number> table_;
  bool exact_ = true;
};

class CoverageValuation final : public ValuationFunction {
 public:
  explicit CoverageValuation(std::map<TypeId, std::vector<std::uint32_t>> cover_sets);
  double eval(const TypeSet& a) const override { return static_cast<double>(covered(a)); }
  Rational eval_exact(const TypeSet& a) const override { return Rational(covered(a)); }
  bool supports_exact() const override { return true; }
  ValuationKind kind() const override { return ValuationKind::coverage; }
  const std::map<TypeId, std::vector<std::uint32_t>>& cover_sets() const { return cover_; }

 private:
  std::size_t covered(const TypeSet& a) const;
  std::map<TypeId, std::vector<std::uint32_t>> cover_;
};

class WeightedRankValuation final : public ValuationFunction {
 public:
  WeightedRankValuation(Family family, WeightMap weights);
  double eval(const TypeSet& a) const override;
  Rational eval_exact(const TypeSet& a) const override;
  bool supports_exact() const override { return weights_.is_exact(); }
  ValuationKind kind() const override { return ValuationKind::weighted_rank; }
  const Family& family() const { return family_; }
  const WeightMap& weights() const { return weights_; }
  // The maximizing independent subset behind eval(a).
  TypeSet argmax(const TypeSet& a) const;

 private:
  Family family_;
  WeightMap weights_;
};

/// Sum of part weights over the distinct parts touched; types without a part contribute nothing.
class PartitionWeightedValuation final : public ValuationFunction {
 public:
  PartitionWeightedValuation(std::map<TypeId, std::uint32_t> part_of, std::vector<Number> part_weight);
  double eval(const TypeSet& a) const override;
  Rational eval_exact(const TypeSet& a) const override;
  bool supports_exact() const override { return exact_; }
  ValuationKind kind() const override { return ValuationKind::partition_weighted; }
  const std::map<TypeId, std::uint32_t>& part_of() const { return part_of_; }
  const std::vector<Number>& part_weight() const { return part_weight_; }

 private:
  std::vector<std::uint32_t> parts_touched(const TypeSet& a) const;
  std::map<TypeId, std::uint32_t> part_of_;
  std::vector<Number> part_weight_;
  bool exact_ = true;
};

/// g(A) = f(S u A) - f(S), holding f and S by reference rather than tabulating.
class ContractedValuation final : public ValuationFunction {
 public:
  ContractedValuation(Valuation base, TypeSet contracted);
  double eval(const TypeSet& a) const override;
  Rational eval_exact(const TypeSet& a) const override;
  bool supports_exact() const override { return base_->supports_exact(); }
  ValuationKind kind() const override { return ValuationKind::contracted; }
  const Valuation& base() const { return base_; }
  const TypeSet& contracted() const { return set_; }

 private:
  Valuation base_;
  TypeSet set_;
  double base_value_;
};

// f_S. contract(f, {}) is f itself; contracting a contraction folds the sets
// together, so chains along a tree path stay one wrapper deep.
Valuation contract(const Valuation& f, const TypeSet& s);

Valuation weighted_rank(Family family, WeightMap weights);
Valuation coverage_valuation(std::map<TypeId, std::vector<std::uint32_t>> cover_sets);
Valuation partition_weighted_valuation(std::map<TypeId, std::uint32_t> part_of, std::vector<Number> part_weight);
Valuation table_valuation(std::map<TypeSet, Number> table);

}  // namespace smp
