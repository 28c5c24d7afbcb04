#pragma once

#include <map>

#include "smp/ids.hpp"
#include "smp/number.hpp"
#include "smp/type_set.hpp"

namespace smp {

/// Non-negative weight per type; types not listed weigh 0.
class WeightMap {
 public:
  WeightMap() = default;
  explicit WeightMap(std::map<TypeId, Number> weights);

  static WeightMap unit(const TypeSet& types);

  double weight(TypeId t) const;
  const Number& number(TypeId t) const;
  bool is_exact() const { return exact_; }
  const std::map<TypeId, Number>& entries() const { return weights_; }

  template <class Scalar>
  Scalar w(TypeId t) const {
    if constexpr (std::is_same_v<Scalar, double>) {
      return weight(t);
    } else {
      return number(t).exact();
    }
  }

  template <class Scalar>
  Scalar total(const TypeSet& s) const {
    Scalar sum(0);
    for (TypeId t : s) sum += w<Scalar>(t);
    return sum;
  }

  friend bool operator==(const WeightMap& a, const WeightMap& b) { return a.weights_ == b.weights_; }

 private:
  std::map<TypeId, Number> weights_;
  bool exact_ = true;
};

}  // namespace smp
