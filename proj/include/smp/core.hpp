#pragma once

// Ground-set model: elements, their disjoint type spaces, independent
// per-element type distributions, and enumeration / sampling over them.

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "smp/error.hpp"
#include "smp/ids.hpp"
#include "smp/number.hpp"
#include "smp/type_set.hpp"

namespace smp {

inline constexpr std::uint64_t kDefaultAssignmentCap = std::uint64_t{1} << 20;

/// Elements and their type spaces. The types of one element occupy a
/// contiguous block of global type ids, in the order they were declared.
class Universe {
 public:
  class Builder {
   public:
    // Returns the new element's id. Type names must be globally unique and non-empty.
    ElementId add_element(std::string name, std::vector<std::string> type_names);
    // Two types named "<name>+" (active) and "<name>-" (inactive), in that order.
    ElementId add_bernoulli(std::string name);
    std::shared_ptr<const Universe> build();

   private:
    std::vector<std::string> element_names_;
    std::vector<std::string> type_names_;
    std::vector<std::uint32_t> first_type_;
  };

  std::size_t element_count() const { return element_names_.size(); }
  std::size_t type_count() const { return type_names_.size(); }

  TypeId first_type(ElementId e) const { return TypeId{first_type_.at(e.value)}; }
  std::size_t type_count(ElementId e) const {
    return first_type_.at(e.value + 1) - first_type_[e.value];
  }
  TypeId type_at(ElementId e, std::size_t local) const;
  std::vector<TypeId> types_of(ElementId e) const;
  ElementId element_of(TypeId t) const { return ElementId{element_of_type_.at(t.value)}; }
  std::size_t local_index(TypeId t) const { return t.value - first_type_[element_of(t).value]; }
  bool owns(ElementId e, TypeId t) const;

  const std::string& element_name(ElementId e) const { return element_names_.at(e.value); }
  const std::string& type_name(TypeId t) const { return type_names_.at(t.value); }
  std::optional<ElementId> find_element(std::string_view name) const;
  std::optional<TypeId> find_type(std::string_view name) const;

  std::vector<ElementId> elements() const;

 private:
  Universe() = default;

  std::vector<std::string> element_names_;
  std::vector<std::string> type_names_;
  std::vector<std::uint32_t> first_type_;  // size element_count()+1
  std::vector<std::uint32_t> element_of_type_;
  std::unordered_map<std::string, std::uint32_t> element_index_;
  std::unordered_map<std::string, std::uint32_t> type_index_;
};

using UniversePtr = std::shared_ptr<const Universe>;

/// Independent per-element distributions D_e, stored per type.
class TypeDistribution {
 public:
  TypeDistribution() = default;
  // probabilities[t] is the probability of type t; validated against the universe.
  TypeDistribution(const Universe& universe, std::vector<Number> probabilities);

  double prob(TypeId t) const { return values_.at(t.value); }
  const Rational& exact_prob(TypeId t) const { return probs_.at(t.value).exact(); }
  const Number& number(TypeId t) const { return probs_.at(t.value); }
  bool is_exact() const { return exact_; }
  std::size_t size() const { return probs_.size(); }

  template <class Scalar>
  Scalar p(TypeId t) const {
    if constexpr (std::is_same_v<Scalar, double>) {
      return prob(t);
    } else {
      return exact_prob(t);
    }
  }

  friend bool operator==(const TypeDistribution& a, const TypeDistribution& b) {
    return a.probs_ == b.probs_;
  }

 private:
  std::vector<Number> probs_;
  std::vector<double> values_;
  bool exact_ = false;
};

/// Assignment of types to elements, total or partial. Kept sorted by element.
class TypeVector {
 public:
  TypeVector() = default;
  explicit TypeVector(std::vector<Observation> entries);

  void set(ElementId e, TypeId t);
  std::optional<TypeId> get(ElementId e) const;
  TypeId at(ElementId e) const;  // throws ValidationError when unassigned
  bool assigns(ElementId e) const { return get(e).has_value(); }
  std::size_t size() const { return entries_.size(); }
  bool empty() const { return entries_.empty(); }
  std::span<const Observation> entries() const { return entries_; }
  TypeSet types() const;

  // Each assigned type belongs to its element.
  bool consistent_with(const Universe& universe) const;

  friend bool operator==(const TypeVector&, const TypeVector&) = default;

 private:
  std::vector<Observation> entries_;
};

// X_S: the partial vector over `subset`. Throws ValidationError if some element is unassigned.
TypeVector restrict(const TypeVector& vector, std::span<const ElementId> subset);

/// Counter-addressable random stream: (seed, stream id, counter) fixes the
/// generator state, so samples do not depend on scheduling.
class RandomStream {
 public:
  RandomStream(std::uint64_t seed, std::uint64_t stream_id) : seed_(seed), stream_(stream_id) {}
  std::mt19937_64 engine(std::uint64_t counter) const;
  std::uint64_t seed() const { return seed_; }
  std::uint64_t stream_id() const { return stream_; }

 private:
  std::uint64_t seed_;
  std::uint64_t stream_;
};

// Uniform double in [0,1) from the top 53 bits of one draw.
double uniform01(std::mt19937_64& engine);

TypeId sample_type(const Universe& universe, const TypeDistribution& dist, ElementId e,
                   std::mt19937_64& engine);

TypeVector sample_type_vector(const Universe& universe, const TypeDistribution& dist,
                              const RandomStream& stream, std::uint64_t counter);

// Product of type-space sizes over `subset`, saturating at UINT64_MAX.
std::uint64_t assignment_count(const Universe& universe, std::span<const ElementId> subset);

/// Visits every assignment of types to the (distinct) elements of `subset`
/// exactly once, with its product probability. `fn(types, prob)` receives the
/// chosen types aligned with `subset`. Throws ExactInfeasibleError past `cap`.
template <class Scalar, class Fn>
void for_each_assignment(const Universe& universe, const TypeDistribution& dist,
                         std::span<const ElementId> subset, Fn&& fn,
                         std::uint64_t cap = kDefaultAssignmentCap) {
  if (assignment_count(universe, subset) > cap) {
    throw ExactInfeasibleError("assignment space over " + std::to_string(subset.size()) +
                               " elements exceeds cap " + std::to_string(cap));
  }
  const std::size_t n = subset.size();
  std::vector<std::size_t> digit(n, 0);
  std::vector<TypeId> types(n);
  for (std::size_t i = 0; i < n; ++i) types[i] = universe.first_type(subset[i]);
  while (true) {
    Scalar prob(1);
    for (std::size_t i = 0; i < n; ++i) prob *= dist.template p<Scalar>(types[i]);
    fn(std::span<const TypeId>(types), prob);
    std::size_t i = 0;
    for (; i < n; ++i) {
      if (++digit[i] < universe.type_count(subset[i])) {
        types[i] = universe.type_at(subset[i], digit[i]);
        break;
      }
      digit[i] = 0;
      types[i] = universe.first_type(subset[i]);
    }
    if (i == n) break;
  }
}

// Materialized form of for_each_assignment (floating point).
std::vector<std::pair<TypeVector, double>> enumerate_assignments(
    const Universe& universe, const TypeDistribution& dist, std::span<const ElementId> subset,
    std::uint64_t cap = kDefaultAssignmentCap);

}  // namespace smp
