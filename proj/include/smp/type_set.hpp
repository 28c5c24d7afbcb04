#pragma once

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <vector>

#include "smp/ids.hpp"

namespace smp {

/// Finite set of types, stored sorted and duplicate-free. Sets that appear
/// in evaluation are short (one entry per probed element), so a flat vector
/// beats a bitset over the whole type universe.
class TypeSet {
 public:
  TypeSet() = default;
  TypeSet(std::initializer_list<TypeId> items);
  explicit TypeSet(std::vector<TypeId> items);

  // Members of `ground` selected by the bits of `mask` (ground.size() <= 64).
  static TypeSet from_mask(std::span<const TypeId> ground, std::uint64_t mask);

  bool contains(TypeId t) const;
  bool insert(TypeId t);
  bool erase(TypeId t);
  TypeSet with(TypeId t) const;
  TypeSet without(TypeId t) const;

  std::size_t size() const { return items_.size(); }
  bool empty() const { return items_.empty(); }
  auto begin() const { return items_.begin(); }
  auto end() const { return items_.end(); }
  TypeId operator[](std::size_t i) const { return items_[i]; }
  std::span<const TypeId> items() const { return items_; }

  bool is_subset_of(const TypeSet& other) const;

  friend bool operator==(const TypeSet&, const TypeSet&) = default;
  friend auto operator<=>(const TypeSet& a, const TypeSet& b) { return a.items_ <=> b.items_; }

 private:
  std::vector<TypeId> items_;
};

TypeSet set_union(const TypeSet& a, const TypeSet& b);
TypeSet set_intersection(const TypeSet& a, const TypeSet& b);
TypeSet set_difference(const TypeSet& a, const TypeSet& b);

struct TypeSetHash {
  std::size_t operator()(const TypeSet& s) const noexcept;
};

}  // namespace smp
