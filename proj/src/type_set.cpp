#include "smp/type_set.hpp"

#include <algorithm>
#include <iterator>

namespace smp {

TypeSet::TypeSet(std::initializer_list<TypeId> items) : TypeSet(std::vector<TypeId>(items)) {}

TypeSet::TypeSet(std::vector<TypeId> items) : items_(std::move(items)) {
  std::sort(items_.begin(), items_.end());
  items_.erase(std::unique(items_.begin(), items_.end()), items_.end());
}

TypeSet TypeSet::from_mask(std::span<const TypeId> ground, std::uint64_t mask) {
  std::vector<TypeId> out;
  for (std::size_t i = 0; i < ground.size() && mask; ++i, mask >>= 1) {
    if (mask & 1) out.push_back(ground[i]);
  }
  return TypeSet(std::move(out));
}

bool TypeSet::contains(TypeId t) const { return std::binary_search(items_.begin(), items_.end(), t); }

bool TypeSet::insert(TypeId t) {
  auto it = std::lower_bound(items_.begin(), items_.end(), t);
  if (it != items_.end() && *it == t) return false;
  items_.insert(it, t);
  return true;
}

bool TypeSet::erase(TypeId t) {
  auto it = std::lower_bound(items_.begin(), items_.end(), t);
  if (it == items_.end() || *it != t) return false;
  items_.erase(it);
  return true;
}

TypeSet TypeSet::with(TypeId t) const {
  TypeSet out = *this;
  out.insert(t);
  return out;
}

TypeSet TypeSet::without(TypeId t) const {
  TypeSet out = *this;
  out.erase(t);
  return out;
}

bool TypeSet::is_subset_of(const TypeSet& other) const {
  return std::includes(other.items_.begin(), other.items_.end(), items_.begin(), items_.end());
}

TypeSet set_union(const TypeSet& a, const TypeSet& b) {
  std::vector<TypeId> out;
  out.reserve(a.size() + b.size());
  std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return TypeSet(std::move(out));
}

TypeSet set_intersection(const TypeSet& a, const TypeSet& b) {
  std::vector<TypeId> out;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return TypeSet(std::move(out));
}

TypeSet set_difference(const TypeSet& a, const TypeSet& b) {
  std::vector<TypeId> out;
  std::set_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return TypeSet(std::move(out));
}

std::size_t TypeSetHash::operator()(const TypeSet& s) const noexcept {
  std::size_t h = 0x9e3779b97f4a7c15ULL ^ s.size();
  for (TypeId t : s) h = (h ^ t.value) * 0x100000001b3ULL + (h >> 29);
  return h;
}

}  // namespace smp
