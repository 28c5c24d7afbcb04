#pragma once

#include <compare>
#include <cstdint>
#include <functional>

namespace smp {

struct ElementId {
  std::uint32_t value = 0;
  friend auto operator<=>(ElementId, ElementId) = default;
};

// Type ids are global: the type spaces of distinct elements are disjoint.
struct TypeId {
  std::uint32_t value = 0;
  friend auto operator<=>(TypeId, TypeId) = default;
};

struct Observation {
  ElementId element;
  TypeId type;
  friend bool operator==(const Observation&, const Observation&) = default;
};

}  // namespace smp

template <>
struct std::hash<smp::ElementId> {
  std::size_t operator()(smp::ElementId e) const noexcept { return std::hash<std::uint32_t>{}(e.value); }
};
template <>
struct std::hash<smp::TypeId> {
  std::size_t operator()(smp::TypeId t) const noexcept { return std::hash<std::uint32_t>{}(t.value); }
};
