#include "smp/core.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace smp {

ElementId Universe::Builder::add_element(std::string name, std::vector<std::string> type_names) {
  if (type_names.empty()) throw ValidationError("element '" + name + "' has no types");
  if (first_type_.empty()) first_type_.push_back(0);
  const ElementId id{static_cast<std::uint32_t>(element_names_.size())};
  element_names_.push_back(std::move(name));
  for (auto& t : type_names) type_names_.push_back(std::move(t));
  first_type_.push_back(static_cast<std::uint32_t>(type_names_.size()));
  return id;
}

ElementId Universe::Builder::add_bernoulli(std::string name) {
  std::vector<std::string> types{name + "+", name + "-"};
  return add_element(std::move(name), std::move(types));
}

std::shared_ptr<const Universe> Universe::Builder::build() {
  std::shared_ptr<Universe> u(new Universe());
  if (first_type_.empty()) first_type_.push_back(0);
  u->element_names_ = std::move(element_names_);
  u->type_names_ = std::move(type_names_);
  u->first_type_ = std::move(first_type_);
  u->element_of_type_.resize(u->type_names_.size());
  for (std::uint32_t e = 0; e < u->element_names_.size(); ++e) {
    for (std::uint32_t t = u->first_type_[e]; t < u->first_type_[e + 1]; ++t) u->element_of_type_[t] = e;
  }
  u->element_index_.reserve(u->element_names_.size());
  for (std::uint32_t e = 0; e < u->element_names_.size(); ++e) {
    const auto& name = u->element_names_[e];
    if (name.empty()) throw ValidationError("empty element name");
    if (!u->element_index_.emplace(name, e).second) {
      throw ValidationError("duplicate element name '" + name + "'");
    }
  }
  u->type_index_.reserve(u->type_names_.size());
  for (std::uint32_t t = 0; t < u->type_names_.size(); ++t) {
    const auto& name = u->type_names_[t];
    if (name.empty()) throw ValidationError("empty type name");
    if (!u->type_index_.emplace(name, t).second) {
      throw ValidationError("duplicate type name '" + name + "'");
    }
  }
  element_names_.clear();
  type_names_.clear();
  first_type_.clear();
  return u;
}

TypeId Universe::type_at(ElementId e, std::size_t local) const {
  if (local >= type_count(e)) throw ValidationError("type index out of range for " + element_name(e));
  return TypeId{static_cast<std::uint32_t>(first_type_[e.value] + local)};
}

std::vector<TypeId> Universe::types_of(ElementId e) const {
  std::vector<TypeId> out;
  for (std::uint32_t t = first_type_.at(e.value); t < first_type_.at(e.value + 1); ++t) out.push_back(TypeId{t});
  return out;
}

bool Universe::owns(ElementId e, TypeId t) const {
  return e.value < element_count() && t.value >= first_type_[e.value] && t.value < first_type_[e.value + 1];
}

std::optional<ElementId> Universe::find_element(std::string_view name) const {
  auto it = element_index_.find(std::string(name));
  if (it == element_index_.end()) return std::nullopt;
  return ElementId{it->second};
}

std::optional<TypeId> Universe::find_type(std::string_view name) const {
  auto it = type_index_.find(std::string(name));
  if (it == type_index_.end()) return std::nullopt;
  return TypeId{it->second};
}

std::vector<ElementId> Universe::elements() const {
  std::vector<ElementId> out(element_count());
  for (std::uint32_t e = 0; e < out.size(); ++e) out[e] = ElementId{e};
  return out;
}

TypeDistribution::TypeDistribution(const Universe& universe, std::vector<Number> probabilities)
    : probs_(std::move(probabilities)) {
  if (probs_.size() != universe.type_count()) {
    throw ValidationError("distribution has " + std::to_string(probs_.size()) + " probabilities for " +
                          std::to_string(universe.type_count()) + " types");
  }
  exact_ = std::all_of(probs_.begin(), probs_.end(), [](const Number& n) { return n.is_exact(); });
  values_.reserve(probs_.size());
  for (const auto& n : probs_) values_.push_back(n.value());
  for (ElementId e : universe.elements()) {
    double sum = 0.0;
    Rational exact_sum = 0;
    for (TypeId t : universe.types_of(e)) {
      const double p = prob(t);
      if (!(p >= 0.0 && p <= 1.0)) {
        throw ValidationError("probability of type '" + universe.type_name(t) + "' outside [0,1]");
      }
      sum += p;
      if (exact_) exact_sum += probs_[t.value].exact();
    }
    if (std::abs(sum - 1.0) > 1e-12) {
      throw ValidationError("probabilities of element '" + universe.element_name(e) + "' sum to " +
                            std::to_string(sum) + ", not 1");
    }
    if (exact_ && exact_sum != 1) {
      throw ValidationError("exact probabilities of element '" + universe.element_name(e) + "' sum to " +
                            to_string(exact_sum) + ", not 1");
    }
  }
}

TypeVector::TypeVector(std::vector<Observation> entries) : entries_(std::move(entries)) {
  std::sort(entries_.begin(), entries_.end(),
            [](const Observation& a, const Observation& b) { return a.element < b.element; });
  for (std::size_t i = 1; i < entries_.size(); ++i) {
    if (entries_[i].element == entries_[i - 1].element) {
      throw ValidationError("type vector assigns element " + std::to_string(entries_[i].element.value) + " twice");
    }
  }
}

void TypeVector::set(ElementId e, TypeId t) {
  auto it = std::lower_bound(entries_.begin(), entries_.end(), e,
                             [](const Observation& o, ElementId x) { return o.element < x; });
  if (it != entries_.end() && it->element == e) {
    it->type = t;
  } else {
    entries_.insert(it, Observation{e, t});
  }
}

std::optional<TypeId> TypeVector::get(ElementId e) const {
  auto it = std::lower_bound(entries_.begin(), entries_.end(), e,
                             [](const Observation& o, ElementId x) { return o.element < x; });
  if (it != entries_.end() && it->element == e) return it->type;
  return std::nullopt;
}

TypeId TypeVector::at(ElementId e) const {
  if (auto t = get(e)) return *t;
  throw ValidationError("element " + std::to_string(e.value) + " is unassigned");
}

TypeSet TypeVector::types() const {
  std::vector<TypeId> out;
  out.reserve(entries_.size());
  for (const auto& o : entries_) out.push_back(o.type);
  return TypeSet(std::move(out));
}

bool TypeVector::consistent_with(const Universe& universe) const {
  return std::all_of(entries_.begin(), entries_.end(),
                     [&](const Observation& o) { return universe.owns(o.element, o.type); });
}

TypeVector restrict(const TypeVector& vector, std::span<const ElementId> subset) {
  std::vector<Observation> out;
  out.reserve(subset.size());
  for (ElementId e : subset) out.push_back(Observation{e, vector.at(e)});
  return TypeVector(std::move(out));
}

std::mt19937_64 RandomStream::engine(std::uint64_t counter) const {
  std::seed_seq seq{static_cast<std::uint32_t>(seed_), static_cast<std::uint32_t>(seed_ >> 32),
                    static_cast<std::uint32_t>(stream_), static_cast<std::uint32_t>(stream_ >> 32),
                    static_cast<std::uint32_t>(counter), static_cast<std::uint32_t>(counter >> 32)};
  return std::mt19937_64(seq);
}

double uniform01(std::mt19937_64& engine) { return static_cast<double>(engine() >> 11) * 0x1.0p-53; }

TypeId sample_type(const Universe& universe, const TypeDistribution& dist, ElementId e,
                   std::mt19937_64& engine) {
  const std::size_t count = universe.type_count(e);
  const TypeId first = universe.first_type(e);
  if (count == 1) return first;
  const double u = uniform01(engine);
  double cumulative = 0.0;
  std::optional<TypeId> last_positive;
  for (std::size_t i = 0; i < count; ++i) {
    const TypeId t{first.value + static_cast<std::uint32_t>(i)};
    const double p = dist.prob(t);
    if (p <= 0.0) continue;
    cumulative += p;
    last_positive = t;
    if (u < cumulative) return t;
  }
  return *last_positive;  // rounding left u just above the cumulative total
}

TypeVector sample_type_vector(const Universe& universe, const TypeDistribution& dist,
                              const RandomStream& stream, std::uint64_t counter) {
  auto engine = stream.engine(counter);
  std::vector<Observation> out;
  out.reserve(universe.element_count());
  for (ElementId e : universe.elements()) out.push_back(Observation{e, sample_type(universe, dist, e, engine)});
  return TypeVector(std::move(out));
}

std::uint64_t assignment_count(const Universe& universe, std::span<const ElementId> subset) {
  std::uint64_t count = 1;
  for (ElementId e : subset) {
    const std::uint64_t c = universe.type_count(e);
    if (count > std::numeric_limits<std::uint64_t>::max() / c) return std::numeric_limits<std::uint64_t>::max();
    count *= c;
  }
  return count;
}

std::vector<std::pair<TypeVector, double>> enumerate_assignments(const Universe& universe,
                                                                 const TypeDistribution& dist,
                                                                 std::span<const ElementId> subset,
                                                                 std::uint64_t cap) {
  std::vector<ElementId> sorted(subset.begin(), subset.end());
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
    throw ValidationError("enumerate_assignments: subset repeats an element");
  }
  std::vector<std::pair<TypeVector, double>> out;
  for_each_assignment<double>(
      universe, dist, subset,
      [&](std::span<const TypeId> types, double prob) {
        std::vector<Observation> obs;
        obs.reserve(types.size());
        for (std::size_t i = 0; i < types.size(); ++i) obs.push_back(Observation{subset[i], types[i]});
        out.emplace_back(TypeVector(std::move(obs)), prob);
      },
      cap);
  return out;
}

}  // namespace smp
