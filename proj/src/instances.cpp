#include "smp/instances.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <string>

namespace smp {

const ProbeStrategy* InstanceBundle::strategy() const {
  if (tree) return &*tree;
  return rule.get();
}

namespace {

std::string format_number(const Number& n) { return n.to_string(); }

Number complement(const Number& p) {
  if (p.is_exact()) return Number(Rational(1) - p.exact());
  return Number(1.0 - p.value());
}

Number power(const Number& base, int n) {
  if (base.is_exact()) {
    Rational r = 1;
    for (int i = 0; i < n; ++i) r *= base.exact();
    return Number(r);
  }
  return Number(std::pow(base.value(), n));
}

}  // namespace

int submodular_lb_depth(const Number& eps) {
  const double e = eps.value();
  if (!(e > 0.0 && e < 1.0)) throw ValidationError("eps must lie in (0, 1)");
  if (eps.is_exact()) {
    const Rational q = Rational(1) - eps.exact();
    const Rational target = eps.exact() * eps.exact();
    Rational pw = 1;
    int d = 0;
    while (!(pw < target)) {
      pw *= q;
      ++d;
    }
    return d;
  }
  const double q = 1.0 - e;
  const double target = e * e;
  double pw = 1.0;
  int d = 0;
  while (!(pw < target)) {
    pw *= q;
    ++d;
  }
  return d;
}

ColumnLayout::ColumnLayout(int depth) : depth_(depth) {
  if (depth < 0) throw ValidationError("column layout: negative depth");
  for (int k = 0; k <= depth; ++k) {
    column_start_.push_back(static_cast<std::uint32_t>(coords_.size()));
    for (int l = 0; k + l <= depth; ++l) coords_.emplace_back(k, l);
  }
}

ElementId ColumnLayout::at(int k, int l) const {
  if (!exists(k, l)) throw ValidationError("column layout: e(" + std::to_string(k) + "," + std::to_string(l) + ") does not exist");
  return ElementId{column_start_[k] + static_cast<std::uint32_t>(l)};
}

std::string ColumnLayout::name(int k, int l) { return "e_" + std::to_string(k) + "_" + std::to_string(l); }

ColumnStrategy::ColumnStrategy(UniversePtr universe, int depth) : universe_(std::move(universe)), layout_(depth) {
  if (universe_->element_count() != layout_.size()) throw ValidationError("column strategy: universe size mismatch");
}

std::optional<ElementId> ColumnStrategy::next(std::span<const Observation> path) const {
  if (path.empty()) return layout_.at(0, 0);
  const auto& last = path.back();
  const auto [k, l] = layout_.coords(last.element);
  const bool active = last.type == universe_->first_type(last.element);
  const int nk = active ? k + l + 1 : k;
  const int nl = active ? 0 : l + 1;
  if (!layout_.exists(nk, nl)) return std::nullopt;
  return layout_.at(nk, nl);
}

InstanceBundle gen_submodular_lb_truncated(const Number& eps, int depth) {
  if (!(eps.value() > 0.0 && eps.value() < 1.0)) throw ValidationError("eps must lie in (0, 1)");
  const ColumnLayout layout(depth);
  Universe::Builder builder;
  for (std::size_t x = 0; x < layout.size(); ++x) {
    const auto [k, l] = layout.coords(ElementId{static_cast<std::uint32_t>(x)});
    builder.add_bernoulli(ColumnLayout::name(k, l));
  }
  InstanceBundle b;
  b.construction = "submodular_lb";
  b.parameters["eps"] = format_number(eps);
  b.parameters["depth"] = std::to_string(depth);
  b.universe = builder.build();
  const Number inactive = complement(eps);
  std::vector<Number> probs;
  std::map<TypeId, std::uint32_t> part_of;
  for (ElementId e : b.universe->elements()) {
    probs.push_back(eps);
    probs.push_back(inactive);
    part_of.emplace(b.universe->first_type(e), static_cast<std::uint32_t>(layout.coords(e).first));
  }
  b.dist = TypeDistribution(*b.universe, std::move(probs));
  std::vector<Number> part_weight;
  for (int k = 0; k <= depth; ++k) part_weight.push_back(power(inactive, k));
  b.valuation = partition_weighted_valuation(std::move(part_of), std::move(part_weight));

  std::vector<std::vector<ElementId>> arcs(layout.size());
  for (std::size_t x = 0; x < layout.size(); ++x) {
    const auto [k, l] = layout.coords(ElementId{static_cast<std::uint32_t>(x)});
    if (layout.exists(k, l + 1)) arcs[x].push_back(layout.at(k, l + 1));
    if (layout.exists(k + l + 1, 0)) arcs[x].push_back(layout.at(k + l + 1, 0));
  }
  b.constraint = constraint_dag_path(std::move(arcs), layout.at(0, 0));
  b.rule = std::make_shared<ColumnStrategy>(b.universe, depth);
  // Every probe advances k + l by one, so the tree has at most 2^(D+2) nodes.
  if (depth + 2 <= 18) b.tree = materialize(*b.rule, b.universe, kReferenceTreeNodeCap);
  return b;
}

InstanceBundle gen_submodular_lb(const Number& eps) {
  if (!(eps.value() > 0.0 && eps.value() <= 0.5)) throw ValidationError("eps must lie in (0, 1/2]");
  return gen_submodular_lb_truncated(eps, submodular_lb_depth(eps));
}

double submodular_lb_adap_recurrence(double eps) {
  return submodular_lb_adap_table<double>(eps, submodular_lb_depth(Number(eps))).front();
}

double submodular_lb_alg_opt(double eps) {
  return submodular_lb_alg_table<double>(eps, submodular_lb_depth(Number(eps))).front();
}

Rational submodular_lb_adap_recurrence_exact(const Rational& eps) {
  return submodular_lb_adap_table<Rational>(eps, submodular_lb_depth(Number(eps))).front();
}

Rational submodular_lb_alg_opt_exact(const Rational& eps) {
  return submodular_lb_alg_table<Rational>(eps, submodular_lb_depth(Number(eps))).front();
}

PerfectTree::PerfectTree(std::uint32_t depth, std::uint32_t arity) : depth_(depth), arity_(arity) {
  if (depth < 1 || arity < 1) throw ValidationError("perfect tree: depth and arity must be at least 1");
  std::uint64_t count = 1;
  std::uint64_t level = 1;
  for (std::uint32_t d = 0; d < depth; ++d) {
    if (level > kTreeInstanceEdgeCap) throw ValidationError("perfect tree: too many vertices");
    level *= arity;
    count += level;
  }
  if (count - 1 > kTreeInstanceEdgeCap) {
    throw ValidationError("perfect tree: " + std::to_string(count - 1) + " edges exceed the cap of " +
                          std::to_string(kTreeInstanceEdgeCap));
  }
  vertex_count_ = count;
}

std::uint32_t PerfectTree::vertex_depth(std::uint64_t v) const {
  std::uint32_t d = 0;
  while (v != 0) {
    v = parent(v);
    ++d;
  }
  return d;
}

bool PerfectTree::is_ancestor_or_self(std::uint64_t u, std::uint64_t v) const {
  std::uint32_t du = vertex_depth(u);
  std::uint32_t dv = vertex_depth(v);
  while (dv > du) {
    v = parent(v);
    --dv;
  }
  return u == v;
}

TreeLevelStrategy::TreeLevelStrategy(UniversePtr universe, PerfectTree tree)
    : universe_(std::move(universe)), tree_(tree) {
  if (universe_->element_count() != tree_.edge_count()) throw ValidationError("tree strategy: universe size mismatch");
}

std::optional<ElementId> TreeLevelStrategy::next(std::span<const Observation> path) const {
  const std::uint32_t w = tree_.arity();
  const std::size_t level = path.size() / w;
  if (level >= tree_.depth()) return std::nullopt;
  std::uint64_t v = 0;
  for (std::size_t b = 0; b < level; ++b) {
    std::uint32_t chosen = 0;
    for (std::uint32_t i = 0; i < w; ++i) {
      const auto& o = path[b * w + i];
      if (o.type == universe_->first_type(o.element)) {
        chosen = i;
        break;
      }
    }
    v = tree_.child(v, chosen);
  }
  const auto offset = static_cast<std::uint32_t>(path.size() % w);
  return ElementId{static_cast<std::uint32_t>(tree_.child(v, offset) - 1)};
}

InstanceBundle gen_tree_lb(std::uint32_t k, std::uint32_t w, const Number& p,
                           const std::optional<std::vector<Number>>& depth_weights) {
  if (!(p.value() > 0.0 && p.value() <= 1.0)) throw ValidationError("p must lie in (0, 1]");
  const PerfectTree tree(k, w);
  if (depth_weights && depth_weights->size() != k) throw ValidationError("need one weight per depth 1..k");
  Universe::Builder builder;
  for (std::uint64_t v = 1; v < tree.vertex_count(); ++v) builder.add_bernoulli("e" + std::to_string(v));
  InstanceBundle b;
  b.construction = "tree_lb";
  b.parameters["k"] = std::to_string(k);
  b.parameters["w"] = std::to_string(w);
  b.parameters["p"] = format_number(p);
  b.universe = builder.build();
  const Number q = complement(p);
  std::vector<Number> probs;
  probs.reserve(2 * tree.edge_count());
  std::map<TypeId, std::uint32_t> vertex_of;
  std::map<TypeId, Number> weights;
  std::vector<std::optional<TreeFanConstraint::Edge>> edges;
  for (std::uint64_t v = 1; v < tree.vertex_count(); ++v) {
    const ElementId e{static_cast<std::uint32_t>(v - 1)};
    probs.push_back(p);
    probs.push_back(q);
    const TypeId active = b.universe->first_type(e);
    vertex_of.emplace_hint(vertex_of.end(), active, static_cast<std::uint32_t>(v));
    const Number weight = depth_weights ? (*depth_weights)[tree.vertex_depth(v) - 1] : Number(1);
    weights.emplace_hint(weights.end(), active, weight);
    edges.push_back(TreeFanConstraint::Edge{static_cast<std::uint32_t>(tree.parent(v)), static_cast<std::uint32_t>(v)});
  }
  std::vector<std::int64_t> parent(tree.vertex_count());
  parent[0] = -1;
  for (std::uint64_t v = 1; v < tree.vertex_count(); ++v) parent[v] = static_cast<std::int64_t>(tree.parent(v));
  if (depth_weights) {
    for (std::size_t d = 0; d < depth_weights->size(); ++d) {
      b.parameters["weight_depth_" + std::to_string(d + 1)] = format_number((*depth_weights)[d]);
    }
  }
  b.dist = TypeDistribution(*b.universe, std::move(probs));
  b.family = make_chain_family(std::move(vertex_of), std::move(parent));
  b.valuation = weighted_rank(b.family, WeightMap(std::move(weights)));
  b.constraint = constraint_tree_fan(std::move(edges), 0);
  b.rule = std::make_shared<TreeLevelStrategy>(b.universe, tree);
  // The level strategy branches 2^w ways per level.
  if (static_cast<std::uint64_t>(w) * k <= 16) b.tree = materialize(*b.rule, b.universe, kReferenceTreeNodeCap);
  return b;
}

double tree_lb_adaptive_formula(std::uint32_t k, std::uint32_t w, double p) {
  return static_cast<double>(k) * (1.0 - std::pow(1.0 - p, static_cast<double>(w)));
}

double tree_lb_nonadaptive_bound(std::uint32_t k, double p) { return 1.0 + static_cast<double>(k) * p; }

bool is_prime(std::uint32_t n) {
  if (n < 2) return false;
  for (std::uint32_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) return false;
  }
  return true;
}

PrimeEncoding gen_prime_matroid_encoding(std::uint32_t k) {
  if (!is_prime(k)) throw ValidationError("prime encoding needs a prime k, got " + std::to_string(k));
  PrimeEncoding enc;
  enc.k = k;
  enc.bundle = gen_tree_lb(k, k, Number(Rational(1, k)));
  const PerfectTree tree(k, k);
  enc.labels.resize(tree.vertex_count());
  for (std::uint64_t v = 1; v < tree.vertex_count(); ++v) {
    enc.labels[v] = enc.labels[tree.parent(v)];
    enc.labels[v].push_back(static_cast<std::uint32_t>((v - 1) % k));
  }
  const Universe& u = *enc.bundle.universe;
  for (std::uint32_t i = 1; i <= k; ++i) {
    for (std::uint32_t j = 0; j < k; ++j) {
      std::map<TypeId, std::uint32_t> part_of;
      std::vector<std::uint32_t> capacity(k, 1);
      for (std::uint64_t v = 1; v < tree.vertex_count(); ++v) {
        const TypeId active = u.first_type(ElementId{static_cast<std::uint32_t>(v - 1)});
        const auto dv = static_cast<std::uint32_t>(enc.labels[v].size());
        if (dv >= i) {
          part_of.emplace_hint(part_of.end(), active, (enc.labels[v][i - 1] * j + dv) % k);
        } else {
          part_of.emplace_hint(part_of.end(), active, static_cast<std::uint32_t>(capacity.size()));
          capacity.push_back(1);
        }
      }
      enc.matroids.push_back(make_partition_matroid(std::move(part_of), std::move(capacity)));
      enc.index.emplace_back(i, j);
    }
  }
  enc.intersection = intersect(enc.matroids);
  enc.bundle.construction = "prime_encoding";
  enc.bundle.family = enc.intersection;
  std::map<TypeId, Number> unit;
  for (TypeId t : enc.intersection->ground()) unit.emplace_hint(unit.end(), t, Number(1));
  enc.bundle.valuation = weighted_rank(enc.intersection, WeightMap(std::move(unit)));
  return enc;
}

const char* to_string(RandomValuation v) {
  switch (v) {
    case RandomValuation::coverage: return "coverage";
    case RandomValuation::partition_weighted: return "partition_weighted";
    case RandomValuation::matroid_rank: return "matroid_rank";
    case RandomValuation::matching_rank: return "matching_rank";
  }
  return "unknown";
}

namespace {

struct Rng {
  std::mt19937_64 engine;
  std::uint64_t below(std::uint64_t n) { return std::uniform_int_distribution<std::uint64_t>(0, n - 1)(engine); }
  std::uint64_t between(std::uint64_t lo, std::uint64_t hi) { return lo + below(hi - lo + 1); }
  bool chance(double p) { return uniform01(engine) < p; }
};

void grow_tree(DecisionTree& tree, DecisionTree::NodeId node, std::vector<ElementId>& prefix,
               const ConstraintOracle& constraint, std::size_t max_depth, double stop, Rng& rng) {
  if (prefix.size() >= max_depth) return;
  if (!prefix.empty() && rng.chance(stop)) return;
  std::vector<ElementId> options;
  for (ElementId e : tree.universe().elements()) {
    if (std::find(prefix.begin(), prefix.end(), e) != prefix.end()) continue;
    if (constraint.may_extend(prefix, e)) options.push_back(e);
  }
  if (options.empty()) return;
  const ElementId e = options[rng.below(options.size())];
  const auto kids = tree.expand(node, e);
  const std::vector<DecisionTree::NodeId> ids(kids.begin(), kids.end());
  prefix.push_back(e);
  for (auto c : ids) grow_tree(tree, c, prefix, constraint, max_depth, stop, rng);
  prefix.pop_back();
}

}  // namespace

InstanceBundle gen_random_instance(const RandomInstanceParams& params, std::uint64_t seed) {
  if (params.min_elements < 1 || params.max_elements < params.min_elements || params.max_types < 1) {
    throw ValidationError("random instance: bad size parameters");
  }
  if (params.max_elements > 64) throw ValidationError("random instance: too many elements");
  if (params.valuations.empty() || params.constraints.empty()) {
    throw ValidationError("random instance: need at least one valuation and one constraint kind");
  }
  Rng rng{RandomStream(seed, 0x5eed).engine(0)};
  const std::size_t n = rng.between(params.min_elements, params.max_elements);

  Universe::Builder builder;
  std::vector<std::size_t> type_counts;
  for (std::size_t x = 0; x < n; ++x) {
    const std::size_t t = rng.between(1, params.max_types);
    type_counts.push_back(t);
    std::vector<std::string> names;
    for (std::size_t i = 0; i < t; ++i) names.push_back("x" + std::to_string(x) + "_" + std::to_string(i));
    builder.add_element("x" + std::to_string(x), std::move(names));
  }
  InstanceBundle b;
  b.construction = "random";
  b.parameters["seed"] = std::to_string(seed);
  b.universe = builder.build();
  const Universe& u = *b.universe;

  std::vector<Number> probs;
  for (std::size_t x = 0; x < n; ++x) {
    std::vector<long> mass;
    long total = 0;
    for (std::size_t i = 0; i < type_counts[x]; ++i) {
      mass.push_back(static_cast<long>(rng.between(1, 6)));
      total += mass.back();
    }
    for (long m : mass) probs.push_back(Number(Rational(m, total)));
  }
  b.dist = TypeDistribution(u, std::move(probs));

  std::vector<TypeId> all_types;
  for (std::uint32_t t = 0; t < u.type_count(); ++t) all_types.push_back(TypeId{t});
  const TypeSet ground(all_types);

  const RandomValuation kind = params.valuations[rng.below(params.valuations.size())];
  b.parameters["valuation"] = to_string(kind);
  auto rank_weights = [&] {
    std::map<TypeId, Number> w;
    for (TypeId t : all_types) {
      w.emplace(t, params.max_weight <= 1 ? Number(1) : Number(static_cast<int>(rng.between(1, params.max_weight))));
    }
    return WeightMap(std::move(w));
  };
  switch (kind) {
    case RandomValuation::coverage: {
      std::map<TypeId, std::vector<std::uint32_t>> cover;
      for (TypeId t : all_types) {
        std::vector<std::uint32_t> items;
        const std::size_t size = rng.between(0, 3);
        for (std::size_t i = 0; i < size; ++i) items.push_back(static_cast<std::uint32_t>(rng.below(10)));
        cover.emplace(t, std::move(items));
      }
      b.valuation = coverage_valuation(std::move(cover));
      break;
    }
    case RandomValuation::partition_weighted: {
      const std::size_t parts = rng.between(1, 4);
      std::map<TypeId, std::uint32_t> part_of;
      for (TypeId t : all_types) {
        if (rng.chance(0.2)) continue;
        part_of.emplace(t, static_cast<std::uint32_t>(rng.below(parts)));
      }
      std::vector<Number> weight;
      for (std::size_t i = 0; i < parts; ++i) weight.push_back(Number(Rational(static_cast<long>(rng.between(1, 8)), 4)));
      b.valuation = partition_weighted_valuation(std::move(part_of), std::move(weight));
      break;
    }
    case RandomValuation::matroid_rank: {
      std::vector<Family> members;
      for (std::size_t m = 0; m < std::max<std::size_t>(1, params.matroid_count); ++m) {
        const std::size_t parts = rng.between(2, 4);
        std::map<TypeId, std::uint32_t> part_of;
        for (TypeId t : all_types) part_of.emplace(t, static_cast<std::uint32_t>(rng.below(parts)));
        std::vector<std::uint32_t> capacity;
        for (std::size_t i = 0; i < parts; ++i) capacity.push_back(static_cast<std::uint32_t>(rng.between(1, 2)));
        members.push_back(make_partition_matroid(std::move(part_of), std::move(capacity)));
      }
      b.parameters["k"] = std::to_string(members.size());
      b.family = intersect(std::move(members));
      b.valuation = weighted_rank(b.family, rank_weights());
      break;
    }
    case RandomValuation::matching_rank: {
      std::map<TypeId, MatchingFamily::Edge> edges;
      for (TypeId t : all_types) {
        const auto a = static_cast<std::uint32_t>(rng.below(5));
        auto c = static_cast<std::uint32_t>(rng.below(4));
        if (c >= a) ++c;
        edges.emplace(t, MatchingFamily::Edge{a, c});
      }
      b.parameters["k"] = "2";
      b.family = make_matching_family(std::move(edges));
      b.valuation = weighted_rank(b.family, rank_weights());
      break;
    }
  }

  const ConstraintKind ckind = params.constraints[rng.below(params.constraints.size())];
  b.parameters["constraint"] = to_string(ckind);
  switch (ckind) {
    case ConstraintKind::budget: {
      std::vector<double> cost;
      for (std::size_t x = 0; x < n; ++x) cost.push_back(static_cast<double>(rng.between(1, 2)));
      b.constraint = constraint_budget(std::move(cost), static_cast<double>(rng.between(1, 5)));
      break;
    }
    case ConstraintKind::cardinality:
      b.constraint = constraint_cardinality(rng.between(1, std::max<std::size_t>(1, params.max_depth)));
      break;
    case ConstraintKind::dag_path: {
      std::vector<std::vector<ElementId>> arcs(n);
      for (std::size_t x = 0; x < n; ++x) {
        for (std::size_t y = 0; y < n; ++y) {
          if (x != y && rng.chance(0.5)) arcs[x].push_back(ElementId{static_cast<std::uint32_t>(y)});
        }
      }
      b.constraint = constraint_dag_path(std::move(arcs), ElementId{0});
      break;
    }
    case ConstraintKind::tree_fan:
    case ConstraintKind::table:
      throw ValidationError(std::string("random instance: unsupported constraint kind ") + to_string(ckind));
  }

  DecisionTree tree(b.universe);
  std::vector<ElementId> prefix;
  grow_tree(tree, tree.root(), prefix, *b.constraint, params.max_depth, params.stop_probability, rng);
  b.tree = std::move(tree);
  return b;
}

}  // namespace smp
