#include "smp/verify.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <random>
#include <string>

namespace smp {

namespace {

void require_ground(const TypeSet& ground, std::size_t cap, const char* what) {
  if (ground.size() > cap) {
    throw ValidationError(std::string(what) + ": ground of " + std::to_string(ground.size()) +
                          " types exceeds the exhaustive cap of " + std::to_string(cap));
  }
}

std::vector<double> tabulate(const ValuationFunction& f, const TypeSet& ground) {
  const std::uint64_t n = std::uint64_t{1} << ground.size();
  std::vector<double> table(n);
  for (std::uint64_t m = 0; m < n; ++m) table[m] = f.eval(TypeSet::from_mask(ground.items(), m));
  return table;
}

std::vector<bool> tabulate(const IndependenceOracle& family, const TypeSet& ground) {
  const std::uint64_t n = std::uint64_t{1} << ground.size();
  std::vector<bool> table(n);
  for (std::uint64_t m = 0; m < n; ++m) table[m] = family.is_independent(TypeSet::from_mask(ground.items(), m));
  return table;
}

}  // namespace

CheckResult check_submodular(const ValuationFunction& f, const TypeSet& ground, double tol) {
  require_ground(ground, kVerifyGroundCap, "check_submodular");
  const auto table = tabulate(f, ground);
  const std::uint64_t n = table.size();
  CheckResult r;
  for (std::uint64_t a = 0; a < n; ++a) {
    for (std::uint64_t b = 0; b < n; ++b) {
      ++r.counts["pairs"];
      const double lhs = table[a | b] + table[a & b];
      const double rhs = table[a] + table[b];
      if (lhs > rhs + tol * std::max(1.0, std::abs(rhs))) {
        r.ok = false;
        r.message = "f(A u B) + f(A n B) = " + std::to_string(lhs) + " exceeds f(A) + f(B) = " + std::to_string(rhs);
        r.witness = {TypeSet::from_mask(ground.items(), a), TypeSet::from_mask(ground.items(), b)};
        return r;
      }
    }
  }
  return r;
}

CheckResult check_monotone(const ValuationFunction& f, const TypeSet& ground, double tol) {
  require_ground(ground, kVerifyGroundCap, "check_monotone");
  const auto table = tabulate(f, ground);
  CheckResult r;
  for (std::uint64_t a = 0; a < table.size(); ++a) {
    for (std::size_t i = 0; i < ground.size(); ++i) {
      const std::uint64_t b = a | (std::uint64_t{1} << i);
      if (b == a) continue;
      ++r.counts["pairs"];
      if (table[a] > table[b] + tol * std::max(1.0, std::abs(table[b]))) {
        r.ok = false;
        r.message = "f decreases when adding a type";
        r.witness = {TypeSet::from_mask(ground.items(), a), TypeSet::from_mask(ground.items(), b)};
        return r;
      }
    }
  }
  if (table[0] != 0.0) {
    r.ok = false;
    r.message = "f(empty set) is not 0";
    r.witness = {TypeSet{}};
  }
  return r;
}

CheckResult check_downward_closed(const IndependenceOracle& family, const TypeSet& ground) {
  require_ground(ground, kVerifyGroundCap, "check_downward_closed");
  const auto indep = tabulate(family, ground);
  CheckResult r;
  if (!indep[0]) {
    r.ok = false;
    r.message = "the empty set is dependent";
    r.witness = {TypeSet{}, TypeSet{}};
    return r;
  }
  // Checking one-element removals suffices by induction on |A \ B|.
  for (std::uint64_t a = 0; a < indep.size(); ++a) {
    if (!indep[a]) continue;
    ++r.counts["independent_sets"];
    for (std::size_t i = 0; i < ground.size(); ++i) {
      const std::uint64_t bit = std::uint64_t{1} << i;
      if (!(a & bit) || indep[a & ~bit]) continue;
      r.ok = false;
      r.message = "an independent set has a dependent subset";
      r.witness = {TypeSet::from_mask(ground.items(), a), TypeSet::from_mask(ground.items(), a & ~bit)};
      return r;
    }
  }
  return r;
}

CheckResult check_prefix_closed(const ConstraintOracle& constraint, const Universe& universe, std::size_t max_len,
                                std::uint64_t cap) {
  CheckResult r;
  std::vector<ElementId> seq;
  std::vector<bool> used(universe.element_count(), false);
  std::uint64_t visited = 0;
  // Returns false once a witness is found.
  auto visit = [&](auto&& self) -> bool {
    if (++visited > cap) throw CapExceededError("check_prefix_closed: more than " + std::to_string(cap) + " sequences");
    if (!seq.empty() && constraint.contains(seq) &&
        !constraint.contains(std::span<const ElementId>(seq).first(seq.size() - 1))) {
      r.ok = false;
      r.message = "a feasible sequence has an infeasible prefix";
      r.sequence = seq;
      return false;
    }
    if (seq.size() == max_len) return true;
    for (std::uint32_t x = 0; x < universe.element_count(); ++x) {
      if (used[x]) continue;
      used[x] = true;
      seq.push_back(ElementId{x});
      const bool go_on = self(self);
      seq.pop_back();
      used[x] = false;
      if (!go_on) return false;
    }
    return true;
  };
  visit(visit);
  r.counts["sequences"] = visited;
  return r;
}

CheckResult check_k_extendible(const IndependenceOracle& family, const TypeSet& ground, std::size_t k) {
  require_ground(ground, kExtendibleGroundCap, "check_k_extendible");
  const auto indep = tabulate(family, ground);
  const std::size_t n = ground.size();
  CheckResult r;
  for (std::uint64_t b = 0; b < indep.size(); ++b) {
    if (!indep[b]) continue;
    for (std::size_t i = 0; i < n; ++i) {
      const std::uint64_t e = std::uint64_t{1} << i;
      if (b & e) continue;  // Z = {} already works
      // Removal sets that make room for e, among subsets of B of size <= k.
      std::vector<std::uint64_t> good;
      for (std::uint64_t z = b;; z = (z - 1) & b) {
        if (static_cast<std::size_t>(std::popcount(z)) <= k && indep[(b & ~z) | e]) good.push_back(z);
        if (z == 0) break;
      }
      for (std::uint64_t a = b;; a = (a - 1) & b) {
        if (indep[a | e]) {
          ++r.counts["tuples"];
          const bool ok = std::any_of(good.begin(), good.end(), [&](std::uint64_t z) { return (z & a) == 0; });
          if (!ok) {
            r.ok = false;
            r.message = "no removal set of size <= " + std::to_string(k) + " admits the extension";
            r.witness = {TypeSet::from_mask(ground.items(), a), TypeSet::from_mask(ground.items(), b)};
            r.element = ground[i];
            return r;
          }
        }
        if (a == 0) break;
      }
    }
  }
  return r;
}

namespace {

// Smallest (then lexicographically first) Z within `pool`, |Z| <= k, with (base \ Z) + e independent.
std::optional<TypeSet> removal_set(const IndependenceOracle& family, const TypeSet& base, const TypeSet& pool,
                                   TypeId e, std::size_t k) {
  const std::size_t n = pool.size();
  for (std::size_t size = 0; size <= std::min(k, n); ++size) {
    std::vector<std::size_t> idx(size);
    for (std::size_t i = 0; i < size; ++i) idx[i] = i;
    while (true) {
      std::vector<TypeId> z;
      for (auto i : idx) z.push_back(pool[i]);
      TypeSet zs(std::move(z));
      if (family.is_independent(set_difference(base, zs).with(e))) return zs;
      std::size_t i = size;
      while (i > 0 && idx[i - 1] == n - size + i - 1) --i;
      if (i == 0) break;
      ++idx[i - 1];
      for (std::size_t j = i; j < size; ++j) idx[j] = idx[j - 1] + 1;
    }
  }
  return std::nullopt;
}

}  // namespace

ExtensionWitness find_extension_witness(const IndependenceOracle& family, std::size_t k, const TypeSet& a,
                                        const TypeSet& b, const TypeSet& e) {
  if (!a.is_subset_of(b)) throw ValidationError("find_extension_witness: A is not a subset of B");
  if (!family.is_independent(b)) throw ValidationError("find_extension_witness: B is not independent");
  if (!family.is_independent(set_union(a, e))) throw ValidationError("find_extension_witness: A u E is not independent");
  ExtensionWitness out;
  TypeSet z;
  TypeSet added;
  for (TypeId ei : e) {
    const TypeSet current = set_union(set_difference(b, z), added);
    const TypeSet pool = set_difference(set_difference(set_difference(b, z), a), added);
    const auto step = removal_set(family, current, pool, ei, k);
    if (!step) {
      out.message = "family is not " + std::to_string(k) + "-extendible: no removal set for type " +
                    std::to_string(ei.value);
      out.z = z;
      return out;
    }
    z = set_union(z, *step);
    added.insert(ei);
  }
  out.found = true;
  out.z = std::move(z);
  return out;
}

namespace {

bool is_chain(const PerfectTree& tree, std::vector<std::uint64_t> vertices) {
  std::sort(vertices.begin(), vertices.end(),
            [&](auto x, auto y) { return tree.vertex_depth(x) < tree.vertex_depth(y); });
  for (std::size_t i = 1; i < vertices.size(); ++i) {
    if (!tree.is_ancestor_or_self(vertices[i - 1], vertices[i])) return false;
  }
  return true;
}

}  // namespace

CheckResult check_encoding(const std::vector<Family>& matroids, const PerfectTree& tree,
                           std::span<const TypeId> edge_types, const EncodingCheckOptions& options) {
  if (edge_types.size() != tree.edge_count()) throw ValidationError("check_encoding: one type per edge required");
  const Family family = intersect(matroids);
  const std::uint64_t m = tree.edge_count();
  CheckResult r;
  auto set_of = [&](const std::vector<std::uint64_t>& vs) {
    std::vector<TypeId> ts;
    for (auto v : vs) ts.push_back(edge_types[v - 1]);
    return TypeSet(std::move(ts));
  };
  auto check = [&](const std::vector<std::uint64_t>& vs, const char* counter) {
    ++r.counts[counter];
    const TypeSet s = set_of(vs);
    const bool indep = family->is_independent(s);
    const bool chain = is_chain(tree, vs);
    if (indep != chain) {
      r.ok = false;
      r.message = indep ? "a set off every root-leaf path is independent" : "a root-leaf chain is dependent";
      r.witness = {s};
    }
    return r.ok;
  };
  std::mt19937_64 engine = RandomStream(options.seed, 0xe4c).engine(0);
  auto below = [&](std::uint64_t n) { return std::uniform_int_distribution<std::uint64_t>(0, n - 1)(engine); };

  const std::uint64_t pairs = m * (m - 1) / 2;
  if (pairs <= options.exhaustive_pair_limit) {
    for (std::uint64_t u = 1; u <= m; ++u) {
      for (std::uint64_t v = u + 1; v <= m; ++v) {
        if (!check({u, v}, "pairs")) return r;
      }
    }
  } else {
    for (std::uint64_t s = 0; s < options.sample_pairs; ++s) {
      const std::uint64_t u = 1 + below(m);
      std::uint64_t v = 1 + below(m - 1);
      if (v >= u) ++v;
      if (!check({u, v}, "pairs")) return r;
    }
  }

  if (m <= 16) {
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << m); ++mask) {
      std::vector<std::uint64_t> vs;
      for (std::uint64_t v = 1; v <= m; ++v) {
        if (mask & (std::uint64_t{1} << (v - 1))) vs.push_back(v);
      }
      if (!check(vs, "sets")) return r;
    }
    return r;
  }
  const std::uint64_t first_leaf = m + 1 - [&] {
    std::uint64_t leaves = 1;
    for (std::uint32_t d = 0; d < tree.depth(); ++d) leaves *= tree.arity();
    return leaves;
  }();
  for (std::uint64_t s = 0; s < options.sample_sets; ++s) {
    std::vector<std::uint64_t> vs;
    if (s % 2 == 0) {
      // A random sub-chain of a random root-leaf path, sometimes with one stray edge.
      for (std::uint64_t v = first_leaf + below(m + 1 - first_leaf); v != 0; v = tree.parent(v)) {
        if (below(2) == 1) vs.push_back(v);
      }
      if (below(2) == 1) {
        const std::uint64_t extra = 1 + below(m);
        if (std::find(vs.begin(), vs.end(), extra) == vs.end()) vs.push_back(extra);
      }
    } else {
      const std::uint64_t size = 2 + below(tree.depth() + 1);
      while (vs.size() < size) {
        const std::uint64_t v = 1 + below(m);
        if (std::find(vs.begin(), vs.end(), v) == vs.end()) vs.push_back(v);
      }
    }
    if (!check(vs, "sets")) return r;
  }
  return r;
}

CheckResult check_encoding(const PrimeEncoding& encoding, const EncodingCheckOptions& options) {
  const PerfectTree tree(encoding.k, encoding.k);
  std::vector<TypeId> edge_types;
  for (ElementId e : encoding.bundle.universe->elements()) edge_types.push_back(encoding.bundle.universe->first_type(e));
  return check_encoding(encoding.matroids, tree, edge_types, options);
}

}  // namespace smp
