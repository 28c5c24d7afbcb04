#include "smp/reduction.hpp"

#include <cmath>
#include <string>

namespace smp {

int weight_class(double w) {
  if (!(w > 0.0) || !std::isfinite(w)) throw ValidationError("weight_class: weight must be positive and finite");
  int e = 0;
  const double m = std::frexp(w, &e);  // w = m * 2^e, m in [0.5, 1)
  return m == 0.5 ? e - 1 : e;
}

ClassDecomposition class_decompose(const WeightMap& weights, const Family& family) {
  if (!family) throw ValidationError("class_decompose: null family");
  ClassDecomposition d;
  d.family = family;
  std::map<int, std::vector<TypeId>> members;
  for (const auto& [t, w] : weights.entries()) {
    if (w.value() <= 0.0) continue;
    const int j = weight_class(w.value());
    d.class_of.emplace(t, j);
    members[j].push_back(t);
  }
  if (members.empty()) throw ValidationError("class_decompose: all weights are zero");
  for (auto& [j, ts] : members) {
    TypeSet set(std::move(ts));
    d.classes.emplace(j, weighted_rank(family, WeightMap::unit(set)));
    d.members.emplace(j, std::move(set));
  }
  d.a = members.begin()->first;
  d.b = members.rbegin()->first;
  return d;
}

int bucket_width(int k) {
  if (k < 2) throw ValidationError("bucket width needs k >= 2");
  return static_cast<int>(std::ceil(2.0 * std::log2(static_cast<double>(k)) - 1e-12));
}

std::vector<Bucket> bucketize(int b, int a, int k) {
  if (b < a) throw ValidationError("bucketize: b < a");
  const int w = bucket_width(k);
  std::vector<Bucket> out;
  for (int i = 1;; ++i) {
    const int hi = b - (i - 1) * w;
    if (hi < a) break;
    out.push_back(Bucket{i, hi - w + 1, hi});
  }
  return out;
}

const char* to_string(Parity p) { return p == Parity::odd ? "odd" : "even"; }

Representatives select_representatives(const std::map<int, double>& values, const std::vector<Bucket>& buckets) {
  Representatives r;
  double odd = 0.0;
  double even = 0.0;
  for (const auto& [j, v] : values) r.total += v;
  for (const auto& bucket : buckets) {
    std::optional<int> best;
    for (int j = bucket.hi; j >= bucket.lo; --j) {
      auto it = values.find(j);
      if (it == values.end()) continue;
      if (!best || it->second > values.at(*best)) best = j;  // scanning downward keeps the larger j on ties
    }
    if (!best) continue;
    r.argmax.emplace(bucket.index, *best);
    (bucket.index % 2 == 1 ? odd : even) += values.at(*best);
  }
  r.parity = odd >= even ? Parity::odd : Parity::even;
  r.selected_sum = r.parity == Parity::odd ? odd : even;
  for (const auto& [i, j] : r.argmax) {
    if ((i % 2 == 1) == (r.parity == Parity::odd)) r.selected.push_back(i);
  }
  return r;
}

namespace {

// Largest subset of `candidates` whose union with `base` is independent; the
// first such subset in lexicographic order among those of maximum size.
std::vector<TypeId> max_extension(const IndependenceOracle& family, const TypeSet& base,
                                  const std::vector<TypeId>& candidates) {
  const std::size_t n = candidates.size();
  if (n > kCombineCap) {
    throw CapExceededError("combiner: " + std::to_string(n) + " candidate types exceed the exhaustive cap");
  }
  std::vector<TypeId> best;
  for (std::size_t size = n + 1; size-- > 0;) {
    std::vector<std::size_t> idx(size);
    for (std::size_t i = 0; i < size; ++i) idx[i] = i;
    while (true) {
      std::vector<TypeId> pick;
      pick.reserve(size);
      for (auto i : idx) pick.push_back(candidates[i]);
      if (family.is_independent(set_union(base, TypeSet(pick)))) return pick;
      // Next combination in lexicographic order.
      std::size_t i = size;
      while (i > 0 && idx[i - 1] == n - size + i - 1) --i;
      if (i == 0) break;
      ++idx[i - 1];
      for (std::size_t j = i; j < size; ++j) idx[j] = idx[j - 1] + 1;
    }
  }
  return best;
}

}  // namespace

TypeSet greedy_optimal_combine(const TypeSet& path_types, const ClassDecomposition& decomposition,
                               const Representatives& representatives, const Family& family) {
  TypeSet chosen;
  for (int i : representatives.selected) {
    const int j = representatives.argmax.at(i);
    const auto& members = decomposition.members.at(j);
    std::vector<TypeId> candidates;
    for (TypeId t : path_types) {
      if (members.contains(t)) candidates.push_back(t);
    }
    const auto pick = max_extension(*family, chosen, candidates);
    chosen = set_union(chosen, TypeSet(pick));
  }
  return chosen;
}

CombinedResult combined_value(const DecisionTree& tree, const WeightMap& weights, const Family& family, int k,
                              const TypeDistribution& dist, const ExactOptions& options) {
  CombinedResult out;
  out.decomposition = class_decompose(weights, family);
  out.buckets = bucketize(out.decomposition.b, out.decomposition.a, k);
  ExactOptions floating = options;
  floating.arithmetic = Arithmetic::floating;
  floating.trace = false;
  std::map<int, double> values;
  for (const auto& [j, fj] : out.decomposition.classes) {
    const double alg_j = alg_exact(tree, fj, dist, floating).value;
    out.class_alg[j] = alg_j;
    out.class_adap[j] = adap_exact(tree, fj, dist, floating).value;
    values[j] = std::ldexp(alg_j, j);
  }
  out.representatives = select_representatives(values, out.buckets);
  out.claim_rhs = out.representatives.selected_sum / 4.0;

  double total = 0.0;
  for_each_leaf_path<double>(tree, dist, [&](const ProbePath& path, double prob) {
    if (prob == 0.0 || path.empty()) return;
    std::vector<ElementId> elements;
    for (const auto& o : path) elements.push_back(o.element);
    for_each_assignment<double>(
        tree.universe(), dist, elements,
        [&](std::span<const TypeId> fresh, double q) {
          if (q == 0.0) return;
          const TypeSet observed(std::vector<TypeId>(fresh.begin(), fresh.end()));
          const TypeSet pick = greedy_optimal_combine(observed, out.decomposition, out.representatives, family);
          total += prob * q * weights.total<double>(pick);
        },
        options.cap);
  });
  out.report.quantity = "combined";
  out.report.value = total;
  return out;
}

}  // namespace smp
