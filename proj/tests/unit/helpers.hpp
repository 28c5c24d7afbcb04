#pragma once

// Independent brute-force oracles shared by the unit tests. They enumerate
// full joint outcomes directly instead of reusing the library's evaluators.

#include <cmath>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include "smp/core.hpp"
#include "smp/families.hpp"
#include "smp/strategy.hpp"
#include "smp/valuation.hpp"

namespace testing {

using namespace smp;

// Every full type vector over all elements with its probability.
inline void for_each_full_vector(const Universe& u, const TypeDistribution& dist,
                                 const std::function<void(const std::vector<TypeId>&, double)>& fn) {
  const std::size_t n = u.element_count();
  std::vector<TypeId> x(n);
  std::function<void(std::size_t, double)> rec = [&](std::size_t i, double p) {
    if (i == n) {
      fn(x, p);
      return;
    }
    for (TypeId t : u.types_of(ElementId{static_cast<std::uint32_t>(i)})) {
      x[i] = t;
      rec(i + 1, p * dist.prob(t));
    }
  };
  rec(0, 1.0);
}

// Elements probed by the tree under the full vector x.
inline std::vector<ElementId> walk(const DecisionTree& tree, const std::vector<TypeId>& x) {
  std::vector<ElementId> out;
  auto node = tree.root();
  while (!tree.is_leaf(node)) {
    const ElementId e = tree.element(node);
    out.push_back(e);
    node = tree.child(node, x[e.value]);
  }
  return out;
}

inline double brute_adap(const DecisionTree& tree, const ValuationFunction& f, const TypeDistribution& dist) {
  double total = 0.0;
  for_each_full_vector(tree.universe(), dist, [&](const std::vector<TypeId>& x, double p) {
    std::vector<TypeId> types;
    for (ElementId e : walk(tree, x)) types.push_back(x[e.value]);
    total += p * f.eval(TypeSet(types));
  });
  return total;
}

inline double brute_alg(const DecisionTree& tree, const ValuationFunction& f, const TypeDistribution& dist) {
  double total = 0.0;
  const Universe& u = tree.universe();
  for_each_full_vector(u, dist, [&](const std::vector<TypeId>& x, double p) {
    const auto path = walk(tree, x);
    for_each_full_vector(u, dist, [&](const std::vector<TypeId>& x2, double q) {
      std::vector<TypeId> types;
      for (ElementId e : path) types.push_back(x2[e.value]);
      total += p * q * f.eval(TypeSet(types));
    });
  });
  return total;
}

// Scan the path root to leaf; feed X'_e then X_e, skipping loops.
inline double brute_greedy(const DecisionTree& tree, const Family& family, const TypeDistribution& dist) {
  double total = 0.0;
  const Universe& u = tree.universe();
  for_each_full_vector(u, dist, [&](const std::vector<TypeId>& x, double p) {
    const auto path = walk(tree, x);
    for_each_full_vector(u, dist, [&](const std::vector<TypeId>& x2, double q) {
      std::vector<TypeId> selected;
      auto try_add = [&](TypeId t) {
        std::vector<TypeId> s = selected;
        s.push_back(t);
        if (std::find(selected.begin(), selected.end(), t) == selected.end() &&
            family->is_independent(TypeSet(s))) {
          selected.push_back(t);
        }
      };
      for (ElementId e : path) {
        try_add(x2[e.value]);
        try_add(x[e.value]);
      }
      total += p * q * static_cast<double>(selected.size());
    });
  });
  return total;
}

// Largest total weight over independent subsets of a, by enumeration.
inline double brute_rank(const IndependenceOracle& family, const TypeSet& a, const WeightMap& w) {
  const auto items = a.items();
  double best = 0.0;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << items.size()); ++mask) {
    const TypeSet s = TypeSet::from_mask(items, mask);
    if (family.is_independent(s)) best = std::max(best, w.total<double>(s));
  }
  return best;
}

// Column recurrences written directly from their definitions.
inline double column_adap(double eps, int depth) {
  std::vector<double> adap(depth + 2, 0.0);
  for (int k = depth; k >= 0; --k) {
    double sum = 0.0;
    for (int i = 0; i <= depth - k; ++i) {
      sum += std::pow(1 - eps, i) * eps * (std::pow(1 - eps, k) + adap[k + i + 1]);
    }
    adap[k] = sum;
  }
  return adap[0];
}

inline double column_alg(double eps, int depth) {
  std::vector<double> alg(depth + 2, 0.0);
  for (int k = depth; k >= 0; --k) {
    double best = -1.0;
    for (int i = 0; i <= depth - k; ++i) {
      best = std::max(best, std::pow(1 - eps, k) * (1 - std::pow(1 - eps, i + 1)) + alg[k + i + 1]);
    }
    alg[k] = best;
  }
  return alg[0];
}

inline UniversePtr bernoulli_universe(const std::vector<std::string>& names) {
  Universe::Builder b;
  for (const auto& n : names) b.add_bernoulli(n);
  return b.build();
}

inline TypeDistribution bernoulli_dist(const Universe& u, const std::vector<Number>& active) {
  std::vector<Number> probs;
  for (const auto& p : active) {
    probs.push_back(p);
    probs.push_back(p.is_exact() ? Number(Rational(1) - p.exact()) : Number(1.0 - p.value()));
  }
  return TypeDistribution(u, std::move(probs));
}

inline TypeId active(const Universe& u, const std::string& element) {
  return u.first_type(*u.find_element(element));
}

}  // namespace testing
