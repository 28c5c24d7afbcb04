#include "smp/evaluate.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <string>

namespace smp {

const char* to_string(EvalMode mode) {
  switch (mode) {
    case EvalMode::exact: return "exact";
    case EvalMode::monte_carlo: return "monte_carlo";
  }
  return "unknown";
}

namespace {

void require_rational_inputs(const TypeDistribution& dist, bool valuation_exact, const char* what) {
  if (!dist.is_exact()) {
    throw ValidationError(std::string(what) + ": rational mode needs every probability given exactly");
  }
  if (!valuation_exact) throw ValidationError(std::string(what) + ": rational mode needs an exact valuation");
}

template <class Scalar>
void finish(EvalReport& report, const Scalar& value) {
  if constexpr (std::is_same_v<Scalar, double>) {
    report.value = value;
  } else {
    report.value = to_double(value);
    report.exact_value = value;
  }
}

std::vector<ElementId> elements_of(const ProbePath& path) {
  std::vector<ElementId> out;
  out.reserve(path.size());
  for (const auto& o : path) out.push_back(o.element);
  return out;
}

TypeSet types_of(const ProbePath& path) {
  std::vector<TypeId> out;
  out.reserve(path.size());
  for (const auto& o : path) out.push_back(o.type);
  return TypeSet(std::move(out));
}

void check_path_cap(const Universe& universe, std::span<const ElementId> elements, std::uint64_t cap) {
  if (assignment_count(universe, elements) > cap) {
    throw ExactInfeasibleError("path over " + std::to_string(elements.size()) + " elements has more than " +
                               std::to_string(cap) + " type assignments");
  }
}

template <class Scalar>
struct Decomposition {
  const DecisionTree& tree;
  const TypeDistribution& dist;
  bool trace;
  std::vector<TraceEntry>& entries;

  Scalar visit(DecisionTree::NodeId n, const Valuation& g) {
    if (tree.is_leaf(n)) return Scalar(0);
    const ElementId e = tree.element(n);
    Scalar total(0);
    const auto kids = tree.children(n);
    for (std::size_t i = 0; i < kids.size(); ++i) {
      const TypeId t = tree.universe().type_at(e, i);
      const Scalar p = dist.template p<Scalar>(t);
      if (p == Scalar(0)) continue;
      const TypeSet single{t};
      const Scalar gain = g->template value<Scalar>(single);
      total += p * (gain + visit(kids[i], contract(g, single)));
    }
    if (trace) {
      if constexpr (std::is_same_v<Scalar, double>) {
        entries.push_back(TraceEntry{n, total});
      } else {
        entries.push_back(TraceEntry{n, to_double(total)});
      }
    }
    return total;
  }
};

template <class Scalar>
EvalReport adap_impl(const DecisionTree& tree, const Valuation& f, const TypeDistribution& dist,
                     const ExactOptions& options) {
  EvalReport report;
  report.quantity = "adap";
  Decomposition<Scalar> d{tree, dist, options.trace, report.trace};
  finish(report, d.visit(tree.root(), f));
  return report;
}

template <class Scalar>
EvalReport adap_paths_impl(const DecisionTree& tree, const Valuation& f, const TypeDistribution& dist) {
  EvalReport report;
  report.quantity = "adap";
  Scalar total(0);
  for_each_leaf_path<Scalar>(tree, dist, [&](const ProbePath& path, const Scalar& prob) {
    if (prob == Scalar(0) || path.empty()) return;
    total += prob * f->template value<Scalar>(types_of(path));
  });
  finish(report, total);
  return report;
}

template <class Scalar>
Scalar expected_value_impl(const Universe& universe, const TypeDistribution& dist, const ValuationFunction& f,
                           std::span<const ElementId> elements, std::uint64_t cap) {
  Scalar total(0);
  std::vector<TypeId> scratch;
  for_each_assignment<Scalar>(
      universe, dist, elements,
      [&](std::span<const TypeId> types, const Scalar& prob) {
        if (prob == Scalar(0)) return;
        scratch.assign(types.begin(), types.end());
        total += prob * f.template value<Scalar>(TypeSet(scratch));
      },
      cap);
  return total;
}

template <class Scalar>
EvalReport alg_impl(const DecisionTree& tree, const Valuation& f, const TypeDistribution& dist,
                    const ExactOptions& options) {
  EvalReport report;
  report.quantity = "alg";
  std::map<std::vector<ElementId>, Scalar> memo;
  Scalar total(0);
  for_each_leaf_path<Scalar>(tree, dist, [&](const ProbePath& path, const Scalar& prob) {
    if (prob == Scalar(0) || path.empty()) return;
    auto key = elements_of(path);
    std::sort(key.begin(), key.end());
    auto it = memo.find(key);
    if (it == memo.end()) {
      check_path_cap(tree.universe(), key, options.cap);
      it = memo.emplace(key, expected_value_impl<Scalar>(tree.universe(), dist, *f, key, options.cap)).first;
    }
    total += prob * it->second;
  });
  finish(report, total);
  report.extras["distinct_paths"] = static_cast<double>(memo.size());
  return report;
}

template <class Scalar>
EvalReport greedy_impl(const DecisionTree& tree, const Family& family, const TypeDistribution& dist,
                       const ExactOptions& options) {
  EvalReport report;
  report.quantity = "greedy";
  Scalar total(0);
  Scalar online(0);
  for_each_leaf_path<Scalar>(tree, dist, [&](const ProbePath& path, const Scalar& prob) {
    if (prob == Scalar(0) || path.empty()) return;
    const auto elements = elements_of(path);
    check_path_cap(tree.universe(), elements, options.cap);
    for_each_assignment<Scalar>(
        tree.universe(), dist, elements,
        [&](std::span<const TypeId> fresh, const Scalar& q) {
          if (q == Scalar(0)) return;
          ContractionState state(family);
          std::size_t kept_true = 0;
          for (std::size_t i = 0; i < path.size(); ++i) {
            // True type first, then the virtual one; a repeat is already a loop.
            if (!state.is_loop(fresh[i])) {
              state = state.contract(fresh[i]);
              ++kept_true;
            }
            if (!state.is_loop(path[i].type)) state = state.contract(path[i].type);
          }
          const Scalar w = prob * q;
          total += w * Scalar(static_cast<long>(state.contracted().size()));
          online += w * Scalar(static_cast<long>(kept_true));
        },
        options.cap);
  });
  finish(report, total);
  if constexpr (std::is_same_v<Scalar, double>) {
    report.extras["online_selector"] = online;
  } else {
    report.extras["online_selector"] = to_double(online);
  }
  return report;
}

}  // namespace

EvalReport adap_exact(const DecisionTree& tree, const Valuation& f, const TypeDistribution& dist,
                      const ExactOptions& options) {
  if (options.arithmetic == Arithmetic::rational) {
    require_rational_inputs(dist, f->supports_exact(), "adap_exact");
    return adap_impl<Rational>(tree, f, dist, options);
  }
  return adap_impl<double>(tree, f, dist, options);
}

EvalReport adap_exact_by_paths(const DecisionTree& tree, const Valuation& f, const TypeDistribution& dist,
                               const ExactOptions& options) {
  if (options.arithmetic == Arithmetic::rational) {
    require_rational_inputs(dist, f->supports_exact(), "adap_exact_by_paths");
    return adap_paths_impl<Rational>(tree, f, dist);
  }
  return adap_paths_impl<double>(tree, f, dist);
}

EvalReport alg_exact(const DecisionTree& tree, const Valuation& f, const TypeDistribution& dist,
                     const ExactOptions& options) {
  if (options.arithmetic == Arithmetic::rational) {
    require_rational_inputs(dist, f->supports_exact(), "alg_exact");
    return alg_impl<Rational>(tree, f, dist, options);
  }
  return alg_impl<double>(tree, f, dist, options);
}

EvalReport greedy_interleaved_exact(const DecisionTree& tree, const Family& family, const TypeDistribution& dist,
                                    const ExactOptions& options) {
  if (!family) throw ValidationError("greedy_interleaved_exact: null family");
  if (options.arithmetic == Arithmetic::rational) {
    require_rational_inputs(dist, true, "greedy_interleaved_exact");
    return greedy_impl<Rational>(tree, family, dist, options);
  }
  return greedy_impl<double>(tree, family, dist, options);
}

double expected_set_value(const Universe& universe, const TypeDistribution& dist, const ValuationFunction& f,
                          std::span<const ElementId> elements, std::uint64_t cap) {
  return expected_value_impl<double>(universe, dist, f, elements, cap);
}

Rational expected_set_value_exact(const Universe& universe, const TypeDistribution& dist, const ValuationFunction& f,
                                  std::span<const ElementId> elements, std::uint64_t cap) {
  require_rational_inputs(dist, f.supports_exact(), "expected_set_value_exact");
  return expected_value_impl<Rational>(universe, dist, f, elements, cap);
}

namespace {

template <class Scalar>
struct SequenceSearch {
  const Universe& universe;
  const TypeDistribution& dist;
  const ValuationFunction& f;
  const ConstraintOracle& constraint;
  std::size_t max_len;
  std::uint64_t assignment_cap;
  std::uint64_t sequence_cap;

  std::map<std::uint64_t, Scalar> memo;
  std::vector<ElementId> current;
  std::uint64_t mask = 0;
  std::uint64_t examined = 0;
  std::vector<ElementId> best;
  Scalar best_value{0};
  bool have_best = false;

  static bool better(const Scalar& v, const Scalar& incumbent) {
    if constexpr (std::is_same_v<Scalar, double>) {
      return v > incumbent + 1e-12 * std::max(1.0, std::abs(incumbent));
    } else {
      return v > incumbent;
    }
  }

  void consider() {
    if (++examined > sequence_cap) {
      throw CapExceededError("more than " + std::to_string(sequence_cap) +
                             " feasible sequences; use the instance's closed-form oracle instead");
    }
    auto it = memo.find(mask);
    if (it == memo.end()) {
      std::vector<ElementId> sorted = current;
      std::sort(sorted.begin(), sorted.end());
      it = memo.emplace(mask, expected_value_impl<Scalar>(universe, dist, f, sorted, assignment_cap)).first;
    }
    if (!have_best || better(it->second, best_value)) {
      have_best = true;
      best_value = it->second;
      best = current;
    }
  }

  void run() {
    consider();
    if (current.size() == max_len) return;
    for (std::uint32_t x = 0; x < universe.element_count(); ++x) {
      const ElementId e{x};
      if (mask & (std::uint64_t{1} << x)) continue;
      if (!constraint.may_extend(current, e)) continue;
      current.push_back(e);
      mask |= std::uint64_t{1} << x;
      run();
      mask &= ~(std::uint64_t{1} << x);
      current.pop_back();
    }
  }
};

template <class Scalar>
BestNonadaptive best_na_impl(const Universe& universe, const TypeDistribution& dist, const ValuationFunction& f,
                             const ConstraintOracle& constraint, std::size_t max_len, const ExactOptions& options,
                             std::uint64_t sequence_cap) {
  SequenceSearch<Scalar> search{universe, dist, f, constraint, max_len, options.cap, sequence_cap, {}, {}, 0, 0, {},
                                Scalar(0), false};
  search.run();
  BestNonadaptive out;
  out.sequence = search.best;
  out.sequences_examined = search.examined;
  if constexpr (std::is_same_v<Scalar, double>) {
    out.value = search.best_value;
  } else {
    out.value = to_double(search.best_value);
    out.exact_value = search.best_value;
  }
  return out;
}

}  // namespace

BestNonadaptive best_nonadaptive_exact(const Universe& universe, const TypeDistribution& dist, const Valuation& f,
                                       const ConstraintOracle& constraint, std::size_t max_len,
                                       const ExactOptions& options, std::uint64_t sequence_cap) {
  if (universe.element_count() > kMaxExactElements) {
    throw ExactInfeasibleError("best non-adaptive search supports at most " + std::to_string(kMaxExactElements) +
                               " elements");
  }
  if (options.arithmetic == Arithmetic::rational) {
    require_rational_inputs(dist, f->supports_exact(), "best_nonadaptive_exact");
    return best_na_impl<Rational>(universe, dist, *f, constraint, max_len, options, sequence_cap);
  }
  return best_na_impl<double>(universe, dist, *f, constraint, max_len, options, sequence_cap);
}

}  // namespace smp
