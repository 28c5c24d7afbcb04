#pragma once

// Brute-force structural verifiers and the constructive extension witness
// for k-extendible systems.

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "smp/families.hpp"
#include "smp/instances.hpp"
#include "smp/strategy.hpp"
#include "smp/valuation.hpp"

namespace smp {

struct CheckResult {
  bool ok = true;
  std::string message;
  std::vector<TypeSet> witness;       // sets involved in the first failure
  std::optional<TypeId> element;      // extension element, when relevant
  std::vector<ElementId> sequence;    // sequence witness for constraints
  std::map<std::string, std::uint64_t> counts;
};

inline constexpr std::size_t kVerifyGroundCap = 12;
inline constexpr std::size_t kExtendibleGroundCap = 10;

// f(A u B) + f(A n B) <= f(A) + f(B) + tol for all A, B over `ground`. Witness {A, B}.
CheckResult check_submodular(const ValuationFunction& f, const TypeSet& ground, double tol = 1e-9);
// f(A) <= f(A + x) + tol. Witness {A, A + x}.
CheckResult check_monotone(const ValuationFunction& f, const TypeSet& ground, double tol = 1e-9);
// Every subset of an independent subset of `ground` is independent. Witness {A, B} with B a dependent subset.
CheckResult check_downward_closed(const IndependenceOracle& family, const TypeSet& ground);
// Every feasible repeat-free sequence up to max_len has a feasible prefix. Witness: the sequence.
CheckResult check_prefix_closed(const ConstraintOracle& constraint, const Universe& universe, std::size_t max_len,
                                std::uint64_t cap = 1'000'000);
// For all A subset of B in F and e with A + e in F, some Z within B \ A with
// |Z| <= k has (B \ Z) + e in F. Witness {A, B} and element e.
CheckResult check_k_extendible(const IndependenceOracle& family, const TypeSet& ground, std::size_t k);

struct ExtensionWitness {
  bool found = false;
  TypeSet z;
  std::string message;
};

// Builds Z with Z within B \ A, |Z| <= k |E| and (B \ Z) u E in F by extending
// one element of E at a time. Throws ValidationError when A is not a subset of
// B, B is dependent or A u E is dependent.
ExtensionWitness find_extension_witness(const IndependenceOracle& family, std::size_t k, const TypeSet& a,
                                        const TypeSet& b, const TypeSet& e);

struct EncodingCheckOptions {
  std::uint64_t sample_sets = 10000;
  std::uint64_t sample_pairs = 100000;  // used when exhaustive pairs are too many
  std::uint64_t exhaustive_pair_limit = 200'000;
  std::uint64_t seed = 1;
};

// Intersection of `matroids` versus the chain sets of `tree`; edge_types[v-1]
// is the type standing for the edge above vertex v.
CheckResult check_encoding(const std::vector<Family>& matroids, const PerfectTree& tree,
                           std::span<const TypeId> edge_types, const EncodingCheckOptions& options = {});
CheckResult check_encoding(const PrimeEncoding& encoding, const EncodingCheckOptions& options = {});

}  // namespace smp
