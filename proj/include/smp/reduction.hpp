#pragma once

// Weighted to unweighted reduction for rank functions of k-extendible
// systems: weight classes, buckets, representatives and the combiner.

#include <map>
#include <vector>

#include "smp/evaluate.hpp"
#include "smp/families.hpp"
#include "smp/valuation.hpp"
#include "smp/weights.hpp"

namespace smp {

// The class j with 2^(j-1) < w <= 2^j. Requires w > 0.
int weight_class(double w);

struct ClassDecomposition {
  Family family;
  std::map<int, TypeSet> members;    // class j -> its types
  std::map<int, Valuation> classes;  // class j -> unweighted rank over its types
  std::map<TypeId, int> class_of;    // positive-weight types only
  int a = 0;                         // smallest class
  int b = 0;                         // largest class
};

// Throws ValidationError when every weight is zero.
ClassDecomposition class_decompose(const WeightMap& weights, const Family& family);

// ceil(2 log2 k); throws ValidationError for k < 2.
int bucket_width(int k);

struct Bucket {
  int index;  // 1-based, bucket 1 holds the heaviest classes
  int lo;
  int hi;  // classes lo..hi inclusive
};

// Half-open buckets {b-iW+1, ..., b-(i-1)W} until class a is covered.
std::vector<Bucket> bucketize(int b, int a, int k);

enum class Parity { odd, even };
const char* to_string(Parity p);

struct Representatives {
  Parity parity = Parity::odd;
  std::map<int, int> argmax;   // bucket index -> j(i), for non-empty buckets
  std::vector<int> selected;   // bucket indices of the chosen parity, heaviest first
  double selected_sum = 0.0;   // sum over selected buckets of values[j(i)]
  double total = 0.0;          // sum over all classes of values[j]
};

// values[j] = 2^j * alg_j. Buckets containing no class are skipped.
Representatives select_representatives(const std::map<int, double>& values, const std::vector<Bucket>& buckets);

inline constexpr std::size_t kCombineCap = 20;

// For each selected bucket (heaviest first) adds a largest subset of its
// representative class's types in `path_types` that keeps the running
// selection independent.
TypeSet greedy_optimal_combine(const TypeSet& path_types, const ClassDecomposition& decomposition,
                               const Representatives& representatives, const Family& family);

struct CombinedResult {
  EvalReport report;  // expected true weight of the combined selection
  ClassDecomposition decomposition;
  std::vector<Bucket> buckets;
  Representatives representatives;
  std::map<int, double> class_alg;   // alg_exact(tree, f_j)
  std::map<int, double> class_adap;  // adap_exact(tree, f_j)
  double claim_rhs = 0.0;            // (1/4) * selected sum
};

CombinedResult combined_value(const DecisionTree& tree, const WeightMap& weights, const Family& family, int k,
                              const TypeDistribution& dist, const ExactOptions& options = {});

}  // namespace smp
