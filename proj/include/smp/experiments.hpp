#pragma once

// Experiment drivers behind the command-line tool. Each returns a report
// whose metrics carry the checked bound and a verdict.

#include <cstdint>
#include <optional>
#include <string>

#include "smp/evaluate.hpp"
#include "smp/instances.hpp"
#include "smp/report.hpp"
#include "smp/verify.hpp"

namespace smp {

struct ExperimentOptions {
  EvalMode mode = EvalMode::exact;
  bool rational = false;  // exact rational arithmetic where the instance allows it
  std::uint64_t trials = 10000;
  std::uint64_t seed = 0;
  unsigned threads = 1;
  double tolerance = 1e-9;
};

enum class Quantity { adap, alg, greedy, best_na };

const char* to_string(Quantity q);
// Accepts adap, alg, greedy, best-na.
Quantity parse_quantity(const std::string& text);

// Default threshold 2 - 10 eps.
Report run_gap_submodular(const Number& eps, const ExperimentOptions& options,
                          std::optional<double> min_ratio = std::nullopt);

// Defaults: w = k^4, p = 1/k^3, threshold k - 1/2.
Report run_gap_kext(std::uint32_t k, std::optional<std::uint32_t> w, std::optional<Number> p,
                    const ExperimentOptions& options, std::optional<double> min_ratio = std::nullopt);

Report run_gap_matroid_encoding(std::uint32_t k, const ExperimentOptions& options,
                                const EncodingCheckOptions& encoding = {});

Report run_eval(const InstanceBundle& bundle, Quantity quantity, const ExperimentOptions& options);

// Monte Carlo estimate checked against the exact value when one is computable.
Report run_mc_estimate(const InstanceBundle& bundle, Quantity quantity, const ExperimentOptions& options);

// k <= 0 reads k from the bundle parameters.
Report run_reduce_weighted(const InstanceBundle& bundle, int k, const ExperimentOptions& options);

// Random instances for the property suites.
InstanceBundle random_submodular_instance(std::uint64_t seed);
InstanceBundle random_kext_instance(std::uint32_t k, std::uint64_t seed, std::uint32_t max_weight = 1);

struct ExtensionTuple {
  Family family;
  std::size_t k = 0;
  TypeSet a;
  TypeSet b;
  TypeSet e;
};

// A valid (F, A, B, E) over a ground of at most 10 types, F a matching or an
// intersection of up to three partition matroids.
ExtensionTuple random_extension_tuple(std::uint64_t seed);

// Property suites. Each metric counts passing cases and fails on any violation.
Report run_submodular_gap_suite(std::uint64_t seed, std::uint64_t cases, double tolerance = 1e-9);
Report run_decomposition_suite(std::uint64_t seed, std::uint64_t cases, bool rational = true);
Report run_kext_chain_suite(std::uint64_t seed, std::uint64_t cases, double tolerance = 1e-9);
Report run_extension_witness_suite(std::uint64_t seed, std::uint64_t cases);
Report run_weighted_reduction_suite(std::uint64_t seed, std::uint64_t cases, double tolerance = 1e-9);
Report run_structure_suite(std::uint64_t seed, std::uint64_t cases);

// All of the above, `cases` each (weighted reduction gets cases / 5).
Report run_verify_suite(std::uint64_t seed, std::uint64_t cases, double tolerance = 1e-9);

}  // namespace smp
