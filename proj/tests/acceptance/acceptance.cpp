// One PASS/FAIL line per acceptance criterion; exit status 1 if any fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "smp/experiments.hpp"
#include "smp/serialize.hpp"

using namespace smp;

namespace {

using Clock = std::chrono::steady_clock;

double since(Clock::time_point t) { return std::chrono::duration<double>(Clock::now() - t).count(); }

struct Outcome {
  bool pass = true;
  std::string detail;
};

const Metric* find_metric(const Report& r, const std::string& name) {
  for (const auto& m : r.metrics) {
    if (m.name == name) return &m;
  }
  return nullptr;
}

std::uint64_t suite_count(const Report& r, const std::string& suite, const char* key) {
  return r.details.at("suites").at(suite).at(key).get<std::uint64_t>();
}

std::string num(double v, int precision = 6) {
  std::ostringstream os;
  os.precision(precision);
  os << v;
  return os.str();
}

Outcome criterion1() {
  Outcome o;
  const std::vector<std::pair<const char*, double>> cases{{"0.05", 1.75}, {"0.02", 1.88}, {"0.01", 1.9}};
  for (const auto& [eps, threshold] : cases) {
    const auto t = Clock::now();
    const Report r = run_gap_submodular(Number::parse(eps), ExperimentOptions{}, threshold);
    const double secs = since(t);
    const Metric* ratio = find_metric(r, "ratio");
    const Metric* below = find_metric(r, "alg_opt(0) < 1");
    const bool ok = r.all_pass() && ratio && *ratio->pass && below && *below->pass && secs < 1.0;
    o.pass = o.pass && ok;
    o.detail += std::string("eps=") + eps + " ratio=" + num(ratio ? ratio->value : 0) + " (>= " + num(threshold) +
                ") alg<1=" + (below && *below->pass ? "yes" : "no") + " " + num(secs, 3) + "s; ";
  }
  return o;
}

Outcome criterion2() {
  const auto t = Clock::now();
  const Report r = run_submodular_gap_suite(20240101, 1000);
  const double secs = since(t);
  const auto checked = suite_count(r, "submodular_gap", "checked");
  const auto passed = suite_count(r, "submodular_gap", "passed");
  return {r.all_pass() && checked >= 1000 && passed == checked && secs < 60.0,
          std::to_string(passed) + "/" + std::to_string(checked) + " instances, " + num(secs, 3) + "s"};
}

Outcome criterion3() {
  Outcome o;
  const Report exact = run_decomposition_suite(31, 500, true);
  const Report floating = run_decomposition_suite(32, 500, false);
  std::uint64_t trees = 2 * 500;
  bool ok = exact.all_pass() && floating.all_pass();
  // Structured trees as well.
  ExactOptions rational;
  rational.arithmetic = Arithmetic::rational;
  std::vector<InstanceBundle> bundles;
  bundles.push_back(gen_submodular_lb(Number::parse("1/2")));
  bundles.push_back(gen_submodular_lb(Number::parse("3/10")));
  bundles.push_back(gen_tree_lb(2, 2, Number::parse("1/8")));
  bundles.push_back(gen_prime_matroid_encoding(2).bundle);
  bundles.push_back(gen_prime_matroid_encoding(3).bundle);
  for (const auto& b : bundles) {
    if (!b.tree) continue;
    const EvalReport a = adap_exact(*b.tree, b.valuation, b.dist, rational);
    const EvalReport c = adap_exact_by_paths(*b.tree, b.valuation, b.dist, rational);
    ok = ok && a.exact_value && c.exact_value && *a.exact_value == *c.exact_value;
    ++trees;
  }
  o.pass = ok;
  o.detail = std::to_string(trees) + " trees (500 rational, 500 floating within 1e-9, 5 constructions exact)";
  return o;
}

Outcome criterion4() {
  const Report r = run_kext_chain_suite(4404, 501);
  const auto checked = suite_count(r, "kext_adap_vs_greedy", "checked");
  const auto up = suite_count(r, "kext_adap_vs_greedy", "passed");
  const auto low = suite_count(r, "kext_greedy_vs_alg", "passed");
  return {r.all_pass() && checked >= 500 && up == checked && low == checked,
          "k in {1,2,3}: adap <= k greedy " + std::to_string(up) + "/" + std::to_string(checked) +
              ", greedy <= 2 alg " + std::to_string(low) + "/" + std::to_string(checked)};
}

Outcome criterion5() {
  const Report r3 = run_gap_kext(3, std::nullopt, std::nullopt, ExperimentOptions{});
  const Metric* formula = find_metric(r3, "adaptive formula k(1-(1-p)^w)");
  const Metric* bound = find_metric(r3, "non-adaptive bound 1+kp");
  const Metric* ratio = find_metric(r3, "ratio");
  const Report r2 = run_gap_kext(2, 2u, std::nullopt, ExperimentOptions{}, 0.0);
  const Metric* na = find_metric(r2, "best_nonadaptive_exact");
  const Metric* bound2 = find_metric(r2, "non-adaptive bound 1+kp");
  const bool ok = formula && formula->value >= 2.85 && bound && bound->exact == std::string("10/9") && ratio &&
                  ratio->value >= 2.5 && *ratio->pass && na && bound2 && na->value <= bound2->value + 1e-9 &&
                  *na->pass;
  return {ok, "k=3: formula=" + num(formula ? formula->value : 0) + " bound=" + (bound ? *bound->exact : "?") +
                  " ratio=" + num(ratio ? ratio->value : 0) + "; k=2,w=2: best_na=" + num(na ? na->value : 0) +
                  " <= " + num(bound2 ? bound2->value : 0)};
}

Outcome criterion6() {
  Outcome o;
  for (std::uint32_t k : {2u, 3u}) {
    EncodingCheckOptions eo;
    eo.sample_sets = 10000;
    const Report r = run_gap_matroid_encoding(k, ExperimentOptions{}, eo);
    const Metric* enc = find_metric(r, "encoding");
    const std::uint64_t edges = k == 2 ? 6 : 39;
    const auto pairs = r.details.at("encoding_counts").at("pairs").get<std::uint64_t>();
    const auto sets = r.details.at("encoding_counts").at("sets").get<std::uint64_t>();
    const bool exhaustive_sets = k == 2 && sets == (1u << edges);
    const bool ok = enc && *enc->pass && pairs == edges * (edges - 1) / 2 && (sets >= 10000 || exhaustive_sets) &&
                    r.all_pass();
    o.pass = o.pass && ok;
    o.detail += "k=" + std::to_string(k) + " pairs=" + std::to_string(pairs) + " sets=" + std::to_string(sets) +
                (ok ? " ok; " : " FAILED; ");
  }
  for (std::uint32_t k : {3u, 5u}) {
    EncodingCheckOptions eo;
    eo.sample_sets = 10000;
    const Report r = run_gap_matroid_encoding(k, ExperimentOptions{}, eo);
    const Metric* formula = find_metric(r, "adaptive formula k(1-(1-1/k)^k)");
    const Metric* bound = find_metric(r, "non-adaptive bound 1+kp");
    const double floor_value = k * (1.0 - std::exp(-1.0));
    const bool ok = formula && bound && formula->value >= floor_value && bound->value == 2.0 && r.all_pass();
    o.pass = o.pass && ok;
    o.detail += "k=" + std::to_string(k) + " formula=" + num(formula ? formula->value : 0) + " >= " +
                num(floor_value) + " vs bound 2; ";
  }
  return o;
}

Outcome criterion7() {
  const Report r = run_extension_witness_suite(7007, 10000);
  const auto checked = suite_count(r, "extension_witness", "checked");
  const auto passed = suite_count(r, "extension_witness", "passed");
  return {r.all_pass() && checked >= 10000 && passed == checked,
          std::to_string(passed) + "/" + std::to_string(checked) + " tuples with |Z| <= k|E|"};
}

Outcome criterion8() {
  const Report r = run_weighted_reduction_suite(8008, 200);
  const auto checked = suite_count(r, "reduction_claim", "checked");
  const auto claim = suite_count(r, "reduction_claim", "passed");
  const auto theorem = suite_count(r, "reduction_theorem", "passed");
  return {r.all_pass() && checked >= 200 && claim == checked && theorem == checked,
          "k in {2,3}, weights 1..1024: claim " + std::to_string(claim) + "/" + std::to_string(checked) +
              ", adap/(32 k log2 k) " + std::to_string(theorem) + "/" + std::to_string(checked)};
}

Outcome criterion9() {
  std::uint64_t runs = 0;
  std::uint64_t within = 0;
  bool reproducible = true;
  // Twenty instances whose estimator is not constant; a seed-0 pilot picks them.
  std::vector<InstanceBundle> instances;
  for (std::uint64_t s = 900; instances.size() < 20; ++s) {
    InstanceBundle b = gen_random_instance(RandomInstanceParams{}, s);
    McOptions pilot;
    pilot.trials = 1000;
    const bool use_alg = instances.size() % 2 == 1;
    const EvalReport est = use_alg ? alg_mc(*b.tree, *b.universe, b.valuation, b.dist, pilot)
                                   : adap_mc(*b.tree, *b.universe, b.valuation, b.dist, pilot);
    if (est.std_error.value_or(0.0) > 0.0) instances.push_back(std::move(b));
  }
  for (std::uint64_t inst = 1; inst <= 20; ++inst) {
    const InstanceBundle& b = instances[inst - 1];
    const bool use_alg = inst % 2 == 0;
    const double exact = use_alg ? alg_exact(*b.tree, b.valuation, b.dist).value
                                 : adap_exact(*b.tree, b.valuation, b.dist).value;
    for (std::uint64_t seed = 1; seed <= 50; ++seed) {
      McOptions mo;
      mo.trials = 4000;
      mo.seed = seed;
      const EvalReport est = use_alg ? alg_mc(*b.tree, *b.universe, b.valuation, b.dist, mo)
                                     : adap_mc(*b.tree, *b.universe, b.valuation, b.dist, mo);
      ++runs;
      if (std::abs(est.value - exact) <= 3.0 * est.std_error.value_or(0.0)) ++within;
    }
    if (inst <= 5) {
      std::vector<std::string> outputs;
      for (unsigned threads : {1u, 2u, 8u}) {
        McOptions mo;
        mo.trials = 10000;
        mo.seed = 77;
        mo.threads = threads;
        const EvalReport est = adap_mc(*b.tree, *b.universe, b.valuation, b.dist, mo);
        char buf[128];
        std::snprintf(buf, sizeof buf, "%a %a", est.value, est.std_error.value_or(0.0));
        outputs.emplace_back(buf);
      }
      reproducible = reproducible && outputs[0] == outputs[1] && outputs[0] == outputs[2];
    }
  }
  const double rate = static_cast<double>(within) / runs;
  return {rate >= 0.99 && reproducible, std::to_string(within) + "/" + std::to_string(runs) +
                                            " runs within 3 stderr (" + num(100 * rate, 4) +
                                            "%); threads 1/2/8 identical: " + (reproducible ? "yes" : "no")};
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria{
      {"submodular lower bound", criterion1},   {"submodular gap suite", criterion2},
      {"decomposition identity", criterion3},   {"unweighted k-extendible chain", criterion4},
      {"k-extendible lower bound", criterion5}, {"matroid-intersection encoding", criterion6},
      {"extension witness", criterion7},        {"weighted reduction", criterion8},
      {"Monte Carlo soundness", criterion9}};
  int failures = 0;
  int index = 0;
  for (const auto& [name, fn] : criteria) {
    ++index;
    Outcome o;
    try {
      o = fn();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    if (!o.pass) ++failures;
    std::printf("criterion %d [%s]: %s - %s\n", index, name, o.pass ? "PASS" : "FAIL", o.detail.c_str());
    std::fflush(stdout);
  }
  return failures == 0 ? 0 : 1;
}
