#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"

#include "smp/error.hpp"
#include "smp/experiments.hpp"
#include "smp/serialize.hpp"

namespace {

struct Common {
  std::string mode = "exact";
  std::uint64_t trials = 10000;
  std::uint64_t seed = 0;
  unsigned threads = 1;
  double tolerance = 1e-9;
  bool rational = false;
  std::string out;
};

void add_common(CLI::App* cmd, Common& c) {
  cmd->add_option("--mode", c.mode, "exact or mc")->check(CLI::IsMember({"exact", "mc"}));
  cmd->add_option("--trials", c.trials, "Monte Carlo trials")->check(CLI::PositiveNumber);
  cmd->add_option("--seed", c.seed, "random seed");
  cmd->add_option("--threads", c.threads, "Monte Carlo worker threads")->check(CLI::PositiveNumber);
  cmd->add_option("--tolerance", c.tolerance, "slack for checked bounds");
  cmd->add_flag("--rational", c.rational, "exact rational arithmetic where possible");
  cmd->add_option("--out", c.out, "write <out>.json and <out>.csv");
}

smp::ExperimentOptions options_of(const Common& c) {
  smp::ExperimentOptions o;
  o.mode = c.mode == "mc" ? smp::EvalMode::monte_carlo : smp::EvalMode::exact;
  o.trials = c.trials;
  o.seed = c.seed;
  o.threads = c.threads;
  o.tolerance = c.tolerance;
  o.rational = c.rational;
  return o;
}

int emit(const smp::Report& report, const Common& c) {
  if (!c.out.empty()) smp::write_report(report, c.out);
  std::cout << smp::serialize_report(report);
  if (report.all_pass()) return 0;
  for (const auto& f : report.failures()) std::cerr << "bound violated: " << f << "\n";
  return 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Stochastic multi-value probing laboratory"};
  app.require_subcommand(1);
  Common c;

  std::string eps = "1/100";
  std::optional<double> min_ratio;
  auto* gap_sub = app.add_subcommand("gap-submodular", "column instance: adap(0) versus alg_opt(0)");
  gap_sub->add_option("--eps", eps, "eps in (0, 1/2], decimal or p/q");
  gap_sub->add_option("--min-ratio", min_ratio, "required ratio (default 2 - 10 eps)");
  add_common(gap_sub, c);

  std::uint32_t k = 3;
  std::optional<std::uint32_t> w;
  std::optional<std::string> p;
  auto* gap_kext = app.add_subcommand("gap-kext", "tree instance: level strategy versus 1 + kp");
  gap_kext->add_option("--k", k, "tree depth")->check(CLI::PositiveNumber);
  gap_kext->add_option("--w", w, "arity (default k^4)");
  gap_kext->add_option("--p", p, "activation probability (default 1/k^3)");
  gap_kext->add_option("--min-ratio", min_ratio, "required ratio (default k - 1/2)");
  add_common(gap_kext, c);

  std::uint64_t samples = 10000;
  auto* gap_enc = app.add_subcommand("gap-matroid-encoding", "k^2 partition matroids encoding the k-ary tree");
  gap_enc->add_option("--k", k, "prime k")->check(CLI::PositiveNumber);
  gap_enc->add_option("--samples", samples, "sampled sets");
  add_common(gap_enc, c);

  std::string quantity;
  std::string file;
  auto* eval = app.add_subcommand("eval", "evaluate an instance file");
  eval->add_option("quantity", quantity, "adap, alg, greedy or best-na")->required();
  eval->add_option("instance", file, "instance file")->required()->check(CLI::ExistingFile);
  add_common(eval, c);

  auto* mc = app.add_subcommand("mc-estimate", "Monte Carlo estimate checked against the exact value");
  mc->add_option("quantity", quantity, "adap, alg or greedy")->required();
  mc->add_option("instance", file, "instance file")->required()->check(CLI::ExistingFile);
  add_common(mc, c);

  int reduce_k = 0;
  auto* reduce = app.add_subcommand("reduce-weighted", "weighted to unweighted reduction on one instance");
  reduce->add_option("instance", file, "instance file (default: random weighted instance from --seed)")
      ->check(CLI::ExistingFile);
  reduce->add_option("--k", reduce_k, "extendibility parameter");
  add_common(reduce, c);

  std::uint64_t cases = 1000;
  auto* suite = app.add_subcommand("verify-suite", "seeded property suites");
  suite->add_option("--cases", cases, "cases per suite")->check(CLI::PositiveNumber);
  add_common(suite, c);

  std::string construction;
  std::string instance_out;
  std::uint32_t max_weight = 1;
  auto* gen = app.add_subcommand("generate", "write an instance file");
  gen->add_option("construction", construction, "submodular-lb, tree-lb, prime-encoding, random, random-kext")
      ->required()
      ->check(CLI::IsMember({"submodular-lb", "tree-lb", "prime-encoding", "random", "random-kext"}));
  gen->add_option("--eps", eps, "submodular-lb: eps");
  gen->add_option("--k", k, "tree depth / prime / extendibility");
  gen->add_option("--w", w, "tree-lb: arity");
  gen->add_option("--p", p, "tree-lb: activation probability");
  gen->add_option("--seed", c.seed, "random seed");
  gen->add_option("--max-weight", max_weight, "random-kext: weights drawn from 1..max");
  gen->add_option("--out", instance_out, "instance path")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    const smp::ExperimentOptions opts = options_of(c);
    if (gap_sub->parsed()) return emit(smp::run_gap_submodular(smp::Number::parse(eps), opts, min_ratio), c);
    if (gap_kext->parsed()) {
      std::optional<smp::Number> pn;
      if (p) pn = smp::Number::parse(*p);
      return emit(smp::run_gap_kext(k, w, pn, opts, min_ratio), c);
    }
    if (gap_enc->parsed()) {
      smp::EncodingCheckOptions eo;
      eo.sample_sets = samples;
      eo.seed = c.seed == 0 ? 1 : c.seed;
      return emit(smp::run_gap_matroid_encoding(k, opts, eo), c);
    }
    if (eval->parsed()) return emit(smp::run_eval(smp::load_instance(file), smp::parse_quantity(quantity), opts), c);
    if (mc->parsed()) {
      smp::ExperimentOptions mo = opts;
      mo.mode = smp::EvalMode::monte_carlo;
      return emit(smp::run_mc_estimate(smp::load_instance(file), smp::parse_quantity(quantity), mo), c);
    }
    if (reduce->parsed()) {
      const smp::InstanceBundle b = file.empty()
                                        ? smp::random_kext_instance(reduce_k > 0 ? reduce_k : 2, c.seed, 1024)
                                        : smp::load_instance(file);
      return emit(smp::run_reduce_weighted(b, reduce_k, opts), c);
    }
    if (suite->parsed()) return emit(smp::run_verify_suite(c.seed, cases, c.tolerance), c);
    if (gen->parsed()) {
      smp::InstanceBundle b;
      if (construction == "submodular-lb") {
        b = smp::gen_submodular_lb(smp::Number::parse(eps));
      } else if (construction == "tree-lb") {
        const std::uint64_t k64 = k;
        b = smp::gen_tree_lb(k, w.value_or(static_cast<std::uint32_t>(k64 * k64 * k64 * k64)),
                             p ? smp::Number::parse(*p) : smp::Number(smp::Rational(1, k64 * k64 * k64)));
      } else if (construction == "prime-encoding") {
        b = smp::gen_prime_matroid_encoding(k).bundle;
      } else if (construction == "random") {
        b = smp::gen_random_instance(smp::RandomInstanceParams{}, c.seed);
      } else {
        b = smp::random_kext_instance(k, c.seed, max_weight);
      }
      smp::save_instance(b, instance_out);
      return 0;
    }
  } catch (const smp::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
