#include "smp/experiments.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <numeric>
#include <random>
#include <sstream>

#include "smp/error.hpp"
#include "smp/reduction.hpp"
#include "smp/serialize.hpp"

namespace smp {

using nlohmann::json;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(12);
  os << v;
  return os.str();
}

constexpr std::size_t kExactStringLimit = 400;

std::optional<std::string> short_exact(const Rational& r) {
  std::string s = to_string(r);
  if (s.size() > kExactStringLimit) return std::nullopt;
  return s;
}

Metric value_metric(std::string name, double value, std::string mode = "exact") {
  Metric m;
  m.name = std::move(name);
  m.value = value;
  m.mode = std::move(mode);
  return m;
}

Metric check_metric(std::string name, double value, std::string bound, bool pass, std::string mode = "exact") {
  Metric m = value_metric(std::move(name), value, std::move(mode));
  m.bound = std::move(bound);
  m.pass = pass;
  return m;
}

Metric from_eval(const EvalReport& r, const std::string& name) {
  Metric m = value_metric(name, r.value, r.mode == EvalMode::exact ? "exact" : "mc");
  if (r.exact_value) m.exact = short_exact(*r.exact_value);
  m.seed = r.seed;
  m.trials = r.trials;
  m.std_error = r.std_error;
  return m;
}

ExactOptions exact_options(const ExperimentOptions& o, const InstanceBundle& b) {
  ExactOptions e;
  const bool exact_ok = b.dist.is_exact() && (!b.valuation || b.valuation->supports_exact());
  e.arithmetic = (o.rational && exact_ok) ? Arithmetic::rational : Arithmetic::floating;
  return e;
}

McOptions mc_options(const ExperimentOptions& o) {
  McOptions m;
  m.trials = o.trials;
  m.seed = o.seed;
  m.threads = o.threads;
  return m;
}

void require(bool cond, const std::string& what) {
  if (!cond) throw ValidationError(what);
}

// The explicit tree, materializing the rule when needed.
const DecisionTree& tree_of(const InstanceBundle& b, std::optional<DecisionTree>& storage) {
  if (b.tree) return *b.tree;
  require(b.rule != nullptr, "instance has no strategy");
  try {
    storage = materialize(*b.rule, b.universe, kReferenceTreeNodeCap);
  } catch (const CapExceededError& e) {
    throw ExactInfeasibleError(std::string("strategy tree too large to materialize (") + e.what() + ")");
  }
  return *storage;
}

EvalReport evaluate_exact(const InstanceBundle& b, Quantity q, const ExactOptions& eo) {
  std::optional<DecisionTree> storage;
  const DecisionTree& tree = tree_of(b, storage);
  switch (q) {
    case Quantity::adap:
      require(b.valuation != nullptr, "instance has no valuation");
      return adap_exact(tree, b.valuation, b.dist, eo);
    case Quantity::alg:
      require(b.valuation != nullptr, "instance has no valuation");
      return alg_exact(tree, b.valuation, b.dist, eo);
    case Quantity::greedy:
      require(b.family != nullptr, "greedy needs an independence family");
      return greedy_interleaved_exact(tree, b.family, b.dist, eo);
    case Quantity::best_na:
      break;
  }
  throw ValidationError("best-na is not a tree quantity");
}

EvalReport evaluate_mc(const InstanceBundle& b, Quantity q, const McOptions& mo) {
  const ProbeStrategy* s = b.strategy();
  require(s != nullptr, "instance has no strategy");
  switch (q) {
    case Quantity::adap:
      require(b.valuation != nullptr, "instance has no valuation");
      return adap_mc(*s, *b.universe, b.valuation, b.dist, mo);
    case Quantity::alg:
      require(b.valuation != nullptr, "instance has no valuation");
      return alg_mc(*s, *b.universe, b.valuation, b.dist, mo);
    case Quantity::greedy:
      require(b.family != nullptr, "greedy needs an independence family");
      return greedy_mc(*s, *b.universe, b.family, b.dist, mo);
    case Quantity::best_na:
      break;
  }
  throw ValidationError("best-na has no Monte Carlo estimator");
}

json sequence_json(const Universe& u, std::span<const ElementId> seq) {
  json out = json::array();
  for (ElementId e : seq) out.push_back(u.element_name(e));
  return out;
}

Rational rational_pow(const Rational& base, unsigned n) {
  using boost::multiprecision::cpp_int;
  const cpp_int num = boost::multiprecision::pow(cpp_int(boost::multiprecision::numerator(base)), n);
  const cpp_int den = boost::multiprecision::pow(cpp_int(boost::multiprecision::denominator(base)), n);
  return Rational(num, den);
}

struct Rng {
  std::mt19937_64 engine;
  std::uint64_t below(std::uint64_t n) { return std::uniform_int_distribution<std::uint64_t>(0, n - 1)(engine); }
  std::uint64_t between(std::uint64_t lo, std::uint64_t hi) { return lo + below(hi - lo + 1); }
  bool chance(double p) { return uniform01(engine) < p; }
};

std::uint64_t case_seed(std::uint64_t seed, std::uint64_t i) { return seed * 1'000'003ULL + i; }

/// Pass/fail tally for one property over many cases.
class Tally {
 public:
  Tally(std::string name, std::string bound) : name_(std::move(name)), bound_(std::move(bound)) {}

  void record(bool ok, std::uint64_t case_seed, const std::string& message = {}) {
    ++checked_;
    if (ok) {
      ++passed_;
    } else if (!first_failure_) {
      first_failure_ = json{{"seed", case_seed}, {"message", message}};
    }
  }

  void add_to(Report& r) const {
    Metric m = check_metric(name_ + ".pass_rate", checked_ ? static_cast<double>(passed_) / checked_ : 1.0,
                            bound_ + " on all " + std::to_string(checked_) + " cases", passed_ == checked_);
    r.add(std::move(m));
    json d{{"checked", checked_}, {"passed", passed_}, {"failed", checked_ - passed_}, {"bound", bound_}};
    if (first_failure_) d["first_failure"] = *first_failure_;
    r.details["suites"][name_] = std::move(d);
  }

 private:
  std::string name_;
  std::string bound_;
  std::uint64_t checked_ = 0;
  std::uint64_t passed_ = 0;
  std::optional<json> first_failure_;
};

void merge_into(Report& into, const Report& from) {
  for (const auto& m : from.metrics) into.add(m);
  if (from.details.contains("suites")) {
    for (const auto& [k, v] : from.details["suites"].items()) into.details["suites"][k] = v;
  }
  for (const auto& [k, v] : from.timings) into.timings[k] = v;
}

}  // namespace

const char* to_string(Quantity q) {
  switch (q) {
    case Quantity::adap: return "adap";
    case Quantity::alg: return "alg";
    case Quantity::greedy: return "greedy";
    case Quantity::best_na: return "best-na";
  }
  return "?";
}

Quantity parse_quantity(const std::string& text) {
  if (text == "adap") return Quantity::adap;
  if (text == "alg") return Quantity::alg;
  if (text == "greedy") return Quantity::greedy;
  if (text == "best-na" || text == "best_na") return Quantity::best_na;
  throw ValidationError("unknown quantity '" + text + "' (expected adap, alg, greedy or best-na)");
}

// ---- gap-submodular ----

Report run_gap_submodular(const Number& eps, const ExperimentOptions& options, std::optional<double> min_ratio) {
  const auto start = Clock::now();
  const double e = eps.value();
  require(e > 0.0 && e <= 0.5, "gap-submodular: eps must lie in (0, 1/2]");
  Report r;
  r.command = "gap-submodular";
  r.parameters["eps"] = eps.to_string();
  r.parameters["mode"] = options.mode == EvalMode::exact ? "exact" : "mc";
  const double threshold = min_ratio.value_or(2.0 - 10.0 * e);
  r.parameters["min_ratio"] = fmt(threshold);

  const int depth = submodular_lb_depth(eps);
  r.add(value_metric("depth", depth));

  double adap0 = 0.0;
  double alg0 = 0.0;
  std::optional<Rational> adap0_exact;
  std::optional<Rational> alg0_exact;
  constexpr int kRationalTableDepth = 48;
  if (eps.is_exact() && depth <= kRationalTableDepth) {
    adap0_exact = submodular_lb_adap_table<Rational>(eps.exact(), depth).front();
    alg0_exact = submodular_lb_alg_table<Rational>(eps.exact(), depth).front();
    adap0 = to_double(*adap0_exact);
    alg0 = to_double(*alg0_exact);
  } else {
    adap0 = submodular_lb_adap_table<double>(e, depth).front();
    alg0 = submodular_lb_alg_table<double>(e, depth).front();
  }
  Metric ma = value_metric("adap(0)", adap0);
  if (adap0_exact) ma.exact = short_exact(*adap0_exact);
  r.add(std::move(ma));
  Metric mg = value_metric("alg_opt(0)", alg0);
  if (alg0_exact) mg.exact = short_exact(*alg0_exact);
  r.add(std::move(mg));

  // The optimal chain telescopes to 1 - (1-eps)^(D+1).
  bool below_one = alg0 < 1.0;
  double closed = 1.0 - std::pow(1.0 - e, depth + 1);
  if (eps.is_exact()) {
    const Rational closed_exact = Rational(1) - rational_pow(Rational(1) - eps.exact(), depth + 1);
    below_one = closed_exact < 1;
    if (alg0_exact) below_one = below_one && *alg0_exact == closed_exact;
    closed = to_double(closed_exact);
  }
  r.add(check_metric("alg_opt(0) < 1", alg0, "alg_opt(0) < 1", below_one));
  r.add(check_metric("alg_opt(0) closed form", closed, "alg_opt(0) = 1 - (1-eps)^(D+1)",
                     std::abs(closed - alg0) <= 1e-12 + options.tolerance, "formula"));

  const double ratio = adap0 / alg0;
  r.add(check_metric("ratio", ratio, "adap(0)/alg_opt(0) >= " + fmt(threshold), ratio >= threshold - options.tolerance));
  r.add(value_metric("adap limit", submodular_lb_adap_limit(e), "formula"));

  if (options.mode == EvalMode::monte_carlo) {
    const InstanceBundle b = gen_submodular_lb(eps);
    const EvalReport est = adap_mc(*b.strategy(), *b.universe, b.valuation, b.dist, mc_options(options));
    Metric m = from_eval(est, "adap_mc(column rule)");
    const double dev = std::abs(est.value - adap0);
    m.bound = "|adap_mc - adap(0)| <= 3 stderr + tol";
    m.pass = dev <= 3.0 * est.std_error.value_or(0.0) + options.tolerance;
    r.add(std::move(m));
  }
  r.timings["total"] = seconds_since(start);
  return r;
}

// ---- gap-kext ----

Report run_gap_kext(std::uint32_t k, std::optional<std::uint32_t> w_opt, std::optional<Number> p_opt,
                    const ExperimentOptions& options, std::optional<double> min_ratio) {
  const auto start = Clock::now();
  require(k >= 1, "gap-kext: k must be positive");
  const std::uint64_t k64 = k;
  const std::uint32_t w = w_opt.value_or(static_cast<std::uint32_t>(k64 * k64 * k64 * k64));
  const Number p = p_opt.value_or(Number(Rational(1, static_cast<long long>(k64 * k64 * k64))));
  require(p.value() > 0.0 && p.value() <= 1.0, "gap-kext: p must lie in (0, 1]");
  require(w >= 1, "gap-kext: w must be positive");

  Report r;
  r.command = "gap-kext";
  r.parameters["k"] = std::to_string(k);
  r.parameters["w"] = std::to_string(w);
  r.parameters["p"] = p.to_string();
  r.parameters["mode"] = options.mode == EvalMode::exact ? "exact" : "mc";
  const double threshold = min_ratio.value_or(static_cast<double>(k) - 0.5);
  r.parameters["min_ratio"] = fmt(threshold);

  const double formula = tree_lb_adaptive_formula(k, w, p.value());
  const double bound = tree_lb_nonadaptive_bound(k, p.value());
  r.add(value_metric("adaptive formula k(1-(1-p)^w)", formula, "formula"));
  Metric mb = value_metric("non-adaptive bound 1+kp", bound, "formula");
  if (p.is_exact()) mb.exact = to_string(Rational(1) + Rational(k) * p.exact());
  r.add(std::move(mb));
  const double ratio = formula / bound;
  r.add(check_metric("ratio", ratio, "formula/(1+kp) >= " + fmt(threshold), ratio >= threshold - options.tolerance,
                     "formula"));

  // Exact cross-checks on instances small enough to enumerate.
  PerfectTree shape(k, w);
  if (shape.edge_count() <= 16) {
    const InstanceBundle b = gen_tree_lb(k, w, p);
    const ExactOptions eo = exact_options(options, b);
    if (b.tree) {
      const EvalReport adap = adap_exact(*b.tree, b.valuation, b.dist, eo);
      Metric m = from_eval(adap, "adap_exact(level tree)");
      m.bound = "adap_exact = k(1-(1-p)^w)";
      m.pass = std::abs(adap.value - formula) <= 1e-9 + options.tolerance;
      r.add(std::move(m));
    }
    const BestNonadaptive na =
        best_nonadaptive_exact(*b.universe, b.dist, b.valuation, *b.constraint, b.universe->element_count(), eo);
    Metric m = value_metric("best_nonadaptive_exact", na.value);
    if (na.exact_value) m.exact = short_exact(*na.exact_value);
    m.bound = "best_nonadaptive <= 1+kp";
    m.pass = na.value <= bound + 1e-9 + options.tolerance;
    r.add(std::move(m));
    r.details["best_nonadaptive"] = {{"sequence", sequence_json(*b.universe, na.sequence)},
                                     {"sequences_examined", na.sequences_examined}};
  }
  if (options.mode == EvalMode::monte_carlo) {
    const InstanceBundle b = gen_tree_lb(k, w, p);
    const EvalReport est = adap_mc(*b.strategy(), *b.universe, b.valuation, b.dist, mc_options(options));
    Metric m = from_eval(est, "adap_mc(level rule)");
    m.bound = "|adap_mc - formula| <= 3 stderr + tol";
    m.pass = std::abs(est.value - formula) <= 3.0 * est.std_error.value_or(0.0) + options.tolerance;
    r.add(std::move(m));
  }
  r.timings["total"] = seconds_since(start);
  return r;
}

// ---- gap-matroid-encoding ----

Report run_gap_matroid_encoding(std::uint32_t k, const ExperimentOptions& options,
                                const EncodingCheckOptions& encoding) {
  const auto start = Clock::now();
  Report r;
  r.command = "gap-matroid-encoding";
  r.parameters["k"] = std::to_string(k);
  r.parameters["seed"] = std::to_string(encoding.seed);
  r.parameters["sample_sets"] = std::to_string(encoding.sample_sets);

  const PrimeEncoding enc = gen_prime_matroid_encoding(k);
  r.add(value_metric("matroids", static_cast<double>(enc.matroids.size())));
  const CheckResult check = check_encoding(enc, encoding);
  {
    Metric m = check_metric("encoding", check.ok ? 1.0 : 0.0,
                            "intersection independent sets = root-leaf chains", check.ok);
    r.add(std::move(m));
    json d = json::object();
    for (const auto& [name, count] : check.counts) d[name] = count;
    r.details["encoding_counts"] = std::move(d);
    if (!check.ok) {
      json wit = json::array();
      for (const auto& s : check.witness) {
        json names = json::array();
        for (TypeId t : s) names.push_back(enc.bundle.universe->type_name(t));
        wit.push_back(std::move(names));
      }
      r.details["encoding_failure"] = {{"message", check.message}, {"witness", std::move(wit)}};
    }
  }

  const double p = 1.0 / k;
  const double formula = tree_lb_adaptive_formula(k, k, p);
  const double floor_value = k * (1.0 - std::exp(-1.0));
  r.add(check_metric("adaptive formula k(1-(1-1/k)^k)", formula, "formula >= k(1-1/e) = " + fmt(floor_value),
                     formula >= floor_value - options.tolerance, "formula"));
  const double bound = tree_lb_nonadaptive_bound(k, p);
  r.add(value_metric("non-adaptive bound 1+kp", bound, "formula"));
  r.add(value_metric("ratio", formula / bound, "formula"));

  const InstanceBundle& b = enc.bundle;
  const ExactOptions eo = exact_options(options, b);
  if (b.tree) {
    const EvalReport adap = adap_exact(*b.tree, b.valuation, b.dist, eo);
    Metric m = from_eval(adap, "adap_exact(level tree)");
    m.bound = "adap_exact = k(1-(1-1/k)^k)";
    m.pass = std::abs(adap.value - formula) <= 1e-9 + options.tolerance;
    r.add(std::move(m));
  }
  if (b.universe->element_count() <= 12) {
    const BestNonadaptive na =
        best_nonadaptive_exact(*b.universe, b.dist, b.valuation, *b.constraint, b.universe->element_count(), eo);
    Metric m = value_metric("best_nonadaptive_exact", na.value);
    if (na.exact_value) m.exact = short_exact(*na.exact_value);
    m.bound = "best_nonadaptive <= 1+kp";
    m.pass = na.value <= bound + 1e-9 + options.tolerance;
    r.add(std::move(m));
  }
  r.timings["total"] = seconds_since(start);
  return r;
}

// ---- eval / mc-estimate ----

Report run_eval(const InstanceBundle& b, Quantity q, const ExperimentOptions& options) {
  const auto start = Clock::now();
  Report r;
  r.command = "eval";
  r.parameters["quantity"] = to_string(q);
  r.parameters["construction"] = b.construction;
  r.parameters["mode"] = options.mode == EvalMode::exact ? "exact" : "mc";
  const ExactOptions eo = exact_options(options, b);
  r.parameters["arithmetic"] = eo.arithmetic == Arithmetic::rational ? "rational" : "floating";

  if (q == Quantity::best_na) {
    require(options.mode == EvalMode::exact, "best-na is exact only");
    require(b.valuation && b.constraint, "best-na needs a valuation and a constraint");
    const BestNonadaptive na =
        best_nonadaptive_exact(*b.universe, b.dist, b.valuation, *b.constraint, b.universe->element_count(), eo);
    Metric m = value_metric("best-na", na.value);
    if (na.exact_value) m.exact = short_exact(*na.exact_value);
    r.add(std::move(m));
    r.details["best_nonadaptive"] = {{"sequence", sequence_json(*b.universe, na.sequence)},
                                     {"sequences_examined", na.sequences_examined}};
  } else if (options.mode == EvalMode::exact) {
    const EvalReport er = evaluate_exact(b, q, eo);
    r.add(from_eval(er, to_string(q)));
    for (const auto& [name, v] : er.extras) r.add(value_metric(std::string(to_string(q)) + "." + name, v));
  } else {
    r.parameters["threads"] = std::to_string(options.threads);
    const EvalReport er = evaluate_mc(b, q, mc_options(options));
    r.add(from_eval(er, to_string(q)));
  }
  if (b.tree && b.constraint) {
    const FeasibilityResult fr = check_tree_feasible(*b.tree, *b.constraint);
    r.add(check_metric("tree feasible", fr.feasible ? 1.0 : 0.0, "every root-leaf path is feasible", fr.feasible));
    if (!fr.feasible) r.details["infeasible_path"] = sequence_json(*b.universe, fr.witness);
  }
  r.timings["total"] = seconds_since(start);
  return r;
}

Report run_mc_estimate(const InstanceBundle& b, Quantity q, const ExperimentOptions& options) {
  const auto start = Clock::now();
  require(q != Quantity::best_na, "mc-estimate: best-na has no estimator");
  require(options.trials >= 2, "mc-estimate: at least two trials are required");
  Report r;
  r.command = "mc-estimate";
  r.parameters["quantity"] = to_string(q);
  r.parameters["construction"] = b.construction;
  r.parameters["threads"] = std::to_string(options.threads);
  const EvalReport est = evaluate_mc(b, q, mc_options(options));
  r.add(from_eval(est, std::string(to_string(q)) + "_mc"));
  try {
    const EvalReport ex = evaluate_exact(b, q, exact_options(options, b));
    r.add(from_eval(ex, std::string(to_string(q)) + "_exact"));
    const double dev = std::abs(est.value - ex.value);
    r.add(check_metric("|mc - exact|", dev, "|mc - exact| <= 3 stderr + tol",
                       dev <= 3.0 * est.std_error.value_or(0.0) + options.tolerance));
  } catch (const ExactInfeasibleError& e) {
    r.details["exact"] = std::string("unavailable: ") + e.what();
  } catch (const CapExceededError& e) {
    r.details["exact"] = std::string("unavailable: ") + e.what();
  }
  r.timings["total"] = seconds_since(start);
  return r;
}

// ---- reduce-weighted ----

Report run_reduce_weighted(const InstanceBundle& b, int k, const ExperimentOptions& options) {
  const auto start = Clock::now();
  if (k <= 0) {
    auto it = b.parameters.find("k");
    require(it != b.parameters.end(), "reduce-weighted: pass --k or use an instance recording k");
    k = std::stoi(it->second);
  }
  require(k >= 2, "reduce-weighted: k must be at least 2");
  const auto* rank = dynamic_cast<const WeightedRankValuation*>(b.valuation.get());
  require(rank != nullptr, "reduce-weighted: valuation must be a weighted rank");
  const Family family = b.family ? b.family : rank->family();
  std::optional<DecisionTree> storage;
  const DecisionTree& tree = tree_of(b, storage);

  Report r;
  r.command = "reduce-weighted";
  r.parameters["k"] = std::to_string(k);
  r.parameters["construction"] = b.construction;
  const Universe& u = *b.universe;

  const CombinedResult c = combined_value(tree, rank->weights(), family, k, b.dist);
  const EvalReport adap = adap_exact(tree, b.valuation, b.dist);
  const EvalReport alg = alg_exact(tree, b.valuation, b.dist);
  r.add(from_eval(adap, "adap_exact"));
  r.add(from_eval(alg, "alg_exact"));
  r.add(from_eval(c.report, "combined_value"));
  r.add(value_metric("bucket_width", bucket_width(k)));
  const double claim_gap = c.report.value - c.claim_rhs;
  r.add(check_metric("claim", claim_gap, "combined >= (1/4) sum_selected 2^j(i) alg(f_j(i))",
                     claim_gap >= -options.tolerance));
  const double factor = 32.0 * k * std::log2(static_cast<double>(k));
  const double theorem_gap = c.report.value - adap.value / factor;
  r.add(check_metric("theorem", theorem_gap, "combined >= adap/(32 k log2 k), 32 k log2 k = " + fmt(factor),
                     theorem_gap >= -options.tolerance));

  json classes = json::object();
  for (const auto& [j, members] : c.decomposition.members) {
    json names = json::array();
    for (TypeId t : members) names.push_back(u.type_name(t));
    json rec{{"types", std::move(names)}};
    if (auto it = c.class_alg.find(j); it != c.class_alg.end()) rec["alg"] = it->second;
    if (auto it = c.class_adap.find(j); it != c.class_adap.end()) rec["adap"] = it->second;
    classes[std::to_string(j)] = std::move(rec);
  }
  json buckets = json::array();
  for (const auto& bk : c.buckets) buckets.push_back({{"index", bk.index}, {"lo", bk.lo}, {"hi", bk.hi}});
  json argmax = json::object();
  for (const auto& [i, j] : c.representatives.argmax) argmax[std::to_string(i)] = j;
  r.details["decomposition"] = {{"a", c.decomposition.a}, {"b", c.decomposition.b}, {"classes", std::move(classes)}};
  r.details["buckets"] = std::move(buckets);
  r.details["representatives"] = {{"parity", to_string(c.representatives.parity)},
                                  {"argmax", std::move(argmax)},
                                  {"selected", c.representatives.selected},
                                  {"selected_sum", c.representatives.selected_sum},
                                  {"total", c.representatives.total}};
  r.timings["total"] = seconds_since(start);
  return r;
}

// ---- random instances ----

InstanceBundle random_submodular_instance(std::uint64_t seed) {
  RandomInstanceParams p;
  p.valuations = {RandomValuation::coverage, RandomValuation::partition_weighted, RandomValuation::matroid_rank};
  p.matroid_count = 1;
  p.max_weight = 4;
  return gen_random_instance(p, seed);
}

InstanceBundle random_kext_instance(std::uint32_t k, std::uint64_t seed, std::uint32_t max_weight) {
  require(k >= 1, "random_kext_instance: k must be positive");
  RandomInstanceParams p;
  p.valuations = {RandomValuation::matroid_rank};
  // A matching is 2-extendible, so it also serves k = 3.
  if (k >= 2 && seed % 3 == 0) p.valuations = {RandomValuation::matching_rank};
  p.matroid_count = k;
  p.max_weight = max_weight;
  InstanceBundle b = gen_random_instance(p, seed);
  b.parameters["k"] = std::to_string(k);
  return b;
}

ExtensionTuple random_extension_tuple(std::uint64_t seed) {
  Rng rng{RandomStream(seed, 0xe47).engine(0)};
  const std::size_t g = rng.between(3, 10);
  std::vector<TypeId> ground;
  for (std::uint32_t t = 0; t < g; ++t) ground.push_back(TypeId{t});
  ExtensionTuple out;
  if (rng.chance(0.4)) {
    const std::uint32_t vertices = static_cast<std::uint32_t>(rng.between(3, 6));
    std::map<TypeId, MatchingFamily::Edge> edges;
    for (TypeId t : ground) {
      const auto a = static_cast<std::uint32_t>(rng.below(vertices));
      auto c = static_cast<std::uint32_t>(rng.below(vertices - 1));
      if (c >= a) ++c;
      edges.emplace(t, MatchingFamily::Edge{a, c});
    }
    out.family = make_matching_family(std::move(edges));
    out.k = 2;
  } else {
    const std::size_t m = rng.between(1, 3);
    std::vector<Family> members;
    for (std::size_t i = 0; i < m; ++i) {
      const std::size_t parts = rng.between(2, 4);
      std::map<TypeId, std::uint32_t> part_of;
      for (TypeId t : ground) part_of.emplace(t, static_cast<std::uint32_t>(rng.below(parts)));
      std::vector<std::uint32_t> capacity;
      for (std::size_t j = 0; j < parts; ++j) capacity.push_back(static_cast<std::uint32_t>(rng.between(1, 2)));
      members.push_back(make_partition_matroid(std::move(part_of), std::move(capacity)));
    }
    out.family = intersect(std::move(members));
    out.k = m;
  }
  auto shuffled = ground;
  std::shuffle(shuffled.begin(), shuffled.end(), rng.engine);
  for (TypeId t : shuffled) {
    if (rng.chance(0.75) && out.family->is_independent(out.b.with(t))) out.b.insert(t);
  }
  for (TypeId t : out.b) {
    if (rng.chance(0.5)) out.a.insert(t);
  }
  std::shuffle(shuffled.begin(), shuffled.end(), rng.engine);
  const std::size_t max_e = rng.between(1, 3);
  TypeSet ae = out.a;
  for (TypeId t : shuffled) {
    if (out.e.size() >= max_e) break;
    if (out.b.contains(t)) continue;
    if (out.family->is_independent(ae.with(t))) {
      ae.insert(t);
      out.e.insert(t);
    }
  }
  return out;
}

// ---- property suites ----

Report run_submodular_gap_suite(std::uint64_t seed, std::uint64_t cases, double tolerance) {
  const auto start = Clock::now();
  Report r;
  r.command = "submodular-gap-suite";
  Tally gap("submodular_gap", "alg_exact >= adap_exact/2 - " + fmt(tolerance));
  Tally feasible("tree_feasible", "reference tree satisfies its constraint");
  for (std::uint64_t i = 0; i < cases; ++i) {
    const std::uint64_t s = case_seed(seed, i);
    const InstanceBundle b = random_submodular_instance(s);
    const double adap = adap_exact(*b.tree, b.valuation, b.dist).value;
    const double alg = alg_exact(*b.tree, b.valuation, b.dist).value;
    gap.record(alg >= adap / 2.0 - tolerance, s, "adap=" + fmt(adap) + " alg=" + fmt(alg));
    feasible.record(check_tree_feasible(*b.tree, *b.constraint).feasible, s);
  }
  gap.add_to(r);
  feasible.add_to(r);
  r.timings["submodular_gap"] = seconds_since(start);
  return r;
}

Report run_decomposition_suite(std::uint64_t seed, std::uint64_t cases, bool rational) {
  const auto start = Clock::now();
  Report r;
  r.command = "decomposition-suite";
  Tally t("decomposition", rational ? "root decomposition = path enumeration (exact)"
                                    : "|root decomposition - path enumeration| <= 1e-9");
  ExactOptions eo;
  eo.arithmetic = rational ? Arithmetic::rational : Arithmetic::floating;
  for (std::uint64_t i = 0; i < cases; ++i) {
    const std::uint64_t s = case_seed(seed, i);
    RandomInstanceParams p;
    p.max_weight = 3;
    p.matroid_count = 1 + i % 3;
    const InstanceBundle b = gen_random_instance(p, s);
    const EvalReport a = adap_exact(*b.tree, b.valuation, b.dist, eo);
    const EvalReport c = adap_exact_by_paths(*b.tree, b.valuation, b.dist, eo);
    const bool ok = rational ? (a.exact_value && c.exact_value && *a.exact_value == *c.exact_value)
                             : std::abs(a.value - c.value) <= 1e-9;
    t.record(ok, s, "decomposition=" + fmt(a.value) + " paths=" + fmt(c.value));
  }
  t.add_to(r);
  r.timings["decomposition"] = seconds_since(start);
  return r;
}

Report run_kext_chain_suite(std::uint64_t seed, std::uint64_t cases, double tolerance) {
  const auto start = Clock::now();
  Report r;
  r.command = "kext-chain-suite";
  Tally upper("kext_adap_vs_greedy", "adap_exact <= k greedy_interleaved_exact + " + fmt(tolerance));
  Tally lower("kext_greedy_vs_alg", "greedy_interleaved_exact <= 2 alg_exact + " + fmt(tolerance));
  for (std::uint64_t i = 0; i < cases; ++i) {
    const std::uint64_t s = case_seed(seed, i);
    const std::uint32_t k = 1 + static_cast<std::uint32_t>(i % 3);
    const InstanceBundle b = random_kext_instance(k, s);
    const double adap = adap_exact(*b.tree, b.valuation, b.dist).value;
    const double greedy = greedy_interleaved_exact(*b.tree, b.family, b.dist).value;
    const double alg = alg_exact(*b.tree, b.valuation, b.dist).value;
    const std::string msg = "k=" + std::to_string(k) + " adap=" + fmt(adap) + " greedy=" + fmt(greedy) +
                            " alg=" + fmt(alg);
    upper.record(adap <= k * greedy + tolerance, s, msg);
    lower.record(greedy <= 2.0 * alg + tolerance, s, msg);
  }
  upper.add_to(r);
  lower.add_to(r);
  r.timings["kext_chain"] = seconds_since(start);
  return r;
}

Report run_extension_witness_suite(std::uint64_t seed, std::uint64_t cases) {
  const auto start = Clock::now();
  Report r;
  r.command = "extension-witness-suite";
  Tally t("extension_witness", "Z within B \\ A, |Z| <= k|E|, (B \\ Z) u E independent");
  for (std::uint64_t i = 0; i < cases; ++i) {
    const std::uint64_t s = case_seed(seed, i);
    const ExtensionTuple x = random_extension_tuple(s);
    const ExtensionWitness w = find_extension_witness(*x.family, x.k, x.a, x.b, x.e);
    bool ok = w.found && w.z.is_subset_of(set_difference(x.b, x.a)) && w.z.size() <= x.k * x.e.size() &&
              x.family->is_independent(set_union(set_difference(x.b, w.z), x.e));
    t.record(ok, s, w.found ? "invalid witness" : w.message);
  }
  t.add_to(r);
  r.timings["extension_witness"] = seconds_since(start);
  return r;
}

Report run_weighted_reduction_suite(std::uint64_t seed, std::uint64_t cases, double tolerance) {
  const auto start = Clock::now();
  Report r;
  r.command = "weighted-reduction-suite";
  Tally claim("reduction_claim", "combined >= (1/4) sum_selected 2^j(i) alg(f_j(i)) - " + fmt(tolerance));
  Tally theorem("reduction_theorem", "combined >= adap/(32 k log2 k) - " + fmt(tolerance));
  for (std::uint64_t i = 0; i < cases; ++i) {
    const std::uint64_t s = case_seed(seed, i);
    const std::uint32_t k = 2 + static_cast<std::uint32_t>(i % 2);
    const InstanceBundle b = random_kext_instance(k, s, 1024);
    const auto* rank = dynamic_cast<const WeightedRankValuation*>(b.valuation.get());
    const CombinedResult c = combined_value(*b.tree, rank->weights(), b.family, static_cast<int>(k), b.dist);
    const double adap = adap_exact(*b.tree, b.valuation, b.dist).value;
    const double factor = 32.0 * k * std::log2(static_cast<double>(k));
    const std::string msg = "k=" + std::to_string(k) + " combined=" + fmt(c.report.value) + " claim_rhs=" +
                            fmt(c.claim_rhs) + " adap=" + fmt(adap);
    claim.record(c.report.value >= c.claim_rhs - tolerance, s, msg);
    theorem.record(c.report.value >= adap / factor - tolerance, s, msg);
  }
  claim.add_to(r);
  theorem.add_to(r);
  r.timings["weighted_reduction"] = seconds_since(start);
  return r;
}

Report run_structure_suite(std::uint64_t seed, std::uint64_t cases) {
  const auto start = Clock::now();
  Report r;
  r.command = "structure-suite";
  Tally sub("valuation_submodular", "f(A u B) + f(A n B) <= f(A) + f(B)");
  Tally mono("valuation_monotone", "f monotone with f(empty) = 0");
  Tally down("family_downward_closed", "subsets of independent sets are independent");
  Tally prefix("constraint_prefix_closed", "prefixes of feasible sequences are feasible");
  Tally best("best_nonadaptive", "alg_exact(T) <= best_nonadaptive = adap(path tree of its sequence)");
  for (std::uint64_t i = 0; i < cases; ++i) {
    const std::uint64_t s = case_seed(seed, i);
    const InstanceBundle b = random_submodular_instance(s);
    const Universe& u = *b.universe;
    std::vector<TypeId> types;
    for (std::uint32_t t = 0; t < u.type_count() && t < 10; ++t) types.push_back(TypeId{t});
    const TypeSet ground(types);
    const CheckResult cs = check_submodular(*b.valuation, ground);
    sub.record(cs.ok, s, cs.message);
    const CheckResult cm = check_monotone(*b.valuation, ground);
    mono.record(cm.ok, s, cm.message);
    if (b.family) {
      const CheckResult cd = check_downward_closed(*b.family, ground);
      down.record(cd.ok, s, cd.message);
    }
    const CheckResult cp = check_prefix_closed(*b.constraint, u, std::min<std::size_t>(u.element_count(), 4));
    prefix.record(cp.ok, s, cp.message);
    if (i % 5 == 0) {
      const std::size_t max_len = std::max<std::size_t>(b.tree->depth(), 1);
      const BestNonadaptive na = best_nonadaptive_exact(u, b.dist, b.valuation, *b.constraint, max_len);
      const double alg = alg_exact(*b.tree, b.valuation, b.dist).value;
      const double via_tree = adap_exact(path_tree(b.universe, na.sequence), b.valuation, b.dist).value;
      best.record(alg <= na.value + 1e-9 && std::abs(via_tree - na.value) <= 1e-9, s,
                  "alg=" + fmt(alg) + " best=" + fmt(na.value) + " path tree=" + fmt(via_tree));
    }
  }
  sub.add_to(r);
  mono.add_to(r);
  down.add_to(r);
  prefix.add_to(r);
  best.add_to(r);
  r.timings["structure"] = seconds_since(start);
  return r;
}

Report run_verify_suite(std::uint64_t seed, std::uint64_t cases, double tolerance) {
  const auto start = Clock::now();
  Report r;
  r.command = "verify-suite";
  r.parameters["seed"] = std::to_string(seed);
  r.parameters["cases"] = std::to_string(cases);
  merge_into(r, run_submodular_gap_suite(seed, cases, tolerance));
  merge_into(r, run_decomposition_suite(seed, cases, true));
  merge_into(r, run_kext_chain_suite(seed, cases, tolerance));
  merge_into(r, run_extension_witness_suite(seed, cases));
  merge_into(r, run_weighted_reduction_suite(seed, std::max<std::uint64_t>(1, cases / 5), tolerance));
  merge_into(r, run_structure_suite(seed, cases));
  r.timings["total"] = seconds_since(start);
  return r;
}

}  // namespace smp
