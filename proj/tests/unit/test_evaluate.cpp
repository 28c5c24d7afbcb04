#include <cstdio>

#include "doctest.h"
#include "helpers.hpp"
#include "smp/evaluate.hpp"
#include "smp/instances.hpp"

using namespace smp;

namespace {

ElementId E(std::uint32_t v) { return ElementId{v}; }

ExactOptions rational() {
  ExactOptions o;
  o.arithmetic = Arithmetic::rational;
  return o;
}

RandomInstanceParams small_params() {
  RandomInstanceParams p;
  p.max_elements = 5;
  p.max_types = 2;
  return p;
}

std::string hex(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%a", v);
  return buf;
}

}  // namespace

TEST_CASE("trivial trees") {
  const auto u = testing::bernoulli_universe({"a"});
  const auto d = testing::bernoulli_dist(*u, {Number::parse("1/2")});
  const Valuation f = coverage_valuation({{testing::active(*u, "a"), {1}}});
  const DecisionTree leaf(u);
  CHECK(adap_exact(leaf, f, d).value == 0.0);
  CHECK(alg_exact(leaf, f, d).value == 0.0);
  const std::vector<ElementId> one{E(0)};
  const DecisionTree t = path_tree(u, one);
  CHECK(adap_exact(t, f, d).value == 0.5);
  CHECK(*adap_exact(t, f, d, rational()).exact_value == Rational(1, 2));
  CHECK(alg_exact(t, f, d).value == 0.5);
}

TEST_CASE("column instance at eps = 1/2") {
  const InstanceBundle b = gen_submodular_lb(Number::parse("1/2"));
  REQUIRE(b.tree.has_value());
  const EvalReport adap = adap_exact(*b.tree, b.valuation, b.dist, rational());
  CHECK(*adap.exact_value == Rational(41, 32));
  CHECK(adap.value == doctest::Approx(testing::column_adap(0.5, 3)));
  CHECK(*adap_exact_by_paths(*b.tree, b.valuation, b.dist, rational()).exact_value == Rational(41, 32));
  const EvalReport alg = alg_exact(*b.tree, b.valuation, b.dist, rational());
  CHECK(*alg.exact_value == Rational(15, 16));
  CHECK(alg.value == doctest::Approx(testing::brute_alg(*b.tree, *b.valuation, b.dist)));
  CHECK(submodular_lb_alg_opt_exact(Rational(1, 2)) == Rational(15, 16));
  CHECK(testing::column_alg(0.5, 3) == doctest::Approx(15.0 / 16.0));
  const BestNonadaptive na = best_nonadaptive_exact(*b.universe, b.dist, b.valuation, *b.constraint,
                                                    b.universe->element_count(), rational());
  CHECK(*na.exact_value == Rational(15, 16));
}

TEST_CASE("column instance at eps = 3/10 against the recurrences") {
  const InstanceBundle b = gen_submodular_lb(Number::parse("3/10"));
  REQUIRE(b.tree.has_value());
  const int depth = submodular_lb_depth(Number::parse("3/10"));
  CHECK(adap_exact(*b.tree, b.valuation, b.dist).value == doctest::Approx(testing::column_adap(0.3, depth)));
  CHECK(submodular_lb_adap_recurrence(0.3) == doctest::Approx(testing::column_adap(0.3, depth)));
  CHECK(submodular_lb_alg_opt(0.3) == doctest::Approx(testing::column_alg(0.3, depth)));
  CHECK(to_double(submodular_lb_alg_opt_exact(Rational(3, 10))) == doctest::Approx(testing::column_alg(0.3, depth)));
}

TEST_CASE("exact evaluators agree with joint enumeration") {
  int greedy_checked = 0;
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    const InstanceBundle b = gen_random_instance(small_params(), seed);
    REQUIRE(b.tree.has_value());
    CAPTURE(seed);
    const double adap = adap_exact(*b.tree, b.valuation, b.dist).value;
    CHECK(adap == doctest::Approx(testing::brute_adap(*b.tree, *b.valuation, b.dist)));
    CHECK(adap_exact_by_paths(*b.tree, b.valuation, b.dist).value == doctest::Approx(adap));
    CHECK(alg_exact(*b.tree, b.valuation, b.dist).value ==
          doctest::Approx(testing::brute_alg(*b.tree, *b.valuation, b.dist)));
    if (b.family) {
      CHECK(greedy_interleaved_exact(*b.tree, b.family, b.dist).value ==
            doctest::Approx(testing::brute_greedy(*b.tree, b.family, b.dist)));
      ++greedy_checked;
    }
  }
  CHECK(greedy_checked > 5);
}

TEST_CASE("rational and floating modes agree") {
  for (std::uint64_t seed = 100; seed < 120; ++seed) {
    const InstanceBundle b = gen_random_instance(small_params(), seed);
    if (!b.dist.is_exact() || !b.valuation->supports_exact()) continue;
    const EvalReport r = adap_exact(*b.tree, b.valuation, b.dist, rational());
    CHECK(to_double(*r.exact_value) == doctest::Approx(adap_exact(*b.tree, b.valuation, b.dist).value));
  }
}

TEST_CASE("greedy on a single rank-1 element") {
  const auto u = testing::bernoulli_universe({"a"});
  const auto d = testing::bernoulli_dist(*u, {Number::parse("1/2")});
  const TypeId a = testing::active(*u, "a");
  const Family fam = make_uniform_matroid(TypeSet{a}, 1);
  const std::vector<ElementId> one{E(0)};
  const DecisionTree t = path_tree(u, one);
  // Four (X', X) cases; the active type is selected unless both are inactive.
  CHECK(greedy_interleaved_exact(t, fam, d).value == doctest::Approx(0.75));
  CHECK(*greedy_interleaved_exact(t, fam, d, rational()).exact_value == Rational(3, 4));
}

TEST_CASE("best non-adaptive sequence") {
  SUBCASE("a constraint admitting nothing") {
    const auto u = testing::bernoulli_universe({"a", "b"});
    const auto d = testing::bernoulli_dist(*u, {Number(0.5), Number(0.5)});
    const Valuation f = coverage_valuation({{TypeId{0}, {1}}, {TypeId{2}, {2}}});
    const BestNonadaptive na = best_nonadaptive_exact(*u, d, f, *constraint_cardinality(0), 2);
    CHECK(na.sequence.empty());
    CHECK(na.value == 0.0);
  }
  SUBCASE("depth-1 column instance breaks ties lexicographically") {
    const InstanceBundle b = gen_submodular_lb_truncated(Number::parse("1/2"), 1);
    const BestNonadaptive na = best_nonadaptive_exact(*b.universe, b.dist, b.valuation, *b.constraint, 3, rational());
    CHECK(*na.exact_value == Rational(3, 4));
    CHECK(na.sequence == std::vector<ElementId>{E(0), E(1)});
    CHECK(b.universe->element_name(E(1)) == ColumnLayout::name(0, 1));
    CHECK(*na.exact_value == submodular_lb_alg_table<Rational>(Rational(1, 2), 1).front());
  }
  SUBCASE("matches brute force over sequences") {
    const auto u = testing::bernoulli_universe({"a", "b", "c"});
    const auto d = testing::bernoulli_dist(*u, {Number::parse("1/2"), Number::parse("1/3"), Number::parse("1/4")});
    const Valuation f = coverage_valuation({{TypeId{0}, {1, 2}}, {TypeId{2}, {2, 3}}, {TypeId{4}, {4}}});
    const BestNonadaptive na = best_nonadaptive_exact(*u, d, f, *constraint_cardinality(2), 2, rational());
    // a and b together: 2*1/2 + 2*1/3 - 1/6 = 3/2.
    CHECK(*na.exact_value == Rational(3, 2));
    CHECK(na.sequence == std::vector<ElementId>{E(0), E(1)});
  }
}

TEST_CASE("expected set value") {
  const auto u = testing::bernoulli_universe({"a", "b"});
  const auto d = testing::bernoulli_dist(*u, {Number::parse("1/2"), Number::parse("1/4")});
  const Valuation f = coverage_valuation({{TypeId{0}, {1}}, {TypeId{2}, {1}}});
  const std::vector<ElementId> both{E(0), E(1)};
  CHECK(expected_set_value_exact(*u, d, *f, both) == Rational(5, 8));
  CHECK(expected_set_value(*u, d, *f, both) == doctest::Approx(0.625));
}

TEST_CASE("caps") {
  const auto u = testing::bernoulli_universe({"a", "b"});
  const auto d = testing::bernoulli_dist(*u, {Number(0.5), Number(0.5)});
  const Valuation f = coverage_valuation({{TypeId{0}, {1}}});
  const std::vector<ElementId> seq{E(0), E(1)};
  const DecisionTree t = path_tree(u, seq);
  ExactOptions tight;
  tight.cap = 2;
  CHECK_THROWS_AS(alg_exact(t, f, d, tight), ExactInfeasibleError);
  CHECK_THROWS_AS(best_nonadaptive_exact(*u, d, f, *constraint_cardinality(2), 2, {}, 2), CapExceededError);
  CHECK_THROWS_AS(adap_exact(t, f, d, rational()), ValidationError);
}

TEST_CASE("Monte Carlo") {
  SUBCASE("a deterministic instance has zero spread") {
    const auto u = testing::bernoulli_universe({"a"});
    const auto d = testing::bernoulli_dist(*u, {Number(1)});
    const Valuation f = coverage_valuation({{TypeId{0}, {1, 2}}});
    const std::vector<ElementId> one{E(0)};
    const DecisionTree t = path_tree(u, one);
    McOptions mo;
    mo.trials = 500;
    const EvalReport r = adap_mc(t, *u, f, d, mo);
    CHECK(r.value == 2.0);
    CHECK(*r.std_error == 0.0);
    CHECK(*r.trials == 500);
    CHECK(r.mode == EvalMode::monte_carlo);
  }
  SUBCASE("results do not depend on the thread count") {
    const InstanceBundle b = gen_random_instance(RandomInstanceParams{}, 5);
    McOptions mo;
    mo.trials = 5000;
    mo.seed = 3;
    mo.block_size = 256;
    std::vector<std::string> seen;
    for (unsigned threads : {1u, 3u, 8u}) {
      mo.threads = threads;
      const EvalReport a = adap_mc(*b.tree, *b.universe, b.valuation, b.dist, mo);
      const EvalReport g = alg_mc(*b.tree, *b.universe, b.valuation, b.dist, mo);
      seen.push_back(hex(a.value) + hex(*a.std_error) + hex(g.value) + hex(*g.std_error));
    }
    CHECK(seen[0] == seen[1]);
    CHECK(seen[0] == seen[2]);
  }
  SUBCASE("column rule at eps = 0.1 lands within three standard errors") {
    const InstanceBundle b = gen_submodular_lb(Number::parse("0.1"));
    REQUIRE(b.rule);
    McOptions mo;
    mo.trials = 20000;
    mo.seed = 1;
    const EvalReport r = adap_mc(*b.rule, *b.universe, b.valuation, b.dist, mo);
    const double expected = submodular_lb_adap_recurrence(0.1);
    CHECK(std::abs(r.value - expected) <= 3.0 * *r.std_error);
  }
  SUBCASE("greedy estimate tracks the exact value") {
    for (std::uint64_t seed = 0; seed < 30; ++seed) {
      const InstanceBundle b = gen_random_instance(small_params(), seed);
      if (!b.family) continue;
      McOptions mo;
      mo.trials = 20000;
      mo.seed = 9;
      const EvalReport r = greedy_mc(*b.tree, *b.universe, b.family, b.dist, mo);
      const double exact = greedy_interleaved_exact(*b.tree, b.family, b.dist).value;
      CHECK(std::abs(r.value - exact) <= 4.0 * *r.std_error + 1e-12);
      break;
    }
  }
}
