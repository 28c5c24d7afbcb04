#include <map>

#include "doctest.h"
#include "helpers.hpp"

using namespace smp;

TEST_CASE("rational parsing and formatting") {
  CHECK(parse_rational("3/4") == Rational(3, 4));
  CHECK(parse_rational("6/8") == Rational(3, 4));
  CHECK(parse_rational("0.125") == Rational(1, 8));
  CHECK(parse_rational("-3e-2") == Rational(-3, 100));
  CHECK(parse_rational("7") == Rational(7));
  CHECK(parse_rational("0.09") == Rational(9, 100));
  CHECK(parse_rational("007") == Rational(7));
  CHECK(parse_rational("0") == Rational(0));
  CHECK(to_string(Rational(10, 4)) == "5/2");
  CHECK(to_string(Rational(4, 2)) == "2");
  CHECK_THROWS_AS(parse_rational("1/0"), Error);
  CHECK_THROWS_AS(parse_rational("abc"), Error);
}

TEST_CASE("numbers keep an exact twin only when given exactly") {
  const Number a = Number::parse("1/3");
  CHECK(a.is_exact());
  CHECK(a.exact() == Rational(1, 3));
  CHECK(a.value() == doctest::Approx(1.0 / 3.0));
  CHECK(a.to_string() == "1/3");
  const Number b(0.25);
  CHECK_FALSE(b.is_exact());
  CHECK_THROWS_AS(b.exact(), ValidationError);
  CHECK(Number(3).is_exact());
}

TEST_CASE("universe layout and lookups") {
  Universe::Builder b;
  const ElementId x = b.add_element("x", {"x0", "x1", "x2"});
  const ElementId y = b.add_bernoulli("y");
  const UniversePtr u = b.build();
  CHECK(u->element_count() == 2);
  CHECK(u->type_count() == 5);
  CHECK(u->type_count(x) == 3);
  CHECK(u->first_type(y).value == 3);
  CHECK(u->type_name(u->first_type(y)) == "y+");
  CHECK(u->type_name(u->type_at(y, 1)) == "y-");
  CHECK(u->element_of(TypeId{4}) == y);
  CHECK(u->local_index(TypeId{4}) == 1);
  CHECK(u->owns(x, TypeId{2}));
  CHECK_FALSE(u->owns(x, TypeId{3}));
  CHECK(u->find_element("y") == y);
  CHECK_FALSE(u->find_element("z").has_value());
  CHECK(u->find_type("x2") == TypeId{2});
}

TEST_CASE("universe validation") {
  {
    Universe::Builder b;
    b.add_bernoulli("a");
    b.add_bernoulli("a");
    CHECK_THROWS_AS(b.build(), ValidationError);
  }
  {
    Universe::Builder b;
    b.add_element("a", {"t"});
    b.add_element("b", {"t"});
    CHECK_THROWS_AS(b.build(), ValidationError);
  }
  Universe::Builder b;
  CHECK_THROWS_AS(b.add_element("a", {}), ValidationError);
}

TEST_CASE("distributions must be normalized") {
  const auto u = testing::bernoulli_universe({"a"});
  CHECK_NOTHROW(TypeDistribution(*u, {Number::parse("1/3"), Number::parse("2/3")}));
  CHECK_THROWS_AS(TypeDistribution(*u, {Number::parse("1/3"), Number::parse("1/3")}), ValidationError);
  CHECK_THROWS_AS(TypeDistribution(*u, {Number(1.5), Number(-0.5)}), ValidationError);
  CHECK_THROWS_AS(TypeDistribution(*u, {Number(1)}), ValidationError);
  const TypeDistribution mixed(*u, {Number(0.5), Number::parse("1/2")});
  CHECK_FALSE(mixed.is_exact());
  const TypeDistribution exact(*u, {Number::parse("1/2"), Number::parse("1/2")});
  CHECK(exact.is_exact());
  CHECK(exact.exact_prob(TypeId{1}) == Rational(1, 2));
}

TEST_CASE("sampling") {
  SUBCASE("a single-type element always yields its type") {
    Universe::Builder b;
    b.add_element("e", {"only"});
    const auto u = b.build();
    const TypeDistribution d(*u, {Number(1)});
    for (std::uint64_t s = 0; s < 20; ++s) {
      const TypeVector v = sample_type_vector(*u, d, RandomStream(s, 0), 0);
      CHECK(v.at(ElementId{0}) == TypeId{0});
    }
  }
  SUBCASE("a certain Bernoulli is always active") {
    const auto u = testing::bernoulli_universe({"e"});
    const TypeDistribution d(*u, {Number(1), Number(0)});
    for (std::uint64_t c = 0; c < 50; ++c) {
      CHECK(sample_type_vector(*u, d, RandomStream(3, 1), c).at(ElementId{0}) == TypeId{0});
    }
  }
  SUBCASE("frequencies match the distribution") {
    Universe::Builder b;
    b.add_element("a", {"a0", "a1"});
    b.add_element("b", {"b0", "b1"});
    const auto u = b.build();
    const TypeDistribution d(*u, {Number::parse("0.3"), Number::parse("0.7"), Number::parse("0.6"),
                                  Number::parse("0.4")});
    const RandomStream stream(7, 0);
    std::map<std::uint32_t, int> counts;
    const int n = 100000;
    for (int i = 0; i < n; ++i) {
      const TypeVector v = sample_type_vector(*u, d, stream, i);
      ++counts[v.at(ElementId{0}).value];
      ++counts[v.at(ElementId{1}).value];
    }
    for (std::uint32_t t = 0; t < 4; ++t) {
      const double p = d.prob(TypeId{t});
      const double sigma = std::sqrt(n * p * (1 - p));
      CHECK(std::abs(counts[t] - n * p) <= 3 * sigma);
    }
  }
  SUBCASE("streams are counter addressed") {
    const auto u = testing::bernoulli_universe({"a", "b", "c"});
    const auto d = testing::bernoulli_dist(*u, {Number(0.5), Number(0.5), Number(0.5)});
    const RandomStream s(11, 2);
    CHECK(sample_type_vector(*u, d, s, 5) == sample_type_vector(*u, d, RandomStream(11, 2), 5));
    bool differs = false;
    for (std::uint64_t c = 0; c < 20; ++c) {
      differs = differs || !(sample_type_vector(*u, d, s, c) == sample_type_vector(*u, d, RandomStream(12, 2), c));
    }
    CHECK(differs);
  }
  SUBCASE("uniform01 stays in [0,1)") {
    auto eng = RandomStream(1, 1).engine(0);
    for (int i = 0; i < 1000; ++i) {
      const double x = uniform01(eng);
      CHECK(x >= 0.0);
      CHECK(x < 1.0);
    }
  }
}

TEST_CASE("assignment enumeration") {
  SUBCASE("empty subset gives one empty assignment") {
    const auto u = testing::bernoulli_universe({"a"});
    const auto d = testing::bernoulli_dist(*u, {Number(0.5)});
    const auto all = enumerate_assignments(*u, d, {});
    REQUIRE(all.size() == 1);
    CHECK(all[0].first.empty());
    CHECK(all[0].second == 1.0);
  }
  SUBCASE("one Bernoulli(0.3)") {
    const auto u = testing::bernoulli_universe({"a"});
    const auto d = testing::bernoulli_dist(*u, {Number::parse("0.3")});
    const std::vector<ElementId> sub{ElementId{0}};
    const auto all = enumerate_assignments(*u, d, sub);
    REQUIRE(all.size() == 2);
    CHECK(all[0].second == doctest::Approx(0.3));
    CHECK(all[1].second == doctest::Approx(0.7));
  }
  SUBCASE("2 x 2 x 3 types give 12 assignments summing to 1") {
    Universe::Builder b;
    b.add_element("a", {"a0", "a1"});
    b.add_element("b", {"b0", "b1"});
    b.add_element("c", {"c0", "c1", "c2"});
    const auto u = b.build();
    const TypeDistribution d(*u, {Number::parse("1/2"), Number::parse("1/2"), Number::parse("1/3"),
                                  Number::parse("2/3"), Number::parse("1/6"), Number::parse("2/6"),
                                  Number::parse("3/6")});
    const auto subset = u->elements();
    CHECK(assignment_count(*u, subset) == 12);
    Rational total = 0;
    std::size_t count = 0;
    for_each_assignment<Rational>(*u, d, subset, [&](std::span<const TypeId> types, const Rational& p) {
      CHECK(types.size() == 3);
      total += p;
      ++count;
    });
    CHECK(count == 12);
    CHECK(total == 1);
  }
  SUBCASE("cap exceeded names the fallback") {
    std::vector<std::string> names;
    for (int i = 0; i < 21; ++i) names.push_back("e" + std::to_string(i));
    const auto u = testing::bernoulli_universe(names);
    const auto d = testing::bernoulli_dist(*u, std::vector<Number>(21, Number(0.5)));
    const auto subset = u->elements();
    try {
      for_each_assignment<double>(*u, d, subset, [](auto, double) {});
      FAIL("expected ExactInfeasibleError");
    } catch (const ExactInfeasibleError& e) {
      CHECK(std::string(e.what()).find("exact mode infeasible") != std::string::npos);
      CHECK(std::string(e.what()).find("Monte Carlo") != std::string::npos);
    }
  }
}

TEST_CASE("type vectors and restriction") {
  Universe::Builder b;
  b.add_element("a", {"a1", "a2"});
  b.add_element("b", {"b1", "b2"});
  b.add_element("c", {"c1", "c2"});
  const auto u = b.build();
  TypeVector v;
  v.set(ElementId{2}, TypeId{4});
  v.set(ElementId{0}, TypeId{0});
  v.set(ElementId{1}, TypeId{3});
  CHECK(v.size() == 3);
  CHECK(v.consistent_with(*u));
  CHECK(v.entries()[0].element == ElementId{0});

  CHECK(restrict(v, {}).empty());
  const std::vector<ElementId> just_b{ElementId{1}};
  const TypeVector rb = restrict(v, just_b);
  CHECK(rb.size() == 1);
  CHECK(rb.at(ElementId{1}) == TypeId{3});
  const std::vector<ElementId> ac{ElementId{0}, ElementId{2}};
  const TypeVector rac = restrict(v, ac);
  CHECK(rac == TypeVector({{ElementId{0}, TypeId{0}}, {ElementId{2}, TypeId{4}}}));

  TypeVector partial;
  partial.set(ElementId{0}, TypeId{1});
  CHECK_THROWS_AS(restrict(partial, ac), ValidationError);
  CHECK_THROWS_AS(partial.at(ElementId{1}), ValidationError);

  TypeVector wrong;
  wrong.set(ElementId{0}, TypeId{3});
  CHECK_FALSE(wrong.consistent_with(*u));
}

TEST_CASE("type sets") {
  const TypeSet a{TypeId{3}, TypeId{1}, TypeId{3}};
  CHECK(a.size() == 2);
  CHECK(a[0] == TypeId{1});
  const TypeSet b{TypeId{1}, TypeId{2}};
  CHECK(set_union(a, b) == TypeSet{TypeId{1}, TypeId{2}, TypeId{3}});
  CHECK(set_intersection(a, b) == TypeSet{TypeId{1}});
  CHECK(set_difference(a, b) == TypeSet{TypeId{3}});
  CHECK(TypeSet{TypeId{1}}.is_subset_of(a));
  CHECK_FALSE(b.is_subset_of(a));
  const std::vector<TypeId> ground{TypeId{5}, TypeId{6}, TypeId{7}};
  CHECK(TypeSet::from_mask(ground, 0b101) == TypeSet{TypeId{5}, TypeId{7}});
  CHECK(a.with(TypeId{0}).size() == 3);
  CHECK(a.without(TypeId{3}) == TypeSet{TypeId{1}});
}
