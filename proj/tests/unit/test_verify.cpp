#include "doctest.h"
#include "helpers.hpp"
#include "smp/instances.hpp"
#include "smp/verify.hpp"

using namespace smp;

namespace {

TypeId T(std::uint32_t v) { return TypeId{v}; }
ElementId E(std::uint32_t v) { return ElementId{v}; }

const TypeSet kPair{T(0), T(1)};

Valuation pair_table(const char* a, const char* b, const char* ab) {
  return table_valuation({{TypeSet{}, Number(0)},
                          {TypeSet{T(0)}, Number::parse(a)},
                          {TypeSet{T(1)}, Number::parse(b)},
                          {kPair, Number::parse(ab)}});
}

}  // namespace

TEST_CASE("submodularity") {
  CHECK(check_submodular(*pair_table("1", "1", "1"), kPair).ok);
  const CheckResult r = check_submodular(*pair_table("0", "0", "1"), kPair);
  CHECK_FALSE(r.ok);
  REQUIRE(r.witness.size() == 2);
  CHECK(set_union(r.witness[0], r.witness[1]) == kPair);
  CHECK(set_intersection(r.witness[0], r.witness[1]).empty());
  std::vector<TypeId> many;
  for (std::uint32_t t = 0; t < 13; ++t) many.push_back(T(t));
  CHECK_THROWS_AS(check_submodular(*coverage_valuation({}), TypeSet(many)), ValidationError);
}

TEST_CASE("monotonicity") {
  CHECK(check_monotone(*pair_table("1", "1/2", "1"), kPair).ok);
  const CheckResult r = check_monotone(*pair_table("1", "0", "1/2"), kPair);
  CHECK_FALSE(r.ok);
  REQUIRE(r.witness.size() == 2);
  CHECK(r.witness[0] == TypeSet{T(0)});
  CHECK(r.witness[1] == kPair);
}

TEST_CASE("downward closure") {
  CHECK(check_downward_closed(*make_uniform_matroid(kPair, 1), kPair).ok);
  const Family holes = make_table_family(kPair, {TypeSet{}, kPair});
  const CheckResult r = check_downward_closed(*holes, kPair);
  CHECK_FALSE(r.ok);
  REQUIRE(r.witness.size() == 2);
  CHECK(r.witness[0] == kPair);
  CHECK(r.witness[1].size() == 1);
  const Family no_empty = make_table_family(kPair, {TypeSet{T(0)}});
  CHECK_FALSE(check_downward_closed(*no_empty, kPair).ok);
}

TEST_CASE("prefix closure") {
  const auto u = testing::bernoulli_universe({"a", "b", "c"});
  CHECK(check_prefix_closed(*constraint_cardinality(2), *u, 3).ok);
  const CheckResult r = check_prefix_closed(*constraint_table({{E(0), E(1)}}), *u, 3);
  CHECK_FALSE(r.ok);
  CHECK(r.sequence == std::vector<ElementId>{E(0), E(1)});
  CHECK_THROWS_AS(check_prefix_closed(*constraint_cardinality(3), *u, 3, 5), CapExceededError);
}

TEST_CASE("k-extendibility") {
  // Path a-b-c-d: ab, bc, cd.
  const Family path = make_matching_family({{T(0), {0, 1}}, {T(1), {1, 2}}, {T(2), {2, 3}}});
  const TypeSet ground{T(0), T(1), T(2)};
  CHECK(check_k_extendible(*path, ground, 2).ok);
  const CheckResult r = check_k_extendible(*path, ground, 1);
  CHECK_FALSE(r.ok);
  CHECK(r.element == T(1));
  REQUIRE(r.witness.size() == 2);
  CHECK(r.witness[1] == TypeSet{T(0), T(2)});
  const Family matroid = make_uniform_matroid(TypeSet{T(0), T(1), T(2), T(3)}, 2);
  CHECK(check_k_extendible(*matroid, matroid->ground(), 1).ok);
}

TEST_CASE("extension witness") {
  const Family path = make_matching_family({{T(0), {0, 1}}, {T(1), {1, 2}}, {T(2), {2, 3}}});
  SUBCASE("empty extension needs no removal") {
    const ExtensionWitness w = find_extension_witness(*path, 2, TypeSet{}, TypeSet{T(0)}, TypeSet{});
    CHECK(w.found);
    CHECK(w.z.empty());
  }
  SUBCASE("middle edge of a path") {
    const TypeSet b{T(0), T(2)};
    const ExtensionWitness w = find_extension_witness(*path, 2, TypeSet{}, b, TypeSet{T(1)});
    REQUIRE(w.found);
    CHECK(w.z == b);
    CHECK(path->is_independent(set_difference(b, w.z).with(T(1))));
  }
  SUBCASE("matroid extension removes at most |E|") {
    const Family m = make_uniform_matroid(TypeSet{T(0), T(1), T(2), T(3)}, 2);
    const TypeSet a{T(0)};
    const TypeSet b{T(0), T(1)};
    const TypeSet e{T(2)};
    const ExtensionWitness w = find_extension_witness(*m, 1, a, b, e);
    REQUIRE(w.found);
    CHECK(w.z == TypeSet{T(1)});
    CHECK(w.z.is_subset_of(set_difference(b, a)));
  }
  SUBCASE("too small a k is reported") {
    const ExtensionWitness w = find_extension_witness(*path, 1, TypeSet{}, TypeSet{T(0), T(2)}, TypeSet{T(1)});
    CHECK_FALSE(w.found);
    CHECK_FALSE(w.message.empty());
  }
  SUBCASE("preconditions") {
    CHECK_THROWS_AS(find_extension_witness(*path, 2, TypeSet{T(1)}, TypeSet{T(0)}, TypeSet{}), ValidationError);
    CHECK_THROWS_AS(find_extension_witness(*path, 2, TypeSet{}, TypeSet{T(0), T(1)}, TypeSet{}), ValidationError);
    CHECK_THROWS_AS(find_extension_witness(*path, 2, TypeSet{T(0)}, TypeSet{T(0)}, TypeSet{T(1)}), ValidationError);
  }
}

TEST_CASE("encoding check") {
  const PrimeEncoding enc = gen_prime_matroid_encoding(2);
  const CheckResult ok = check_encoding(enc);
  CHECK(ok.ok);
  CHECK(ok.counts.at("pairs") == 15);
  const PerfectTree tree(2, 2);
  std::vector<TypeId> edges;
  for (std::uint32_t v = 1; v < tree.vertex_count(); ++v) edges.push_back(enc.bundle.universe->first_type(E(v - 1)));
  const std::vector<Family> partial(enc.matroids.begin(), enc.matroids.begin() + 1);
  const CheckResult bad = check_encoding(partial, tree, edges);
  CHECK_FALSE(bad.ok);
  CHECK_FALSE(bad.witness.empty());
  CHECK_THROWS_AS(check_encoding(enc.matroids, tree, std::span<const TypeId>(edges).first(3)), ValidationError);
}
