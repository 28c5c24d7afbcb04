#include "doctest.h"
#include "helpers.hpp"
#include "smp/experiments.hpp"
#include "smp/serialize.hpp"

using namespace smp;

namespace {

const Metric& metric(const Report& r, const std::string& name) {
  for (const auto& m : r.metrics) {
    if (m.name == name) return m;
  }
  FAIL("missing metric " << name);
  throw 0;
}

}  // namespace

TEST_CASE("quantities") {
  CHECK(parse_quantity("best-na") == Quantity::best_na);
  CHECK(std::string(to_string(Quantity::greedy)) == "greedy");
  CHECK_THROWS_AS(parse_quantity("median"), ValidationError);
}

TEST_CASE("submodular gap") {
  const Report r = run_gap_submodular(Number::parse("0.01"), ExperimentOptions{}, 1.9);
  CHECK(r.all_pass());
  CHECK(metric(r, "depth").value == 917);
  CHECK(metric(r, "ratio").value >= 1.9);
  CHECK(metric(r, "adap(0)").value == doctest::Approx(testing::column_adap(0.01, 917)));
  CHECK(metric(r, "alg_opt(0)").value == doctest::Approx(testing::column_alg(0.01, 917)));

  const Report half = run_gap_submodular(Number::parse("1/2"), ExperimentOptions{});
  CHECK(metric(half, "adap(0)").exact == std::string("41/32"));
  CHECK(metric(half, "alg_opt(0)").exact == std::string("15/16"));
  CHECK_FALSE(run_gap_submodular(Number::parse("1/2"), ExperimentOptions{}, 1.5).all_pass());
}

TEST_CASE("k-extendible gap") {
  const Report r = run_gap_kext(3, std::nullopt, std::nullopt, ExperimentOptions{});
  CHECK(r.all_pass());
  CHECK(metric(r, "non-adaptive bound 1+kp").exact == std::string("10/9"));
  CHECK(metric(r, "adaptive formula k(1-(1-p)^w)").value ==
        doctest::Approx(3 * (1 - std::pow(1 - 1.0 / 27, 81))));
  CHECK(metric(r, "ratio").value >= 2.5);

  const Report small = run_gap_kext(2, 2u, Number::parse("1/2"), ExperimentOptions{}, 0.0);
  CHECK(metric(small, "adap_exact(level tree)").value == doctest::Approx(2 * (1 - 0.25)));
  CHECK(metric(small, "best_nonadaptive_exact").value <= 2.0 + 1e-9);
}

TEST_CASE("encoding experiment") {
  EncodingCheckOptions eo;
  eo.sample_sets = 200;
  const Report r = run_gap_matroid_encoding(2, ExperimentOptions{}, eo);
  CHECK(r.all_pass());
  CHECK(r.details.at("encoding_counts").at("pairs") == 15);
  CHECK_THROWS_AS(run_gap_matroid_encoding(4, ExperimentOptions{}, eo), ValidationError);
}

TEST_CASE("reports are reproducible without timings") {
  ExperimentOptions mc;
  mc.mode = EvalMode::monte_carlo;
  mc.trials = 2000;
  mc.seed = 5;
  const Report a = run_gap_submodular(Number::parse("0.1"), mc);
  const Report b = run_gap_submodular(Number::parse("0.1"), mc);
  CHECK(serialize_report(a, false) == serialize_report(b, false));
  const Report s1 = run_verify_suite(3, 10);
  const Report s2 = run_verify_suite(3, 10);
  CHECK(serialize_report(s1, false) == serialize_report(s2, false));
}

TEST_CASE("eval and mc-estimate") {
  const InstanceBundle b = gen_submodular_lb(Number::parse("1/2"));
  ExperimentOptions o;
  o.rational = true;
  CHECK(metric(run_eval(b, Quantity::adap, o), "adap").exact == std::string("41/32"));
  CHECK(metric(run_eval(b, Quantity::best_na, o), "best-na").exact == std::string("15/16"));
  ExperimentOptions mc;
  mc.mode = EvalMode::monte_carlo;
  mc.trials = 20000;
  mc.seed = 2;
  CHECK(run_mc_estimate(b, Quantity::adap, mc).all_pass());
}

TEST_CASE("weighted reduction experiment") {
  const InstanceBundle b = random_kext_instance(2, 6, 256);
  const Report r = run_reduce_weighted(b, 2, ExperimentOptions{});
  CHECK(r.all_pass());
  CHECK(metric(r, "bucket_width").value == 2);
  CHECK(r.details.contains("buckets"));
}

TEST_CASE("suites") {
  const Report r = run_verify_suite(11, 20);
  CHECK(r.all_pass());
  const auto& suites = r.details.at("suites");
  for (const char* name : {"submodular_gap", "decomposition", "kext_adap_vs_greedy", "extension_witness",
                           "reduction_claim", "valuation_submodular"}) {
    CAPTURE(name);
    REQUIRE(suites.contains(name));
    CHECK(suites.at(name).at("failed") == 0);
    CHECK(suites.at(name).at("checked") > 0);
  }
}

TEST_CASE("random extension tuples are valid") {
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    const ExtensionTuple t = random_extension_tuple(seed);
    CHECK(t.a.is_subset_of(t.b));
    CHECK(t.family->is_independent(t.b));
    CHECK(t.family->is_independent(set_union(t.a, t.e)));
    CHECK(set_intersection(t.e, t.b).empty());
  }
}
