#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "smp/experiments.hpp"
#include "smp/reduction.hpp"
#include "smp/serialize.hpp"

namespace py = pybind11;
using namespace smp;

namespace {

py::object to_python(const nlohmann::json& j) { return py::module_::import("json").attr("loads")(j.dump()); }

py::object report(const Report& r) { return to_python(report_to_json(r)); }

ExperimentOptions make_options(const std::string& mode, bool rational, std::uint64_t trials, std::uint64_t seed,
                               unsigned threads, double tolerance) {
  ExperimentOptions o;
  if (mode == "exact") {
    o.mode = EvalMode::exact;
  } else if (mode == "mc") {
    o.mode = EvalMode::monte_carlo;
  } else {
    throw ValidationError("mode must be 'exact' or 'mc'");
  }
  o.rational = rational;
  o.trials = trials;
  o.seed = seed;
  o.threads = threads;
  o.tolerance = tolerance;
  return o;
}

#define SMP_OPTION_ARGS                                                                                  \
  py::arg("mode") = "exact", py::arg("rational") = false, py::arg("trials") = 10000, py::arg("seed") = 0, \
  py::arg("threads") = 1, py::arg("tolerance") = 1e-9

}  // namespace

PYBIND11_MODULE(smplab, m) {
  m.doc() = "Stochastic multi-value probing laboratory";

  auto base = py::register_exception<Error>(m, "SmpError", PyExc_RuntimeError);
  py::register_exception<ValidationError>(m, "ValidationError", PyExc_ValueError);
  py::register_exception<ParseError>(m, "ParseError", PyExc_ValueError);
  py::register_exception<ExactInfeasibleError>(m, "ExactInfeasibleError", base.ptr());
  py::register_exception<CapExceededError>(m, "CapExceededError", base.ptr());

  py::class_<InstanceBundle>(m, "Instance")
      .def_readonly("construction", &InstanceBundle::construction)
      .def_readonly("parameters", &InstanceBundle::parameters)
      .def_property_readonly("element_count", [](const InstanceBundle& b) { return b.universe->element_count(); })
      .def_property_readonly("type_count", [](const InstanceBundle& b) { return b.universe->type_count(); })
      .def_property_readonly("has_tree", [](const InstanceBundle& b) { return b.tree.has_value(); })
      .def("to_json", [](const InstanceBundle& b) { return serialize_instance(b); })
      .def("to_dict", [](const InstanceBundle& b) { return to_python(instance_to_json(b)); })
      .def("save", [](const InstanceBundle& b, const std::string& path) { save_instance(b, path); }, py::arg("path"))
      .def("__repr__", [](const InstanceBundle& b) {
        return "<smplab.Instance " + b.construction + " with " + std::to_string(b.universe->element_count()) +
               " elements>";
      });

  m.def("parse_instance", &parse_instance, py::arg("text"));
  m.def("load_instance", &load_instance, py::arg("path"));

  m.def(
      "submodular_lb", [](const std::string& eps) { return gen_submodular_lb(Number::parse(eps)); }, py::arg("eps"));
  m.def(
      "tree_lb",
      [](std::uint32_t k, std::uint32_t w, const std::string& p) { return gen_tree_lb(k, w, Number::parse(p)); },
      py::arg("k"), py::arg("w"), py::arg("p"));
  m.def(
      "prime_encoding", [](std::uint32_t k) { return gen_prime_matroid_encoding(k).bundle; }, py::arg("k"));
  m.def(
      "random_instance", [](std::uint64_t seed) { return gen_random_instance(RandomInstanceParams{}, seed); },
      py::arg("seed"));
  m.def("random_kext_instance", &random_kext_instance, py::arg("k"), py::arg("seed"), py::arg("max_weight") = 1);

  m.def(
      "submodular_lb_depth", [](const std::string& eps) { return submodular_lb_depth(Number::parse(eps)); },
      py::arg("eps"));
  m.def("weight_class", &weight_class, py::arg("w"));
  m.def("bucket_width", &bucket_width, py::arg("k"));

  m.def(
      "evaluate",
      [](const InstanceBundle& b, const std::string& quantity, const std::string& mode, bool rational,
         std::uint64_t trials, std::uint64_t seed, unsigned threads, double tolerance) {
        const ExperimentOptions o = make_options(mode, rational, trials, seed, threads, tolerance);
        return report(run_eval(b, parse_quantity(quantity), o));
      },
      py::arg("instance"), py::arg("quantity"), SMP_OPTION_ARGS);
  m.def(
      "mc_estimate",
      [](const InstanceBundle& b, const std::string& quantity, std::uint64_t trials, std::uint64_t seed,
         unsigned threads, double tolerance) {
        const ExperimentOptions o = make_options("mc", false, trials, seed, threads, tolerance);
        return report(run_mc_estimate(b, parse_quantity(quantity), o));
      },
      py::arg("instance"), py::arg("quantity"), py::arg("trials") = 10000, py::arg("seed") = 0,
      py::arg("threads") = 1, py::arg("tolerance") = 1e-9);

  m.def(
      "gap_submodular",
      [](const std::string& eps, std::optional<double> min_ratio, const std::string& mode, bool rational,
         std::uint64_t trials, std::uint64_t seed, unsigned threads, double tolerance) {
        return report(run_gap_submodular(Number::parse(eps),
                                         make_options(mode, rational, trials, seed, threads, tolerance), min_ratio));
      },
      py::arg("eps"), py::arg("min_ratio") = py::none(), SMP_OPTION_ARGS);
  m.def(
      "gap_kext",
      [](std::uint32_t k, std::optional<std::uint32_t> w, std::optional<std::string> p,
         std::optional<double> min_ratio, const std::string& mode, bool rational, std::uint64_t trials,
         std::uint64_t seed, unsigned threads, double tolerance) {
        std::optional<Number> pn;
        if (p) pn = Number::parse(*p);
        return report(
            run_gap_kext(k, w, pn, make_options(mode, rational, trials, seed, threads, tolerance), min_ratio));
      },
      py::arg("k"), py::arg("w") = py::none(), py::arg("p") = py::none(), py::arg("min_ratio") = py::none(),
      SMP_OPTION_ARGS);
  m.def(
      "gap_matroid_encoding",
      [](std::uint32_t k, std::uint64_t samples, std::uint64_t seed) {
        EncodingCheckOptions eo;
        eo.sample_sets = samples;
        eo.seed = seed == 0 ? 1 : seed;
        ExperimentOptions o;
        o.seed = seed;
        return report(run_gap_matroid_encoding(k, o, eo));
      },
      py::arg("k"), py::arg("samples") = 10000, py::arg("seed") = 0);
  m.def(
      "reduce_weighted",
      [](const InstanceBundle& b, int k) { return report(run_reduce_weighted(b, k, ExperimentOptions{})); },
      py::arg("instance"), py::arg("k") = 0);
  m.def(
      "verify_suite",
      [](std::uint64_t seed, std::uint64_t cases, double tolerance) {
        return report(run_verify_suite(seed, cases, tolerance));
      },
      py::arg("seed") = 0, py::arg("cases") = 100, py::arg("tolerance") = 1e-9);
}
