#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "fplab/constructions.hpp"
#include "fplab/covering.hpp"
#include "fplab/experiments.hpp"
#include "fplab/set_io.hpp"
#include "fplab/structure.hpp"

namespace py = pybind11;
using namespace fplab;

namespace {

// Value wrapper around the shared immutable context (pybind holders do not
// accept shared_ptr-to-const).
struct Field {
  FieldRef ref;
};

std::vector<std::complex<double>> values_of(const GridFunction& f) {
  return {f.values().begin(), f.values().end()};
}

GridFunction grid_from_values(const Field& f, std::vector<std::complex<double>> vals) {
  return GridFunction(f.ref, std::move(vals));
}

py::dict covering_dict(const CoveringResult& r) {
  py::dict d;
  d["translates"] = r.translates.elements();
  d["popular_diff"] = r.popular_diff.elements();
  d["eps"] = r.eps;
  d["kappa"] = r.kappa;
  d["size_cap"] = r.size_cap;
  d["max_pairwise"] = r.max_pairwise;
  d["coverage"] = r.certified.coverage;
  d["size_ok"] = r.certified.size_bound;
  d["pairwise_ok"] = r.certified.pairwise;
  return d;
}

py::dict extraction_dict(const ExtractionResult& r) {
  py::dict d;
  d["shifts"] = r.shifts.elements();
  d["exceptional"] = r.exceptional.elements();
  d["containment"] = r.containment;
  d["doubling"] = r.doubling;
  d["k_ratio"] = r.k_ratio;
  d["independent_count"] = r.independent_count;
  d["growth_sum"] = r.growth_sum;
  d["yt_size"] = r.yt_size;
  return d;
}

RepMode parse_mode(const std::string& mode) {
  if (mode == "sum") return RepMode::Sum;
  if (mode == "difference") return RepMode::Difference;
  throw std::invalid_argument("mode must be 'sum' or 'difference'");
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Prime-field set algebra, spectral analysis, and covering algorithms.";

  py::register_exception<PrecisionError>(m, "PrecisionError");

  py::class_<Field>(m, "FieldContext")
      .def_property_readonly("p", [](const Field& f) { return f.ref->prime(); })
      .def_property_readonly("unit_group_order",
                             [](const Field& f) { return f.ref->unit_group_order(); })
      .def("__repr__", [](const Field& f) {
        return "FieldContext(p=" + std::to_string(f.ref->prime()) + ")";
      });
  m.def("make_field", [](std::uint64_t p) { return Field{make_field(p)}; }, py::arg("p"));

  py::class_<FpSet>(m, "FpSet")
      .def(py::init([](const Field& ctx, const std::vector<std::uint64_t>& xs) {
             return FpSet::from_elements(ctx.ref, xs);
           }),
           py::arg("ctx"), py::arg("elements") = std::vector<std::uint64_t>{})
      .def_property_readonly("p", &FpSet::prime)
      .def("__len__", &FpSet::size)
      .def("__contains__", &FpSet::contains)
      .def("elements", &FpSet::elements)
      .def("density", &FpSet::density)
      .def("complement", &FpSet::complement)
      .def("negated", &FpSet::negated)
      .def("shifted", &FpSet::shifted)
      .def("__and__", [](const FpSet& a, const FpSet& b) { return a & b; })
      .def("__or__", [](const FpSet& a, const FpSet& b) { return a | b; })
      .def("__eq__", [](const FpSet& a, const FpSet& b) { return a == b; })
      .def("__repr__", [](const FpSet& s) {
        return "FpSet(p=" + std::to_string(s.prime()) + ", card=" + std::to_string(s.size()) + ")";
      });

  m.def("full_set", [](const Field& ctx) { return FpSet::full(ctx.ref); });
  m.def("sumset", &sumset);
  m.def("inverse_set", &inverse_set);
  m.def("pow_map", &pow_map);
  m.def("root_set", &root_set);
  m.def("iterated_sumset",
        [](const std::vector<std::uint64_t>& coeffs, const std::vector<FpSet>& sets) {
          return iterated_sumset(coeffs, sets);
        });
  m.def("rep_profile",
        [](const FpSet& a, const FpSet& b, const std::string& mode) {
          return rep_profile(a, b, parse_mode(mode)).values;
        },
        py::arg("a"), py::arg("b"), py::arg("mode") = "difference");
  m.def("popular_sumset",
        [](const FpSet& a, const FpSet& b, double eps, const std::string& mode) {
          return popular_sumset(a, b, eps, parse_mode(mode));
        },
        py::arg("a"), py::arg("b"), py::arg("eps"), py::arg("mode") = "difference");

  m.def("dft", [](const Field& ctx, std::vector<std::complex<double>> vals) {
    return dft(grid_from_values(ctx, std::move(vals))).coeffs;
  });
  m.def("dft_indicator", [](const FpSet& a) { return dft(GridFunction::indicator(a)).coeffs; });
  m.def("wiener_norm", [](const FpSet& a) { return wiener_norm(a); });
  m.def("parseval_defect", [](const Field& ctx, std::vector<std::complex<double>> vals) {
    return parseval_defect(grid_from_values(ctx, std::move(vals)));
  });
  m.def("convolve_sets", [](const FpSet& a, const FpSet& b) {
    return values_of(convolve(GridFunction::indicator(a), GridFunction::indicator(b)));
  });

  m.def("additive_distance", [](const FpSet& a, const FpSet& b) {
    DistanceReport d = additive_distance(GridFunction::indicator(a), GridFunction::indicator(b));
    py::dict out;
    out["rho"] = d.rho;
    out["rho_star"] = d.rho_star;
    out["argmax_point"] = d.argmax_point;
    return out;
  });
  m.def("aip_defect",
        [](const std::vector<FpSet>& sets, const std::vector<std::int64_t>& exponents) {
          ExponentTuple t = classify_exponent_tuple(exponents, *sets.front().context());
          AipResult r = aip_defect(sets, t);
          py::dict out;
          out["intersection"] = r.intersection.elements();
          out["predicted"] = r.predicted;
          out["defect"] = r.defect;
          return out;
        });
  m.def("entropy", &entropy);

  m.def("ruzsa_cover", &ruzsa_cover);
  m.def("popular_cover",
        [](const FpSet& p_set, double eps) { return covering_dict(popular_cover(p_set, eps)); });
  m.def("popular_difference_set", &popular_difference_set);
  m.def("structure_extract",
        [](const FpSet& y, const FpSet& t, const FpSet& p_set, double eta_floor, double omega_x) {
          return extraction_dict(structure_extract(y, t, p_set, eta_floor, omega_x));
        });

  m.def("arithmetic_progression",
        [](const Field& ctx, std::uint64_t start, std::uint64_t step, std::uint64_t len) {
          return arithmetic_progression(ctx.ref, start, step, len);
        });
  m.def("random_subset", [](const Field& ctx, double density, std::uint64_t seed) {
    return random_subset(ctx.ref, density, seed);
  });
  m.def("quadratic_residues", [](const Field& ctx) { return quadratic_residues(ctx.ref); });
  m.def("gowers_set", &gowers_set);
  m.def("singer_difference_set",
        [](const Field& ctx, std::uint64_t q) { return singer_difference_set(ctx.ref, q); });
  m.def("coprimality_counterexample", [](const Field& ctx, double omega, double omega1) {
    return coprimality_counterexample(ctx.ref, omega, omega1);
  });
  m.def("conjecture_instance", [](const Field& ctx, const FpSet& p_set, const FpSet& q_set) {
    ConjectureInstance inst = conjecture_instance(ctx.ref, p_set, q_set);
    py::dict out;
    out["a"] = inst.a.elements();
    out["stats_defined"] = inst.stats_defined;
    out["k_measured"] = inst.k_measured;
    out["independence_ratio"] = inst.independence_ratio;
    out["sum_bound"] = inst.sum_bound;
    out["containment"] = inst.containment;
    return out;
  });

  m.def("to_fpset_text", &to_fpset_text);
  m.def("from_fpset_text", [](const std::string& text) { return from_fpset_text(text); });

  m.def("run_experiment_json", [](const std::string& config_json) {
    Json j = Json::parse(config_json);
    ExperimentConfig cfg;
    cfg.experiment = j.at("experiment").get<std::string>();
    if (j.contains("p_list")) cfg.p_list = j["p_list"].get<std::vector<std::uint64_t>>();
    if (j.contains("densities")) cfg.densities = j["densities"].get<std::vector<double>>();
    if (j.contains("exponents")) cfg.exponents = j["exponents"].get<std::vector<std::int64_t>>();
    if (j.contains("trials")) cfg.trials = j["trials"].get<std::uint64_t>();
    if (j.contains("seed")) cfg.seed = j["seed"].get<std::uint64_t>();
    if (j.contains("slack")) cfg.slack = j["slack"].get<double>();
    if (j.contains("threads")) cfg.threads = j["threads"].get<unsigned>();
    return report_to_json(run_experiment(cfg));
  });
}
