#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "vrpdecomp/bench.hpp"
#include "vrpdecomp/dag.hpp"
#include "vrpdecomp/pricing.hpp"

namespace py = pybind11;
using namespace vrpdecomp;

namespace {

template <class E>
E parse_enum(const std::string& text, std::initializer_list<E> values) {
  for (E v : values) {
    if (to_string(v) == text) return v;
  }
  throw py::value_error("unknown option '" + text + "'");
}

Form form_of(const std::string& s) { return parse_enum(s, {Form::Dw, Form::Af}); }
PricerKind pricer_of(const std::string& s) {
  return parse_enum(s, {PricerKind::Labeling, PricerKind::Dag, PricerKind::Beam});
}
CutMode cuts_of(const std::string& s) { return parse_enum(s, {CutMode::None, CutMode::Src3}); }
StrengthenMode strengthen_of(const std::string& s) {
  return parse_enum(s, {StrengthenMode::None, StrengthenMode::Dssr, StrengthenMode::Ce});
}

SolveOptions options_from(const std::string& form, int ng, const std::string& pricer, const std::string& cuts,
                          const std::string& strengthen, double smoothing, double time_limit, int price_limit) {
  SolveOptions o;
  o.form = form_of(form);
  o.ng = ng;
  o.pricer = pricer_of(pricer);
  o.cuts = cuts_of(cuts);
  o.strengthen = strengthen_of(strengthen);
  o.smoothing = smoothing;
  o.time_limit = time_limit;
  o.price_limit = price_limit;
  return o;
}

py::dict stats_dict(const SolveStats& s) {
  py::dict d;
  d["lb"] = s.lb;
  d["certified"] = s.certified;
  d["budget_exhausted"] = s.budget_exhausted;
  d["overflow"] = s.overflow;
  d["iterations"] = s.iterations;
  d["variables"] = s.variables;
  d["rows"] = s.rows;
  d["routes_added"] = s.routes_added;
  d["recombination"] = s.recombination;
  d["cuts_added"] = s.cuts_added;
  d["lb_before_cuts"] = s.lb_before_cuts;
  d["rmp_seconds"] = s.rmp_seconds;
  d["pp_seconds"] = s.pp_seconds;
  d["total_seconds"] = s.total_seconds;
  d["strengthening_iterations"] = s.strengthening.iterations;
  d["eliminated"] = s.strengthening.eliminated;
  d["dag_delta"] = s.strengthening.dag_delta;
  d["bound_trace"] = s.strengthening.bound_trace;
  py::list trace;
  for (const auto& r : s.trace) trace.append(py::make_tuple(r.iteration, r.rmp, r.lagrangian, r.alpha, r.added));
  d["trace"] = trace;
  return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "DW and AF root bounds for the VRPTW";

  py::class_<Instance>(m, "Instance")
      .def_property_readonly("name", &Instance::name)
      .def_property_readonly("customers", &Instance::customers)
      .def_property_readonly("vehicles", &Instance::vehicles)
      .def_property_readonly("capacity", &Instance::capacity)
      .def("subset", &Instance::subset, py::arg("n"))
      .def("cost", [](const Instance& in, int i, int j) { return descale(in.cost(i, j)); })
      .def("to_solomon", &to_solomon)
      .def("__repr__", [](const Instance& in) {
        return "<Instance " + in.name() + " n=" + std::to_string(in.customers()) + ">";
      });

  m.def("builtin_example", &builtin_example);
  m.def("load_solomon", &load_solomon, py::arg("path"));
  m.def("parse_solomon", &parse_solomon_text, py::arg("text"));

  m.def("enumerate_routes", [](const Instance& in, int ng) {
    std::vector<std::vector<int>> out;
    for (const auto& r : enumerate_ng_routes(in, NgConfig(in, ng))) out.push_back(r.vertices);
    return out;
  }, py::arg("instance"), py::arg("ng"));

  m.def("dag_size", [](const Instance& in, int ng) {
    const Dag g = Dag::compile(in, NgConfig(in, ng), CutPool(in.customers()));
    return py::make_tuple(g.node_count(), g.arc_count());
  }, py::arg("instance"), py::arg("ng"));

  m.def("solve",
        [](const Instance& in, const std::string& form, int ng, const std::string& pricer, const std::string& cuts,
           const std::string& strengthen, double smoothing, double time_limit, int price_limit) {
          SolveStats s;
          {
            py::gil_scoped_release nogil;
            s = solve(in, options_from(form, ng, pricer, cuts, strengthen, smoothing, time_limit, price_limit));
          }
          return stats_dict(s);
        },
        py::arg("instance"), py::arg("form") = "dw", py::arg("ng") = 8, py::arg("pricer") = "labeling",
        py::arg("cuts") = "none", py::arg("strengthen") = "none", py::arg("smoothing") = -1.0,
        py::arg("time_limit") = std::numeric_limits<double>::infinity(), py::arg("price_limit") = 200);

  m.def("enumerate_full",
        [](const Instance& in, int ng, bool solve_masters) {
          EnumerationResult r;
          {
            py::gil_scoped_release nogil;
            r = enumerate_full(in, NgConfig(in, ng), solve_masters);
          }
          py::dict d;
          d["overflow"] = r.overflow;
          d["columns"] = r.columns;
          d["paths"] = r.paths;
          d["dag_nodes"] = r.dag_nodes;
          d["dag_arcs"] = r.dag_arcs;
          d["dw_lb"] = r.dw_lb;
          d["af_lb"] = r.af_lb;
          return d;
        },
        py::arg("instance"), py::arg("ng"), py::arg("solve_masters") = true);

  m.def("run_matrix",
        [](const std::vector<Instance>& instances, const std::vector<std::string>& forms, const std::vector<int>& ng,
           const std::vector<std::string>& cuts, const std::vector<std::string>& strengthen, bool timing, int threads) {
          MatrixSpec spec;
          spec.forms.clear();
          for (const auto& f : forms) spec.forms.push_back(form_of(f));
          spec.deltas = ng;
          spec.cuts.clear();
          for (const auto& c : cuts) spec.cuts.push_back(cuts_of(c));
          spec.strengthen.clear();
          for (const auto& s : strengthen) spec.strengthen.push_back(strengthen_of(s));
          spec.timing = timing;
          spec.threads = threads;
          MatrixReport rep;
          {
            py::gil_scoped_release nogil;
            rep = run_matrix(instances, spec);
          }
          return py::make_tuple(rep.tsv, rep.json, rep.all_completed);
        },
        py::arg("instances"), py::arg("forms") = std::vector<std::string>{"dw", "af"},
        py::arg("ng") = std::vector<int>{6}, py::arg("cuts") = std::vector<std::string>{"none"},
        py::arg("strengthen") = std::vector<std::string>{"none"}, py::arg("timing") = true, py::arg("threads") = 0);

  m.def("geo_mean", &geo_mean);
}
