#include <sstream>

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "fskit/cli.hpp"
#include "fskit/dynamics.hpp"
#include "fskit/errors.hpp"
#include "fskit/pl.hpp"
#include "fskit/presentation.hpp"
#include "fskit/probe.hpp"
#include "fskit/syntax.hpp"

namespace py = pybind11;
using namespace fskit;

namespace {

// A presentation of the supported class together with its parsed data.
struct PyClass {
  SkeinPresentation pres;
  RightVineClass cls;
};

PyClass load_class(const std::string &text) {
  auto p = parse_presentation(text);
  validate(p);
  return {p, require_class(p)};
}

py::tuple run_cli(const std::vector<std::string> &args) {
  std::ostringstream out, err;
  int code = run(args, out, err);
  return py::make_tuple(code, out.str(), err.str());
}

} // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Cantor-set dynamics of forest-skein groups";

  auto base = py::register_exception<Error>(m, "Error");
  py::register_exception<ParseError>(m, "ParseError", base.ptr());
  py::register_exception<ValidationError>(m, "ValidationError", base.ptr());
  py::register_exception<UnsupportedClass>(m, "UnsupportedClass", base.ptr());
  py::register_exception<UndefinedAt>(m, "UndefinedAt", base.ptr());
  py::register_exception<NotOrderPreserving>(m, "NotOrderPreserving", base.ptr());

  m.def("abelianize", [](const std::string &text) { return abelianisation(parse_presentation(text)).to_string(); },
        py::arg("text"));
  m.def("germ_presentation",
        [](const std::string &text, const std::string &end) {
          if (end != "first" && end != "last") throw ParseError("end must be 'first' or 'last'");
          return germ_presentation(parse_presentation(text), end == "first" ? End::First : End::Last).to_string();
        },
        py::arg("text"), py::arg("end") = "last");

  py::class_<Eppm>(m, "Map")
      .def("__str__", &Eppm::to_string)
      .def("__mul__", [](const Eppm &f, const Eppm &g) { return compose(f, g); })
      .def("__eq__", [](const Eppm &f, const Eppm &g) { return equals(f, g); })
      .def("inverse", [](const Eppm &f) { return invert(f); })
      .def("canonical", [](const Eppm &f) { return canonicalize(f); })
      .def("__call__", [](const Eppm &f, const std::string &p) {
        return evaluate(f, EvPeriodicWord::parse(p)).to_string();
      })
      .def("is_order_preserving", [](const Eppm &f) { return is_order_preserving(f); })
      .def("element_type", [](const Eppm &f) { return std::string(to_string(classify_element(f))); })
      .def("csv", [](const Eppm &f, int depth) { return emit_csv(to_interval_map(f, depth)); },
           py::arg("depth") = 12)
      .def("svg", [](const Eppm &f, int depth) { return emit_svg(to_interval_map(f, depth)); },
           py::arg("depth") = 12);

  py::class_<PyClass>(m, "Presentation")
      .def(py::init(&load_class), py::arg("text"))
      .def_property_readonly("L", [](const PyClass &c) { return c.cls.L; })
      .def_property_readonly("R", [](const PyClass &c) { return c.cls.R; })
      .def_property_readonly("M", [](const PyClass &c) { return c.cls.M; })
      .def_property_readonly("n", [](const PyClass &c) { return c.cls.n; })
      .def_property_readonly("leaves", [](const PyClass &c) { return c.cls.leaves; })
      .def("element", [](const PyClass &c, const std::string &e) { return evaluate_element(c.cls, parse_element(e)); })
      .def("good_words", [](const PyClass &c, int n) { return enumerate_good_words(c.cls, n); })
      .def("probe",
           [](const PyClass &c, int max_len, int jobs) {
             ProbeReport r;
             {
               py::gil_scoped_release nogil;
               r = probe(c.cls, max_len, jobs);
             }
             return r.to_json();
           },
           py::arg("max_len"), py::arg("jobs") = 1);

  m.def("run", &run_cli, py::arg("args"), "Run the command line tool in-process; returns (code, stdout, stderr).");
}
