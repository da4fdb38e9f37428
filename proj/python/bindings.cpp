// Python bindings. Everything is addressed by carrier label; function values
// are exact and cross the boundary as fractions.Fraction pairs (re, im).

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <string>
#include <vector>

#include "relconv/convolution.hpp"
#include "relconv/definition_file.hpp"
#include "relconv/generators.hpp"
#include "relconv/haar.hpp"
#include "relconv/properties.hpp"
#include "relconv/reduction.hpp"
#include "relconv/representation.hpp"

namespace py = pybind11;
using namespace relconv;

namespace {

py::object fraction(const Rational& r) {
  static py::object cls = py::module_::import("fractions").attr("Fraction");
  return cls(py::str(to_string(r)));
}

Rational rational(const py::handle& v) {
  static py::object cls = py::module_::import("fractions").attr("Fraction");
  return parse_fraction(py::str(cls(v)).cast<std::string>());
}

Complex complex_value(const py::handle& v) {
  if (py::isinstance<py::tuple>(v) || py::isinstance<py::list>(v)) {
    const py::sequence s = py::reinterpret_borrow<py::sequence>(v);
    if (s.size() != 2) throw Error("a complex value is a pair (re, im)");
    return {rational(s[0]), rational(s[1])};
  }
  if (PyComplex_Check(v.ptr())) {
    return {rational(py::float_(PyComplex_RealAsDouble(v.ptr()))), rational(py::float_(PyComplex_ImagAsDouble(v.ptr())))};
  }
  return rational(v);
}

const RelationalHaarSystem& haar_of(const Definition& d) {
  if (!d.haar) throw Error("the definition has no \"haar\" section");
  return *d.haar;
}

// A function is a name from the file's "functions" section or a dict
// {label: value}; unlisted labels are zero.
AlgebraElement function_arg(const Definition& d, const py::handle& f) {
  if (py::isinstance<py::str>(f)) {
    const std::string name = f.cast<std::string>();
    const AlgebraElement* e = d.function(name);
    if (!e) throw Error("unknown function \"" + name + "\"");
    return *e;
  }
  AlgebraElement out(d.carrier().size());
  for (const auto& [k, v] : py::reinterpret_borrow<py::dict>(f)) {
    out[d.carrier().index_of(k.cast<std::string>())] = complex_value(v);
  }
  return out;
}

py::dict function_dict(const Definition& d, const AlgebraElement& f) {
  py::dict out;
  for (Index x : f.support()) out[py::str(d.carrier().label(x))] = py::make_tuple(fraction(f[x].re), fraction(f[x].im));
  return out;
}

py::dict entry(const std::string& id, bool passed, const std::string& description, const std::string& witness) {
  py::dict e;
  e["id"] = id;
  e["passed"] = passed;
  e["description"] = description;
  e["witness"] = passed ? py::object(py::none()) : py::object(py::str(witness));
  return e;
}

py::list axioms(const Definition& d) {
  py::list out;
  for (const auto& e : check_axioms(d.structure).entries) out.append(entry(e.id, e.passed, e.description, e.witness));
  return out;
}

py::dict reduce(const Definition& d) {
  const QuotientData qd = quotient_groupoid(d.structure);
  const FiniteSet& G = d.carrier();
  const GroupoidTable& Q = qd.quotient;
  const FiniteSet& Qm = Q.morphisms();
  py::dict out;
  py::list constraint;
  for (Index x : d.structure.constraint_elements()) constraint.append(G.label(x));
  out["constraint"] = constraint;
  py::dict classes;
  for (Index a = 0; a < qd.classes.size(); ++a) {
    py::list members;
    for (Index x : qd.classes[a]) members.append(G.label(x));
    classes[py::str(Qm.label(a))] = members;
  }
  out["classes"] = classes;
  py::list objects;
  for (Index x = 0; x < Q.objects().size(); ++x) objects.append(Q.objects().label(x));
  out["objects"] = objects;
  py::dict morphisms, mult;
  for (Index a = 0; a < Q.size(); ++a) {
    py::dict m;
    m["source"] = Q.objects().label(Q.source(a));
    m["target"] = Q.objects().label(Q.target(a));
    m["inverse"] = Qm.label(Q.inverse(a));
    morphisms[py::str(Qm.label(a))] = m;
    for (Index b = 0; b < Q.size(); ++b) {
      if (auto c = Q.compose(a, b)) mult[py::make_tuple(Qm.label(a), Qm.label(b))] = Qm.label(*c);
    }
  }
  out["morphisms"] = morphisms;
  out["multiplication"] = mult;
  return out;
}

py::list haar_checks(const Definition& d) {
  const QuotientData qd = quotient_groupoid(d.structure);
  py::list out;
  for (const auto& e : check_relational_haar(d.structure, qd, haar_of(d)).entries) {
    out.append(entry(e.id, e.passed, e.description, e.witness));
  }
  return out;
}

py::dict classify(const Definition& d) {
  const QuotientData qd = quotient_groupoid(d.structure);
  const RelationalHaarSystem& mu = haar_of(d);
  auto item = [](bool holds, const std::string& witness) {
    py::dict e;
    e["holds"] = holds;
    e["witness"] = holds ? py::object(py::none()) : py::object(py::str(witness));
    return e;
  };
  const Classification inv = is_l2_invariant(d.structure, mu);
  const SplitResult split = is_split(d.structure, qd, mu);
  const StrongSplitResult strong = is_strongly_split(d.structure, qd, mu);
  py::dict out;
  out["l2_invariant"] = item(inv.holds, inv.witness);
  out["split"] = item(split.holds, split.witness);
  out["strongly_split"] = item(strong.holds, strong.witness);
  return out;
}

py::dict associativity(const Definition& d) {
  const AssociativityCheck a = check_associativity(d.structure, haar_of(d));
  py::dict out;
  out["holds"] = a.holds;
  if (a.holds) {
    out["witness"] = py::none();
    return out;
  }
  const auto& w = *a.witness;
  const FiniteSet& G = d.carrier();
  out["witness"] = py::make_tuple(G.label(w[0]), G.label(w[1]), G.label(w[2]));
  out["left"] = function_dict(d, a.left);
  out["right"] = function_dict(d, a.right);
  return out;
}

double norm(const Definition& d, const py::handle& f) {
  const QuotientData qd = quotient_groupoid(d.structure);
  const AlgebraElement reduced = push_invariant(d.structure, qd, function_arg(d, f));
  const RightHaarSystem nu = induced_quotient_haar(qd, haar_of(d));
  const HaarCheck hc = check_right_haar(qd.quotient, nu);
  if (!hc.holds) throw MeasureError("induced quotient measures are not a right Haar system: " + hc.detail);
  return reduced_norm(qd.quotient, nu, reduced);
}

Definition corpus_definition(const std::string& name) {
  for (const auto& e : standard_corpus()) {
    if (e.name == name) return definition_from(e);
  }
  throw Error("no corpus entry \"" + name + "\"");
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Finite relational groupoids, their reductions and convolution algebras.";

  auto error = py::register_exception<Error>(m, "Error", PyExc_RuntimeError);
  py::register_exception<ParseError>(m, "ParseError", error);
  py::register_exception<NotInvariant>(m, "NotInvariant", error);
  py::register_exception<QuotientError>(m, "QuotientError", error);
  py::register_exception<LabelError>(m, "LabelError", error);

  py::class_<Definition>(m, "Definition")
      .def_static("parse", [](const std::string& text) { return parse_definition(text); }, py::arg("text"))
      .def_static("load", [](const std::string& path) { return load_definition(path); }, py::arg("path"))
      .def_property_readonly("carrier", [](const Definition& d) { return d.carrier().labels(); })
      .def_property_readonly("has_haar", [](const Definition& d) { return d.haar.has_value(); })
      .def_property_readonly("function_names",
                             [](const Definition& d) {
                               std::vector<std::string> names;
                               for (const auto& [n, f] : d.functions) names.push_back(n);
                               return names;
                             })
      .def("function", [](const Definition& d, const py::handle& f) { return function_dict(d, function_arg(d, f)); })
      .def("serialize", [](const Definition& d) { return serialize(d); })
      .def("__repr__", [](const Definition& d) {
        return "<Definition carrier=" + std::to_string(d.carrier().size()) + (d.haar ? " haar" : "") + ">";
      });

  m.def("corpus_names", [] {
    std::vector<std::string> names;
    for (const auto& e : standard_corpus()) names.push_back(e.name);
    return names;
  });
  m.def("corpus", &corpus_definition, py::arg("name"));

  m.def("check_axioms", &axioms, py::arg("definition"));
  m.def("reduce", &reduce, py::arg("definition"));
  m.def("check_haar", &haar_checks, py::arg("definition"));
  m.def("classify", &classify, py::arg("definition"));
  m.def(
      "convolve",
      [](const Definition& d, const py::handle& f, const py::handle& g) {
        return function_dict(d, convolve(d.structure, haar_of(d), function_arg(d, f), function_arg(d, g)));
      },
      py::arg("definition"), py::arg("f"), py::arg("g"));
  m.def(
      "involution", [](const Definition& d, const py::handle& f) { return function_dict(d, involution(d.structure, function_arg(d, f))); },
      py::arg("definition"), py::arg("f"));
  m.def(
      "format_function", [](const Definition& d, const py::handle& f) { return format(function_arg(d, f), d.carrier()); },
      py::arg("definition"), py::arg("f"));
  m.def("associativity", &associativity, py::arg("definition"));
  m.def("reduced_norm", &norm, py::arg("definition"), py::arg("f"));
}
