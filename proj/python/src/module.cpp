#include <pybind11/eigen.h>
#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "sixth/coefficients.hpp"
#include "sixth/eigenbasis.hpp"
#include "sixth/errors.hpp"
#include "sixth/galerkin.hpp"
#include "sixth/oracle.hpp"

namespace py = pybind11;
using namespace sixth;

namespace {

Parity parity_of(const std::string& s) { return parse_parity(s); }

FormulaVariant variant_of(const std::string& s) {
  if (s == "corrected") return FormulaVariant::corrected;
  if (s == "printed") return FormulaVariant::printed;
  throw InvalidArgument("variant must be 'corrected' or 'printed'");
}

std::vector<ForcingTerm> forcing_of(const std::vector<std::pair<int, double>>& terms) {
  std::vector<ForcingTerm> out;
  for (auto [p, c] : terms) out.push_back({p, c});
  return out;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Eigenfunction Galerkin solver for sixth-order boundary value problems";

  auto numerical = py::register_exception<NumericalError>(m, "NumericalError", PyExc_ArithmeticError);
  py::register_exception<InvalidArgument>(m, "InvalidArgument", PyExc_ValueError);
  (void)numerical;

  m.def("eigenvalue", [](const std::string& parity, int index) {
    return solve_eigenvalue(parity_of(parity), index).lambda;
  }, py::arg("parity"), py::arg("m"));
  m.def("eigenvalue_asymptotic", [](const std::string& parity, int index) {
    return eigenvalue_asymptotic(parity_of(parity), index);
  }, py::arg("parity"), py::arg("m"));

  py::class_<Basis>(m, "Basis")
      .def(py::init<int>(), py::arg("M"))
      .def_property_readonly("M", &Basis::M)
      .def("lambda_", [](const Basis& b, const std::string& p, int i) { return b.lambda(parity_of(p), i); },
           py::arg("parity"), py::arg("m"))
      .def("eval", [](const Basis& b, const std::string& p, int i, double x, int k) {
        return b.eval(parity_of(p), i, x, k);
      }, py::arg("parity"), py::arg("m"), py::arg("x"), py::arg("k") = 0);

  m.def("beta", [](const Basis& b, const std::string& p, int n, int k, const std::string& v) {
    return beta(b, parity_of(p), n, k, variant_of(v));
  }, py::arg("basis"), py::arg("parity"), py::arg("n"), py::arg("m"), py::arg("variant") = "corrected");
  m.def("gamma", [](const Basis& b, const std::string& p, int n, int k, const std::string& v) {
    return gamma(b, parity_of(p), n, k, variant_of(v));
  }, py::arg("basis"), py::arg("parity"), py::arg("n"), py::arg("m"), py::arg("variant") = "corrected");
  m.def("chi", [](const Basis& b, int p, int k, const std::string& v) {
    return chi(b, p, k, variant_of(v));
  }, py::arg("basis"), py::arg("p"), py::arg("m"), py::arg("variant") = "corrected");

  py::class_<CoefficientSet>(m, "CoefficientSet")
      .def_readonly("M", &CoefficientSet::M)
      .def_readonly("u0c", &CoefficientSet::u0c)
      .def_readonly("uc", &CoefficientSet::uc)
      .def_readonly("us", &CoefficientSet::us);

  m.def("synthesize", [](const Basis& b, const CoefficientSet& c, double x, int k) {
    return synthesize(b, c, x, k);
  }, py::arg("basis"), py::arg("coefficients"), py::arg("x"), py::arg("k") = 0);
  m.def("project", [](const std::function<double(double)>& f, const Basis& b) { return project(f, b); },
        py::arg("f"), py::arg("basis"));

  py::class_<SteadySolution>(m, "SteadySolution")
      .def_readonly("coefficients", &SteadySolution::coefficients)
      .def_property_readonly("path", [](const SteadySolution& s) { return std::string(to_string(s.path)); })
      .def_readonly("pivots", &SteadySolution::pivots)
      .def_readonly("warnings", &SteadySolution::warnings);

  m.def("solve", [](const Basis& b, double a6, double a4, double a2, double a0,
                    const std::vector<std::pair<int, double>>& forcing) {
    BvpSpec spec{a6, a4, a2, a0, forcing_of(forcing)};
    return solve_steady(spec, b);
  }, py::arg("basis"), py::arg("a6") = 1.0, py::arg("a4") = 0.0, py::arg("a2") = 0.0,
     py::arg("a0") = 0.0, py::arg("forcing") = std::vector<std::pair<int, double>>{});
  m.def("solve_model", [](const Basis& b, const std::string& which) {
    if (which == "I") return solve_steady(BvpSpec::model_I(), b);
    if (which == "II") return solve_steady(BvpSpec::model_II(), b);
    throw InvalidArgument("model must be 'I' or 'II'");
  }, py::arg("basis"), py::arg("model"));
  m.def("model_spec", [](const std::string& which) {
    const BvpSpec s = which == "I" ? BvpSpec::model_I()
                      : which == "II" ? BvpSpec::model_II()
                                      : throw InvalidArgument("model must be 'I' or 'II'");
    py::dict d;
    d["a6"] = s.a6;
    d["a4"] = s.a4;
    d["a2"] = s.a2;
    d["a0"] = s.a0;
    std::vector<std::pair<int, double>> f;
    for (const auto& t : s.forcing) f.emplace_back(t.power, t.coefficient);
    d["forcing"] = f;
    return d;
  }, py::arg("model"));
  m.def("model_exact_solution", &model_exact_solution, py::arg("x"));

  m.def("evolve", [](const Basis& b, double B, double T, double reaction,
                     const std::vector<std::pair<int, double>>& forcing, const CoefficientSet& initial,
                     double dt, int steps, double theta, int every) {
    const auto sys = assemble_semi_discrete(b, B, T, forcing_coefficients(b, forcing_of(forcing)), reaction);
    return evolve(sys, initial, dt, steps, theta, every);
  }, py::arg("basis"), py::arg("B"), py::arg("T"), py::arg("reaction"), py::arg("forcing"),
     py::arg("initial"), py::arg("dt"), py::arg("steps"), py::arg("theta") = 0.5, py::arg("every") = 1);
  m.def("zeros", &CoefficientSet::zeros, py::arg("M"));

  m.def("gram_matrix", [](const Basis& b, const std::string& p, int count) {
    return oracle::gram_matrix(b, parity_of(p), count);
  }, py::arg("basis"), py::arg("parity"), py::arg("count"));
  m.def("verify", [](const Basis& b, int max_index, bool printed) {
    py::list out;
    for (const auto& r : oracle::verify_sweep(b, max_index, printed)) {
      py::dict d;
      d["kind"] = oracle::to_string(r.kind);
      d["parity"] = std::string(to_string(r.parity));
      d["n_or_p"] = r.n;
      d["m"] = r.m;
      d["variant"] = std::string(to_string(r.variant));
      d["documented_misprint"] = r.documented_misprint;
      d["closed_form"] = r.closed_form;
      d["quadrature"] = r.quadrature;
      d["rel_discrepancy"] = r.rel_discrepancy;
      d["pass"] = r.pass;
      out.append(d);
    }
    return out;
  }, py::arg("basis"), py::arg("max_index") = 20, py::arg("include_printed") = true);
}
