#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <optional>

#include "stargebra/algebra_core.hpp"
#include "stargebra/checks.hpp"
#include "stargebra/commutant.hpp"
#include "stargebra/evolution.hpp"
#include "stargebra/gelfand.hpp"
#include "stargebra/linalg.hpp"
#include "stargebra/random.hpp"
#include "stargebra/spectral_calculus.hpp"
#include "stargebra/spectral_measures.hpp"
#include "stargebra/states_gns.hpp"

namespace py = pybind11;
using namespace stargebra;

namespace {

std::vector<Matrix> subspace_basis(const Subspace& s) { return s.basis(); }

py::dict gns_dict(const GnsResult& g) {
  py::dict d;
  d["dim"] = g.quotient_dim;
  d["representation"] = g.rep;
  d["cyclic_vector"] = g.cyclic_vector;
  d["gram"] = g.gram;
  return d;
}

py::dict state_dict(const StateReport& r) {
  py::dict d;
  d["is_positive"] = r.is_positive;
  d["variation"] = r.variation;
  d["is_state"] = r.is_state;
  d["is_pure"] = r.is_pure;
  d["commutant_dim"] = r.commutant_dim;
  return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Numerical toolkit for finite-dimensional *-algebras of complex matrices.";
  m.attr("__version__") = "0.1.0";

  // Exception types live for the life of the interpreter; the references are
  // deliberately never released.
  static PyObject* base = PyErr_NewException("stargebra.StargebraError", PyExc_ValueError, nullptr);
  static PyObject* parse_error = PyErr_NewException("stargebra.ParseError", base, nullptr);
  static PyObject* precondition_error = PyErr_NewException("stargebra.PreconditionError", base, nullptr);
  static PyObject* numerical_error = PyErr_NewException("stargebra.NumericalError", base, nullptr);
  m.attr("StargebraError") = py::handle(base);
  m.attr("ParseError") = py::handle(parse_error);
  m.attr("PreconditionError") = py::handle(precondition_error);
  m.attr("NumericalError") = py::handle(numerical_error);
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const Error& e) {
      switch (e.kind()) {
        case ErrorKind::Parse: PyErr_SetString(parse_error, e.what()); break;
        case ErrorKind::Precondition: PyErr_SetString(precondition_error, e.what()); break;
        case ErrorKind::Numerical: PyErr_SetString(numerical_error, e.what()); break;
      }
    }
  });

  // algebra-core
  py::class_<StarAlgebra>(m, "StarAlgebra")
      .def_property_readonly("ambient_dim", &StarAlgebra::ambient_dim)
      .def_property_readonly("dim", &StarAlgebra::dim)
      .def_property_readonly("basis", &StarAlgebra::basis)
      .def_property_readonly("unital", &StarAlgebra::unital)
      .def("is_commutative", &StarAlgebra::is_commutative)
      .def("contains", &StarAlgebra::contains, py::arg("a"))
      .def("project", &StarAlgebra::project, py::arg("a"))
      .def("coords", [](const StarAlgebra& a, const Matrix& x) { return a.coords(x).values; }, py::arg("a"))
      .def("element", [](const StarAlgebra& a, const Vector& c) { return a.element({c}); }, py::arg("coords"))
      .def("closure_residual", &StarAlgebra::closure_residual)
      .def("__repr__", [](const StarAlgebra& a) {
        return "<StarAlgebra dim=" + std::to_string(a.dim()) + " in M_" + std::to_string(a.ambient_dim()) + ">";
      });

  m.def(
      "build_algebra",
      [](Eigen::Index n, const std::vector<Matrix>& gens, std::optional<double> tol) {
        return build_algebra(n, gens, tol);
      },
      py::arg("n"), py::arg("generators"), py::arg("tol") = py::none(),
      "Smallest unital *-subalgebra of M_n containing the generators.");
  m.def("unitize", &unitize, py::arg("algebra"));

  py::class_<GroupRing>(m, "GroupRing")
      .def_property_readonly("algebra", [](const GroupRing& g) { return g.algebra; })
      .def_property_readonly("embedding", [](const GroupRing& g) { return g.embedding; })
      .def_property_readonly("order", [](const GroupRing& g) { return g.group.order(); })
      .def("element", [](const GroupRing& g, const std::vector<Complex>& c) { return g.element(c); });
  m.def(
      "cyclic_group_ring", [](int order) { return group_ring(FiniteGroup::cyclic(order)); }, py::arg("order"));
  m.def(
      "group_ring", [](std::vector<std::vector<int>> table) { return group_ring(FiniteGroup::from_table(std::move(table))); },
      py::arg("table"), "Group ring of the group with the given 0-indexed Cayley table.");
  m.def("counterexample_ratio", &counterexample_ratio, py::arg("gamma"), py::arg("n"));

  // spectral-calculus
  m.def(
      "spectrum", [](const Matrix& a) { return spectrum(a).eigenvalues; }, py::arg("a"));
  m.def("spectral_radius_limit", &spectral_radius_limit, py::arg("a"), py::arg("k") = 30);
  m.def("ptak", &ptak, py::arg("a"));
  m.def("sqrt_series", &sqrt_series, py::arg("a"), py::arg("tol") = 1e-10);
  m.def("positive_sqrt", &positive_sqrt, py::arg("a"), py::arg("tol") = 1e-10);
  m.def("abs_value", &abs_value, py::arg("a"), py::arg("tol") = 1e-10);
  m.def(
      "polar",
      [](const Matrix& a) {
        auto f = polar_factorize(a);
        return py::make_tuple(f.unitary, f.positive);
      },
      py::arg("a"), "Returns (u, |a|) with a = u|a|.");
  m.def(
      "orth_decompose",
      [](const Matrix& a) {
        auto p = orth_decompose(a);
        return py::make_tuple(p.plus, p.minus);
      },
      py::arg("a"));
  m.def(
      "rational_apply",
      [](const Matrix& a, std::vector<Complex> num, std::vector<Complex> den) {
        return rational_apply(a, RationalFn(std::move(num), std::move(den)));
      },
      py::arg("a"), py::arg("num"), py::arg("den"), "Coefficients in ascending degree.");
  m.def("functional_calculus", &functional_calculus, py::arg("b"), py::arg("f"), py::arg("tol") = 1e-10);

  // gelfand
  m.def(
      "characters",
      [](const StarAlgebra& a, std::uint64_t seed) { return characters(a, seed).values; }, py::arg("algebra"),
      py::arg("seed") = 0, "Rows are characters, columns their values on the algebra basis.");
  m.def(
      "gelfand_transform",
      [](const StarAlgebra& a, const Matrix& x, std::uint64_t seed) {
        return gelfand_transform(a.coords(x), characters(a, seed));
      },
      py::arg("algebra"), py::arg("a"), py::arg("seed") = 0);
  m.def(
      "bochner_measure",
      [](const StarAlgebra& a, const Matrix& f, std::uint64_t seed) {
        auto mu = bochner_measure(Functional(a, f), seed);
        return py::make_tuple(mu.support, mu.weights);
      },
      py::arg("algebra"), py::arg("F"), py::arg("seed") = 0);
  m.def(
      "wiener_inverse",
      [](const std::vector<Complex>& c) { return wiener_inverse_demo(c); }, py::arg("coeffs"));

  // states-gns: functionals are passed as their trace-pairing matrix F.
  m.def(
      "is_positive", [](const StarAlgebra& a, const Matrix& f) { return is_positive(Functional(a, f)); },
      py::arg("algebra"), py::arg("F"));
  m.def(
      "variation", [](const StarAlgebra& a, const Matrix& f) { return variation(Functional(a, f)); },
      py::arg("algebra"), py::arg("F"));
  m.def(
      "gns", [](const StarAlgebra& a, const Matrix& f) { return gns_dict(gns(Functional(a, f))); },
      py::arg("algebra"), py::arg("F"));
  m.def(
      "classify_state", [](const StarAlgebra& a, const Matrix& f) { return state_dict(classify_state(Functional(a, f))); },
      py::arg("algebra"), py::arg("F"));

  // spectral-measures
  m.def(
      "resolve_normal",
      [](const Matrix& b) {
        auto p = resolve_normal(b);
        return py::make_tuple(p.points, p.projections);
      },
      py::arg("b"), "Returns (points, projections) with b = sum(points[i] * projections[i]).");
  m.def("fuglede_check", &fuglede_check, py::arg("n1"), py::arg("n2"), py::arg("a"), py::arg("tol") = 1e-10);

  // commutant
  m.def(
      "commutant", [](const std::vector<Matrix>& s) { return subspace_basis(commutant(s)); }, py::arg("s"));
  m.def(
      "bicommutant", [](const std::vector<Matrix>& s) { return subspace_basis(bicommutant(s)); }, py::arg("s"));
  m.def(
      "wstar", [](const std::vector<Matrix>& s) { return subspace_basis(wstar(s)); }, py::arg("s"));
  m.def("is_maximal_commutative", &is_maximal_commutative, py::arg("algebra"), py::arg("angle_tol") = 1e-8);

  // evolution
  m.def(
      "cayley", [](const Matrix& a) { return cayley(SelfAdjointModel(a)); }, py::arg("a"));
  m.def("inverse_cayley", &inverse_cayley, py::arg("u"), py::arg("tol") = 1e-10);
  m.def(
      "evolve", [](const Matrix& a, const Vector& x, double t) { return evolve(SelfAdjointModel(a), x, t); },
      py::arg("a"), py::arg("x"), py::arg("t"));
  m.def(
      "ivp_residual",
      [](const Matrix& a, const Vector& x, double t, double h) { return ivp_residual(SelfAdjointModel(a), x, t, h); },
      py::arg("a"), py::arg("x"), py::arg("t"), py::arg("h"));

  // randomised invariant suite
  m.def(
      "run_checks",
      [](std::uint64_t seed, double scale) {
        checks::SuiteOptions options;
        options.seed = seed;
        options.scale = scale;
        std::vector<checks::PropertyResult> results;
        {
          py::gil_scoped_release nogil;
          results = checks::run_suite(options);
        }
        py::list out;
        for (const auto& r : results) {
          py::dict d;
          d["module"] = r.module;
          d["name"] = r.name;
          d["cases"] = r.cases;
          d["passed"] = r.passed;
          d["max_residual"] = r.max_residual;
          d["tolerance"] = r.tolerance;
          d["ok"] = r.ok();
          out.append(d);
        }
        return out;
      },
      py::arg("seed") = 0, py::arg("scale") = 1.0);
}
