#include "couplecheck/analysis.hpp"
#include "couplecheck/coupling.hpp"
#include "couplecheck/lp.hpp"
#include "couplecheck/scenarios.hpp"
#include "couplecheck/system_file.hpp"

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

namespace py = pybind11;
using namespace couplecheck;

namespace {

// Rationals cross the boundary as fractions.Fraction; int and "p/q" strings
// are accepted on input. Floats are refused.
py::object to_fraction(const Rational& r) {
  static py::object fraction = py::module_::import("fractions").attr("Fraction");
  return fraction(py::int_(py::str(r.numerator_str())), py::int_(py::str(r.denominator_str())));
}

Rational from_python(const py::handle& h) {
  if (py::isinstance<py::float_>(h)) throw Error(ErrorCode::ParseError, "floats are not accepted; use Fraction");
  return Rational::parse(py::str(h).cast<std::string>());
}

py::dict coupling_to_dict(const Coupling& c) {
  py::dict out;
  for (const auto& [atom, mass] : c.atoms) {
    py::list labels;
    for (const auto& v : c.labels(atom)) labels.append(v.label);
    out[py::tuple(labels)] = to_fraction(mass);
  }
  return out;
}

py::object optional_coupling(const std::optional<Coupling>& c) {
  return c ? py::object(coupling_to_dict(*c)) : py::object(py::none());
}

Distribution distribution_from_dict(const py::dict& d) {
  std::vector<Value> support;
  std::vector<Rational> masses;
  for (const auto& [k, v] : d) {
    support.push_back({py::str(k).cast<std::string>()});
    masses.push_back(from_python(v));
  }
  return Distribution(std::move(support), std::move(masses));
}

py::dict report_to_dict(const AnalysisReport& r) {
  py::dict out;
  out["marginal_selectivity"] = r.marginal_selectivity.holds;
  py::dict connections;
  for (const auto& c : r.marginal_selectivity.connections) {
    py::dict detail;
    detail["contexts"] = py::make_tuple(c.first_context, c.second_context);
    detail["p_plus"] = py::make_tuple(to_fraction(c.first_p_plus), to_fraction(c.second_p_plus));
    detail["consistent"] = c.consistent;
    connections[py::str(c.content.id)] = detail;
  }
  out["connections"] = connections;
  out["chsh_value"] = to_fraction(r.chsh_value);
  out["chsh_satisfied"] = r.chsh_satisfied;
  out["extended_bound"] = to_fraction(r.extended_bound);
  out["noncontextual_closed_form"] = r.noncontextual_closed_form;
  out["noncontextual_lp"] = r.noncontextual_lp;
  out["selective_influences"] = r.selective_influences;
  out["selective_influences_lp"] = r.selective_influences_lp;
  out["brute_force_oracle"] = r.brute_force ? py::object(py::bool_(*r.brute_force)) : py::object(py::none());
  out["oracle_agreement"] = r.oracle_agreement;
  out["noncontextual"] = r.noncontextual();
  out["maximal_coupling"] = optional_coupling(r.maximal_coupling);
  return out;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Exact couplings and contextuality checks for finite context-content systems";

  static py::exception<Error> error(m, "CouplecheckError", PyExc_ValueError);
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const Error& e) {
      py::set_error(error, e.what());
    }
  });

  py::class_<System>(m, "System")
      .def_static(
          "from_text", [](const std::string& text) { return validate_system(parse_system_file(text)); },
          "Parse and validate a system file")
      .def("to_text", &format_system)
      .def_property_readonly("contents",
                             [](const System& s) {
                               std::vector<std::string> out;
                               for (const auto& c : s.contents()) out.push_back(c.id);
                               return out;
                             })
      .def_property_readonly("contexts",
                             [](const System& s) {
                               std::vector<std::pair<std::string, std::vector<std::string>>> out;
                               for (const auto& c : s.contexts()) {
                                 std::vector<std::string> measured;
                                 for (const auto& q : c.measured) measured.push_back(q.id);
                                 out.emplace_back(c.id, std::move(measured));
                               }
                               return out;
                             })
      .def("__eq__", [](const System& a, const System& b) { return a == b; })
      .def("__repr__", [](const System& s) {
        return "<System with " + std::to_string(s.contents().size()) + " contents, " +
               std::to_string(s.bunches().size()) + " contexts>";
      });

  m.def("scenarios", [] {
    std::vector<std::string> out;
    for (const auto id : all_scenarios()) out.emplace_back(to_string(id));
    return out;
  });

  m.def(
      "scenario",
      [](const std::string& name, const py::dict& params) {
        ScenarioParams p;
        for (const auto& [k, v] : params) p[py::str(k).cast<std::string>()] = from_python(v);
        return build(parse_scenario_id(name), p);
      },
      py::arg("name"), py::arg("params") = py::dict());

  m.def("analyze", [](const System& s) { return report_to_dict(analyze(CyclicFourSystem::from_system(s))); });
  m.def("chsh_value", [](const System& s) { return to_fraction(chsh_value(CyclicFourSystem::from_system(s))); });

  m.def("independent_coupling", [](const System& s) { return coupling_to_dict(independent_coupling(s)); });
  m.def("maximally_connected_coupling",
        [](const System& s) { return optional_coupling(maximally_connected_coupling(s)); });
  m.def("couple_with_equality_targets", [](const System& s, const py::dict& targets) {
    std::vector<ConnectionTarget> t;
    for (const auto& [k, v] : targets) t.push_back({Content{py::str(k).cast<std::string>()}, from_python(v)});
    return optional_coupling(couple_with_equality_targets(s, t));
  });

  m.def(
      "max_equality_probability",
      [](const py::dict& d1, const py::dict& d2) {
        return to_fraction(max_equality_probability(distribution_from_dict(d1), distribution_from_dict(d2)));
      },
      "Largest P[X = Y] over couplings of two distributions given as {label: mass}");

  m.def(
      "solve_feasibility",
      [](const std::vector<std::vector<py::object>>& a, const std::vector<py::object>& b) -> py::object {
        LinearSystem lp;
        for (const auto& row : a) {
          std::vector<Rational> r;
          for (const auto& x : row) r.push_back(from_python(x));
          lp.constraint_matrix.push_back(std::move(r));
        }
        for (const auto& x : b) lp.rhs.push_back(from_python(x));
        const auto result = solve_feasibility(lp);
        if (!result.feasible()) return py::none();
        py::list witness;
        for (const auto& x : *result.witness) witness.append(to_fraction(x));
        return witness;
      },
      "A nonnegative solution of A x = b, or None");
}
