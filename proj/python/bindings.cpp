#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "qmodular/expr_parser.hpp"
#include "qmodular/identities.hpp"
#include "qmodular/levels.hpp"

namespace py = pybind11;
using namespace qmodular;

namespace {

using Pair = std::pair<std::string, std::string>;

Pair to_pair(const Rational& r) { return {r.get_num().get_str(), r.get_den().get_str()}; }

// (den, val_num, prec_num, coefficients) on the exponent grid q^{i/den}.
py::tuple series_tuple(const QSeries& f) {
  std::vector<Pair> cs;
  for (const auto& c : f.coefficients()) cs.push_back(to_pair(c));
  return py::make_tuple(f.den(), f.val_num(), f.prec_num(), cs, to_display_string(f));
}

}  // namespace

PYBIND11_MODULE(_qmodular, m) {
  m.doc() = "Exact q-expansions of modular forms on Gamma0(N), 1 <= N <= 10";

  // Messages start with the error kind, e.g. "NotInSpan: ...".
  py::register_exception<Error>(m, "QModularError", PyExc_ValueError);

  m.def(
      "expand", [](const std::string& expr, long prec) { return series_tuple(expand_expr(parse_expr(expr), prec)); },
      py::arg("expr"), py::arg("prec"));

  m.def(
      "weight", [](const std::string& expr) { return to_pair(parse_expr(expr).weight()); }, py::arg("expr"));

  m.def(
      "dimension", [](int N, long weight) { return Registry::builtin().dimension(N, weight); }, py::arg("level"),
      py::arg("weight"));

  m.def(
      "basis",
      [](int N, long weight, long prec) {
        std::vector<py::tuple> out;
        for (const auto& e : basis(N, weight, prec).elements) out.push_back(py::make_tuple(e.label, series_tuple(e.series)));
        return out;
      },
      py::arg("level"), py::arg("weight"), py::arg("prec"));

  m.def(
      "reduce",
      [](const std::string& expr, int N, long weight, long prec) {
        std::vector<Pair> out;
        for (const auto& c : reduce(expand_expr(parse_expr(expr), prec), N, weight, prec)) out.push_back(to_pair(c));
        return out;
      },
      py::arg("expr"), py::arg("level"), py::arg("weight"), py::arg("prec"));

  m.def("identity_names", [] {
    std::vector<std::string> names;
    for (const auto& c : identity_cases()) names.push_back(c.name);
    return names;
  });

  m.def(
      "verify",
      [](const std::string& name, long prec) {
        std::vector<IdentityReport> reports;
        {
          py::gil_scoped_release release;
          if (name == "all") {
            reports = check_all(prec);
          } else {
            const IdentityCase& c = find_identity(name);
            Expander expander;
            reports.push_back(check(c, prec > 0 ? prec : c.default_prec, expander));
          }
        }
        py::list out;
        for (const auto& r : reports) {
          py::dict d;
          d["name"] = r.name;
          d["status"] = r.pass ? "pass" : "fail";
          d["prec"] = r.prec;
          d["first_bad_exponent"] = r.first_bad_exponent ? py::cast(to_pair(*r.first_bad_exponent)) : py::none();
          out.append(d);
        }
        return out;
      },
      py::arg("name") = "all", py::arg("prec") = 0);
}
