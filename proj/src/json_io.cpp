#include "qmodular/json_io.hpp"

#include <nlohmann/json.hpp>

namespace qmodular {

namespace {

using nlohmann::json;

json rational_pair(const Rational& c) { return json::array({c.get_num().get_str(), c.get_den().get_str()}); }

json coefficient_list(const QSeries& f) {
  json out = json::array();
  for (std::size_t i = 0; i < f.size(); ++i) out.push_back(rational_pair(f.coeff_at(i)));
  return out;
}

}  // namespace

std::string basis_json(const BasisSet& b) {
  json elements = json::array();
  for (const auto& e : b.elements) {
    elements.push_back({{"s", e.s},
                        {"valuation", e.series.is_zero() ? e.s : floor_long(e.series.valuation())},
                        {"label", e.label},
                        {"coefficients", coefficient_list(e.series)}});
  }
  json doc{{"level", b.N}, {"weight", b.weight}, {"precision", b.prec}, {"elements", std::move(elements)}};
  return doc.dump(2);
}

std::string series_json(const QSeries& f) {
  json doc{{"valuation", to_string(f.valuation())},
           {"precision", to_string(f.precision())},
           {"exponent_denominator", f.den()},
           {"coefficients", coefficient_list(f)}};
  return doc.dump(2);
}

std::string coordinates_json(int N, long weight, const std::vector<Rational>& coords) {
  json cs = json::array();
  for (const auto& c : coords) cs.push_back(rational_pair(c));
  json doc{{"level", N}, {"weight", weight}, {"coordinates", std::move(cs)}};
  return doc.dump(2);
}

std::string identities_json(const std::vector<IdentityReport>& reports) {
  json out = json::array();
  for (const auto& r : reports) {
    json j{{"name", r.name}, {"status", r.pass ? "pass" : "fail"}, {"prec", r.prec}};
    if (r.first_bad_exponent) {
      j["first_bad_exponent"] = to_string(*r.first_bad_exponent);
      j["lhs"] = to_string(r.lhs_coefficient);
      j["rhs"] = to_string(r.rhs_coefficient);
    } else {
      j["first_bad_exponent"] = nullptr;
    }
    out.push_back(std::move(j));
  }
  return out.dump(2);
}

std::string levels_json(const Registry& registry) {
  json out = json::array();
  for (int N = 1; N <= 10; ++N) {
    const LevelSpec& L = registry.level(N);
    json eta = json::array();
    for (const auto& f : L.delta.factors()) eta.push_back({f.m, f.e});
    json dims = json::object();
    for (const auto& [w, d] : L.base_dims) dims[std::to_string(w)] = d;
    json gens = json::array();
    for (const auto& [key, expr] : L.generators) {
      gens.push_back({{"weight", key.first}, {"s", key.second}, {"expr", to_string(expr)}});
    }
    out.push_back({{"N", N},
                   {"rho", L.rho},
                   {"nu", L.nu},
                   {"eta", std::move(eta)},
                   {"dims", std::move(dims)},
                   {"generators", std::move(gens)}});
  }
  return out.dump(2);
}

std::string dims_json(int N, const std::vector<std::pair<long, long>>& rows) {
  json ds = json::array();
  for (const auto& [w, d] : rows) ds.push_back({{"weight", w}, {"dimension", d}});
  json doc{{"level", N}, {"dimensions", std::move(ds)}};
  return doc.dump(2);
}

}  // namespace qmodular
