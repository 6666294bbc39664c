#include "qmodular/form_expr.hpp"

#include <sstream>

namespace qmodular {

namespace {

void check_torsion(const Rational& a, const Rational& b, long m) {
  if (m < 1) throw Error(ErrorKind::InvalidArgument, "lattice multiplier must be positive");
  if (a.get_den() > 2) throw Error(ErrorKind::InvalidArgument, "torsion coefficient a must lie in (1/2)Z");
  if (b != 0 && b != Rational(1, 2)) throw Error(ErrorKind::InvalidArgument, "torsion shift b must be 0 or 1/2");
}

}  // namespace

FormExpr FormExpr::make(Node node, Rational weight) {
  return FormExpr(std::make_shared<const FormNode>(FormNode{std::move(node), std::move(weight)}));
}

const FormExpr::Node& FormExpr::node() const { return p_->node; }
const Rational& FormExpr::weight() const { return p_->weight; }

FormExpr FormExpr::generator(int N, long weight, long s) {
  if (N < 1 || N > 10) throw Error(ErrorKind::UnknownLevel, "level " + std::to_string(N) + " is outside 1..10");
  if (weight < 0 || weight % 2 != 0) {
    throw Error(ErrorKind::UnsupportedWeight, "generator weight must be even, got " + std::to_string(weight));
  }
  if (s < 0) throw Error(ErrorKind::UnknownGenerator, "generator index must be nonnegative");
  return make(Generator{N, weight, s}, Rational(weight));
}

FormExpr FormExpr::delta(int N) { return make(DeltaRef{N}, delta_spec(N).weight()); }

FormExpr FormExpr::wp(const Rational& a, const Rational& b, long m) {
  check_torsion(a, b, m);
  return make(Wp{{a, b, m}}, Rational(2));
}

FormExpr FormExpr::wpt(const Rational& a, const Rational& b, long m) {
  check_torsion(a, b, m);
  return make(Wpt{{a, b, m}}, Rational(2));
}

FormExpr FormExpr::eta(const EtaQuotient& spec) {
  if (spec.empty()) throw Error(ErrorKind::InvalidArgument, "empty eta quotient");
  return make(Eta{spec}, spec.weight());
}

FormExpr FormExpr::eisenstein(int k, long m) {
  if (k < 4 || k % 2 != 0) {
    throw Error(ErrorKind::UnsupportedWeight, "Eisenstein series needs even weight >= 4, got " + std::to_string(k));
  }
  if (m < 1) throw Error(ErrorKind::InvalidArgument, "Eisenstein multiplier must be positive");
  return make(Eisenstein{k, m}, Rational(k));
}

FormExpr FormExpr::phi(int N) {
  if (N < 2) throw Error(ErrorKind::UnknownLevel, "Phi_N needs N >= 2");
  return make(Phi{N}, Rational(2));
}

FormExpr FormExpr::scalar(const Rational& c) { return make(Scalar{c}, Rational(0)); }

FormExpr FormExpr::sum(std::vector<std::pair<Rational, FormExpr>> terms) {
  if (terms.empty()) throw Error(ErrorKind::InvalidArgument, "empty sum");
  const Rational w = terms.front().second.weight();
  for (const auto& [c, t] : terms) {
    if (t.weight() != w) {
      throw Error(ErrorKind::WeightMismatch,
                  "sum mixes weights " + qmodular::to_string(w) + " and " + qmodular::to_string(t.weight()));
    }
  }
  return make(Sum{std::move(terms)}, w);
}

FormExpr FormExpr::product(std::vector<FormExpr> factors) {
  if (factors.empty()) throw Error(ErrorKind::InvalidArgument, "empty product");
  Rational w = 0;
  for (const auto& f : factors) w += f.weight();
  return make(Product{std::move(factors)}, w);
}

FormExpr FormExpr::power(const FormExpr& base, unsigned long n) {
  return make(Power{{base}, n}, base.weight() * Rational(n));
}

FormExpr FormExpr::twist(const FormExpr& arg) { return make(Twist{{arg}}, arg.weight()); }

namespace {

bool same(const FormExpr::Generator& a, const FormExpr::Generator& b) {
  return a.N == b.N && a.weight == b.weight && a.s == b.s;
}
bool same(const FormExpr::DeltaRef& a, const FormExpr::DeltaRef& b) { return a.N == b.N; }
bool same(const FormExpr::Wp& a, const FormExpr::Wp& b) { return a.z == b.z; }
bool same(const FormExpr::Wpt& a, const FormExpr::Wpt& b) { return a.z == b.z; }
bool same(const FormExpr::Eta& a, const FormExpr::Eta& b) { return a.spec == b.spec; }
bool same(const FormExpr::Eisenstein& a, const FormExpr::Eisenstein& b) { return a.k == b.k && a.m == b.m; }
bool same(const FormExpr::Phi& a, const FormExpr::Phi& b) { return a.N == b.N; }
bool same(const FormExpr::Scalar& a, const FormExpr::Scalar& b) { return a.value == b.value; }
bool same(const FormExpr::Sum& a, const FormExpr::Sum& b) { return a.terms == b.terms; }
bool same(const FormExpr::Product& a, const FormExpr::Product& b) { return a.factors == b.factors; }
bool same(const FormExpr::Power& a, const FormExpr::Power& b) { return a.n == b.n && a.base == b.base; }
bool same(const FormExpr::Twist& a, const FormExpr::Twist& b) { return a.arg == b.arg; }

}  // namespace

bool operator==(const FormExpr& a, const FormExpr& b) {
  if (a.p_ == b.p_) return true;
  if (a.node().index() != b.node().index()) return false;
  return std::visit(
      [&](const auto& x) {
        using T = std::decay_t<decltype(x)>;
        return same(x, std::get<T>(b.node()));
      },
      a.node());
}

FormExpr operator+(const FormExpr& a, const FormExpr& b) {
  std::vector<std::pair<Rational, FormExpr>> terms;
  if (const auto* s = a.as<FormExpr::Sum>()) terms = s->terms;
  else terms.emplace_back(Rational(1), a);
  if (const auto* s = b.as<FormExpr::Sum>()) terms.insert(terms.end(), s->terms.begin(), s->terms.end());
  else terms.emplace_back(Rational(1), b);
  return FormExpr::sum(std::move(terms));
}

FormExpr operator-(const FormExpr& a, const FormExpr& b) { return a + Rational(-1) * b; }

FormExpr operator*(const Rational& c, const FormExpr& a) {
  if (const auto* s = a.as<FormExpr::Sum>()) {
    auto terms = s->terms;
    for (auto& t : terms) t.first *= c;
    return FormExpr::sum(std::move(terms));
  }
  return FormExpr::sum({{c, a}});
}

FormExpr operator*(const FormExpr& a, const FormExpr& b) {
  std::vector<FormExpr> factors;
  if (const auto* p = a.as<FormExpr::Product>()) factors = p->factors;
  else factors.push_back(a);
  if (const auto* p = b.as<FormExpr::Product>()) factors.insert(factors.end(), p->factors.begin(), p->factors.end());
  else factors.push_back(b);
  return FormExpr::product(std::move(factors));
}

// Printing.  The layout mirrors the parser's canonical rules: a bare rational
// literal leading a term is a Sum coefficient, so scalars inside products are
// always parenthesized.

namespace {

void print_expr(std::ostream& out, const FormExpr& e);
void print_factor(std::ostream& out, const FormExpr& e);

std::string rat(const Rational& r) { return to_string(r); }

void print_torsion(std::ostream& out, const char* name, const TorsionArg& z) {
  out << name << "(" << rat(z.a) << "," << rat(z.b) << "," << z.m << ")";
}

void print_factor_list(std::ostream& out, const std::vector<FormExpr>& factors) {
  for (std::size_t i = 0; i < factors.size(); ++i) {
    if (i) out << "*";
    print_factor(out, factors[i]);
  }
}

void print_term_body(std::ostream& out, const FormExpr& e) {
  if (const auto* p = e.as<FormExpr::Product>()) print_factor_list(out, p->factors);
  else print_factor(out, e);
}

void print_term(std::ostream& out, const Rational& c, const FormExpr& child, bool first) {
  if (c == 1) {
    if (const auto* s = child.as<FormExpr::Scalar>()) {
      const bool neg = s->value < 0;
      if (first) out << (neg ? "-" : "");
      else out << (neg ? " - " : " + ");
      out << rat(abs(s->value));
      return;
    }
  }
  const bool neg = c < 0;
  if (first) out << (neg ? "-" : "");
  else out << (neg ? " - " : " + ");
  const Rational mag = abs(c);
  if (mag != 1) out << rat(mag) << "*";
  print_term_body(out, child);
}

void print_factor(std::ostream& out, const FormExpr& e) {
  std::visit(
      [&](const auto& x) {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, FormExpr::Generator>) {
          out << "E(" << x.weight << "," << x.N << "," << x.s << ")";
        } else if constexpr (std::is_same_v<T, FormExpr::DeltaRef>) {
          out << "Delta(" << x.N << ")";
        } else if constexpr (std::is_same_v<T, FormExpr::Wp>) {
          print_torsion(out, "wp", x.z);
        } else if constexpr (std::is_same_v<T, FormExpr::Wpt>) {
          print_torsion(out, "wpt", x.z);
        } else if constexpr (std::is_same_v<T, FormExpr::Eta>) {
          out << "eta(";
          const auto& fs = x.spec.factors();
          for (std::size_t i = 0; i < fs.size(); ++i) {
            if (i) out << ",";
            out << fs[i].m;
            if (fs[i].e != 1) out << ":" << fs[i].e;
          }
          out << ")";
        } else if constexpr (std::is_same_v<T, FormExpr::Eisenstein>) {
          if (x.m == 1 && x.k <= 12) out << "E" << x.k;
          else out << "Eis(" << x.k << "," << x.m << ")";
        } else if constexpr (std::is_same_v<T, FormExpr::Phi>) {
          out << "Phi(" << x.N << ")";
        } else if constexpr (std::is_same_v<T, FormExpr::Scalar>) {
          out << "(" << rat(x.value) << ")";
        } else if constexpr (std::is_same_v<T, FormExpr::Sum> || std::is_same_v<T, FormExpr::Product>) {
          out << "(";
          print_expr(out, e);
          out << ")";
        } else if constexpr (std::is_same_v<T, FormExpr::Power>) {
          const FormExpr& b = x.base.front();
          if (b.as<FormExpr::Power>()) {
            out << "(";
            print_expr(out, b);
            out << ")";
          } else {
            print_factor(out, b);
          }
          out << "^" << x.n;
        } else if constexpr (std::is_same_v<T, FormExpr::Twist>) {
          out << "twist(";
          print_expr(out, x.arg.front());
          out << ")";
        }
      },
      e.node());
}

void print_expr(std::ostream& out, const FormExpr& e) {
  if (const auto* s = e.as<FormExpr::Sum>()) {
    if (s->terms.size() == 1 && s->terms.front().first == 1) {
      // an explicit unit coefficient keeps the one-term Sum node
      out << "1*";
      print_term_body(out, s->terms.front().second);
      return;
    }
    for (std::size_t i = 0; i < s->terms.size(); ++i) print_term(out, s->terms[i].first, s->terms[i].second, i == 0);
    return;
  }
  print_term(out, Rational(1), e, true);
}

}  // namespace

std::string to_string(const FormExpr& e) {
  std::ostringstream out;
  print_expr(out, e);
  return out.str();
}

}  // namespace qmodular
