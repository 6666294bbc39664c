#include "qmodular/expr_parser.hpp"

#include <cctype>
#include <climits>

namespace qmodular {

namespace {

class Parser {
 public:
  explicit Parser(std::string_view src) : src_(src) {}

  FormExpr parse() {
    FormExpr e = expr();
    skip_space();
    if (pos_ != src_.size()) fail("unexpected '" + std::string(1, src_[pos_]) + "'");
    return e;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const {
    throw Error(ErrorKind::SyntaxError, "at offset " + std::to_string(pos_) + ": " + what);
  }

  void skip_space() {
    while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_]))) ++pos_;
  }

  char peek() {
    skip_space();
    return pos_ < src_.size() ? src_[pos_] : '\0';
  }

  bool accept(char c) {
    if (peek() != c) return false;
    ++pos_;
    return true;
  }

  void expect(char c) {
    if (!accept(c)) fail(std::string("expected '") + c + "'");
  }

  bool at_digit() { return std::isdigit(static_cast<unsigned char>(peek())) != 0; }

  Integer natural() {
    if (!at_digit()) fail("expected a number");
    const std::size_t start = pos_;
    while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) ++pos_;
    return Integer(std::string(src_.substr(start, pos_ - start)), 10);
  }

  Rational unsigned_rational() {
    Integer num = natural();
    Integer den = 1;
    if (accept('/')) {
      den = natural();
      if (den == 0) fail("zero denominator");
    }
    Rational r(num, den);
    r.canonicalize();
    return r;
  }

  Rational signed_rational() {
    bool neg = false;
    if (accept('-')) neg = true;
    else accept('+');
    Rational r = unsigned_rational();
    return neg ? Rational(-r) : r;
  }

  long integer_arg() {
    const std::size_t at = pos_;
    const Rational r = signed_rational();
    if (!is_integer(r) || !r.get_num().fits_slong_p()) {
      pos_ = at;
      fail("expected an integer");
    }
    return r.get_num().get_si();
  }

  int small_int() {
    const long v = integer_arg();
    if (v < INT_MIN || v > INT_MAX) fail("integer out of range");
    return static_cast<int>(v);
  }

  std::string identifier() {
    skip_space();
    const std::size_t start = pos_;
    while (pos_ < src_.size() && std::isalnum(static_cast<unsigned char>(src_[pos_]))) ++pos_;
    return std::string(src_.substr(start, pos_ - start));
  }

  FormExpr expr() {
    std::vector<std::pair<Rational, FormExpr>> terms;
    bool neg = false;
    if (accept('-')) neg = true;
    else accept('+');
    bool lone_explicit = false;
    terms.push_back(term(neg, &lone_explicit));
    while (true) {
      if (accept('+')) terms.push_back(term(false));
      else if (accept('-')) terms.push_back(term(true));
      else break;
    }
    if (terms.size() == 1 && terms.front().first == 1 && !lone_explicit) return terms.front().second;
    return FormExpr::sum(std::move(terms));
  }

  std::pair<Rational, FormExpr> term(bool neg, bool* explicit_coefficient = nullptr) {
    const Rational sign = neg ? Rational(-1) : Rational(1);
    if (at_digit()) {
      const std::size_t at = pos_;
      const Rational lit = unsigned_rational();
      if (peek() != '^') {
        if (!accept('*')) return {Rational(1), FormExpr::scalar(sign * lit)};
        if (explicit_coefficient) *explicit_coefficient = true;
        return {sign * lit, factors()};
      }
      pos_ = at;
    }
    return {sign, factors()};
  }

  FormExpr factors() {
    std::vector<FormExpr> fs;
    fs.push_back(factor());
    while (accept('*')) fs.push_back(factor());
    if (fs.size() == 1) return fs.front();
    return FormExpr::product(std::move(fs));
  }

  FormExpr factor() {
    FormExpr base = atom();
    if (accept('^')) {
      const Integer n = natural();
      if (!n.fits_ulong_p()) fail("exponent too large");
      return FormExpr::power(base, n.get_ui());
    }
    return base;
  }

  TorsionArg torsion() {
    expect('(');
    TorsionArg z;
    z.a = signed_rational();
    expect(',');
    z.b = signed_rational();
    expect(',');
    z.m = integer_arg();
    expect(')');
    return z;
  }

  FormExpr atom() {
    if (at_digit()) return FormExpr::scalar(unsigned_rational());
    if (accept('(')) {
      FormExpr e = expr();
      expect(')');
      return e;
    }
    const std::size_t at = pos_;
    const std::string name = identifier();
    if (name.empty()) fail("expected an expression");
    if (name == "Delta") {
      expect('(');
      const int N = small_int();
      expect(')');
      return FormExpr::delta(N);
    }
    if (name == "E") {
      expect('(');
      const long w = integer_arg();
      expect(',');
      const int N = small_int();
      expect(',');
      const long s = integer_arg();
      expect(')');
      return FormExpr::generator(N, w, s);
    }
    if (name == "E4" || name == "E6" || name == "E8" || name == "E10" || name == "E12") {
      return FormExpr::eisenstein(std::stoi(name.substr(1)), 1);
    }
    if (name == "Eis") {
      expect('(');
      const int k = small_int();
      expect(',');
      const long m = integer_arg();
      expect(')');
      return FormExpr::eisenstein(k, m);
    }
    if (name == "Phi") {
      expect('(');
      const int N = small_int();
      expect(')');
      return FormExpr::phi(N);
    }
    if (name == "wp" || name == "wpt") {
      const TorsionArg z = torsion();
      return name == "wp" ? FormExpr::wp(z.a, z.b, z.m) : FormExpr::wpt(z.a, z.b, z.m);
    }
    if (name == "eta") {
      expect('(');
      std::vector<std::pair<long, long>> fs;
      do {
        const long m = integer_arg();
        long e = 1;
        if (accept(':')) e = integer_arg();
        fs.emplace_back(m, e);
      } while (accept(','));
      expect(')');
      return FormExpr::eta(EtaQuotient(fs));
    }
    if (name == "twist") {
      expect('(');
      FormExpr e = expr();
      expect(')');
      return FormExpr::twist(e);
    }
    pos_ = at;
    fail("unknown name '" + name + "'");
  }

  std::string_view src_;
  std::size_t pos_ = 0;
};

}  // namespace

FormExpr parse_expr(std::string_view src) { return Parser(src).parse(); }

}  // namespace qmodular
