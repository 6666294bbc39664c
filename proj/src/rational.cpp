#include "qmodular/rational.hpp"

#include <cctype>

#include "qmodular/error.hpp"

namespace qmodular {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::InvalidPrecision: return "InvalidPrecision";
    case ErrorKind::InvalidArgument: return "InvalidArgument";
    case ErrorKind::NotInvertible: return "NotInvertible";
    case ErrorKind::UnsupportedTwist: return "UnsupportedTwist";
    case ErrorKind::PoleAtArgument: return "PoleAtArgument";
    case ErrorKind::FractionalExponent: return "FractionalExponent";
    case ErrorKind::UnknownLevel: return "UnknownLevel";
    case ErrorKind::UnsupportedWeight: return "UnsupportedWeight";
    case ErrorKind::UnknownGenerator: return "UnknownGenerator";
    case ErrorKind::EmptySpace: return "EmptySpace";
    case ErrorKind::InsufficientPrecision: return "InsufficientPrecision";
    case ErrorKind::NotInSpan: return "NotInSpan";
    case ErrorKind::UnknownIdentity: return "UnknownIdentity";
    case ErrorKind::SyntaxError: return "SyntaxError";
    case ErrorKind::WeightMismatch: return "WeightMismatch";
    case ErrorKind::RegistryValidation: return "RegistryValidation";
  }
  return "Error";
}

namespace {

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s) {
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  }
  return true;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  std::string_view body = text;
  bool negative = false;
  if (!body.empty() && (body.front() == '-' || body.front() == '+')) {
    negative = body.front() == '-';
    body.remove_prefix(1);
  }
  auto slash = body.find('/');
  std::string_view num = body.substr(0, slash);
  std::string_view den = slash == std::string_view::npos ? std::string_view("1") : body.substr(slash + 1);
  if (!all_digits(num) || !all_digits(den)) {
    throw Error(ErrorKind::SyntaxError, "malformed rational '" + std::string(text) + "'");
  }
  Integer n(std::string(num), 10);
  Integer d(std::string(den), 10);
  if (d == 0) throw Error(ErrorKind::SyntaxError, "zero denominator in '" + std::string(text) + "'");
  Rational r(negative ? Integer(-n) : n, d);
  r.canonicalize();
  return r;
}

std::string to_string(const Rational& r) { return r.get_str(10); }

long floor_long(const Rational& r) {
  Integer q;
  mpz_fdiv_q(q.get_mpz_t(), r.get_num_mpz_t(), r.get_den_mpz_t());
  return q.get_si();
}

long ceil_long(const Rational& r) {
  Integer q;
  mpz_cdiv_q(q.get_mpz_t(), r.get_num_mpz_t(), r.get_den_mpz_t());
  return q.get_si();
}

}  // namespace qmodular
