#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "qmodular/levels.hpp"

namespace qmodular {

struct IdentityCase {
  std::string name;
  FormExpr lhs;
  FormExpr rhs;
  std::string note;
  long default_prec = 200;
  // Replaces the expansion of rhs when set; used where the second side is an
  // independent computation path rather than an expression.
  std::function<QSeries(long)> rhs_oracle;
};

struct IdentityReport {
  std::string name;
  bool pass = false;
  long prec = 0;
  std::optional<Rational> first_bad_exponent;
  Rational lhs_coefficient;
  Rational rhs_coefficient;
};

/// Registered identities in a fixed order.
const std::vector<IdentityCase>& identity_cases();
const IdentityCase& find_identity(const std::string& name);

IdentityReport check(const IdentityCase& c, long prec, Expander& expander);
IdentityReport check(const std::string& name, long prec);

/// Runs every case at prec (or each case's default when prec <= 0), in
/// parallel, with results in registry order.
std::vector<IdentityReport> check_all(long prec, const Registry& registry = Registry::builtin());
std::vector<IdentityReport> check_all(const std::vector<IdentityCase>& cases, long prec,
                                      const Registry& registry = Registry::builtin());

}  // namespace qmodular
