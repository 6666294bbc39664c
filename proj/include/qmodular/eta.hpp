#pragma once

#include <string>
#include <utility>
#include <vector>

#include "qmodular/qseries.hpp"

namespace qmodular {

struct EtaFactor {
  long m;  // eta(m tau)
  long e;  // exponent, nonzero

  friend bool operator==(const EtaFactor&, const EtaFactor&) = default;
};

/// prod eta(m_i tau)^{e_i}; factors sorted by m, distinct, nonzero exponents.
class EtaQuotient {
 public:
  EtaQuotient() = default;
  /// Merges repeated multipliers and drops zero exponents.
  explicit EtaQuotient(const std::vector<std::pair<long, long>>& factors);

  const std::vector<EtaFactor>& factors() const noexcept { return factors_; }
  bool empty() const noexcept { return factors_.empty(); }

  /// (1/2) sum e_i.
  Rational weight() const;
  /// sum m_i e_i / 24, the exponent of the leading q-power.
  Rational offset() const;

  EtaQuotient operator*(const EtaQuotient& other) const;
  EtaQuotient power(long n) const;

  friend bool operator==(const EtaQuotient&, const EtaQuotient&) = default;

 private:
  std::vector<EtaFactor> factors_;
};

/// prod_{n>=1} (1 - q^{m n}) + O(q^prec), from the pentagonal number theorem.
QSeries euler_product(long m, long prec);

/// q^{offset} prod_i prod_n (1 - q^{m_i n})^{e_i} + O(q^prec).
/// Throws FractionalExponent when 2*offset is not an integer and
/// InvalidPrecision when prec <= offset.
QSeries expand(const EtaQuotient& spec, long prec);

/// Eta spec of the strong unit Delta_N, 1 <= N <= 10.
const EtaQuotient& delta_spec(int N);
QSeries delta(int N, long prec);

}  // namespace qmodular
