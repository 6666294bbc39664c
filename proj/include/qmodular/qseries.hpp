#pragma once

#include <cstddef>
#include <iosfwd>
#include <string>
#include <vector>

#include "qmodular/error.hpp"
#include "qmodular/rational.hpp"

namespace qmodular {

/// Truncated Puiseux series  sum_i c_i q^{(v+i)/D} + O(q^{prec/D})  with exact
/// rational coefficients.
///
/// Exponents live on the scale 1/D: `val_num()` and `prec_num()` are integers
/// and the true exponents are val_num()/den() and prec_num()/den().  Values are
/// kept canonical after every operation (leading zeros stripped, D minimal over
/// the support, coefficients over a reduced common denominator), so two series
/// compare equal exactly when they carry the same information.
///
/// Internally coefficient i is `numerators()[i] / scale()`; keeping one common
/// denominator lets the Cauchy product run on integers.
class QSeries {
 public:
  /// Exact-zero-so-far, O(q^0).
  QSeries() = default;

  static QSeries from_coefficients(long den, long val_num, const std::vector<Rational>& coeffs,
                                   long prec_num);
  static QSeries from_integers(long den, long val_num, std::vector<Integer> nums, Integer scale,
                               long prec_num);
  /// Exact-zero-so-far known to O(q^{prec_num/den}).
  static QSeries zero(long den, long prec_num);
  /// 1 + O(q^prec).
  static QSeries one(long prec);

  long den() const noexcept { return den_; }
  long val_num() const noexcept { return val_; }
  long prec_num() const noexcept { return prec_; }
  Rational valuation() const { return make_rational(val_, den_); }
  Rational precision() const { return make_rational(prec_, den_); }

  /// True for exact-zero-so-far series (no nonzero coefficient below precision).
  bool is_zero() const noexcept { return nums_.empty(); }
  std::size_t size() const noexcept { return nums_.size(); }

  /// Coefficient of q^{(val_num()+i)/den()}.
  Rational coeff_at(std::size_t i) const;
  /// Coefficient of q^exponent; zero for exponents off the support scale.
  /// Throws InvalidPrecision when exponent >= precision().
  Rational coefficient(const Rational& exponent) const;
  Rational leading_coefficient() const;
  std::vector<Rational> coefficients() const;

  const std::vector<Integer>& numerators() const noexcept { return nums_; }
  const Integer& scale() const noexcept { return scale_; }

  friend bool operator==(const QSeries& a, const QSeries& b);

 private:
  void canonicalize();

  long den_ = 1;
  long val_ = 0;
  long prec_ = 0;
  std::vector<Integer> nums_;
  Integer scale_ = 1;

  friend QSeries rescale(const QSeries& a, long den);
  friend QSeries add(const QSeries& a, const QSeries& b);
  friend QSeries scale(const Rational& c, const QSeries& a);
  friend QSeries mul(const QSeries& a, const QSeries& b);
  friend QSeries invert(const QSeries& a);
  friend QSeries substitute_power(const QSeries& a, long m);
  friend QSeries half_twist(const QSeries& a);
  friend QSeries truncate(const QSeries& a, const Rational& prec);
};

/// c q^{num/den} + O(q^prec).  Throws InvalidPrecision when prec <= num/den.
QSeries monomial(const Rational& c, long num, long den, const Rational& prec);

/// Re-express `a` on the finer exponent scale 1/den (den must be a multiple of
/// a.den()).  The result is deliberately left uncanonicalized.
QSeries rescale(const QSeries& a, long den);

QSeries add(const QSeries& a, const QSeries& b);
QSeries neg(const QSeries& a);
QSeries sub(const QSeries& a, const QSeries& b);
QSeries scale(const Rational& c, const QSeries& a);

/// Cauchy product.  Precision is tracked relative to valuation:
/// prec = min(prec_a + v_b, prec_b + v_a).
QSeries mul(const QSeries& a, const QSeries& b);
QSeries pow(const QSeries& a, unsigned long n);
/// Throws NotInvertible on exact-zero-so-far input.
QSeries invert(const QSeries& a);

/// q -> q^m.
QSeries substitute_power(const QSeries& a, long m);
/// tau -> tau + 1 on series with D | 2, i.e. q^{1/2} -> -q^{1/2}.
QSeries half_twist(const QSeries& a);
/// Lower the precision to at most `prec` (never raises it).
QSeries truncate(const QSeries& a, const Rational& prec);

inline QSeries operator+(const QSeries& a, const QSeries& b) { return add(a, b); }
inline QSeries operator-(const QSeries& a, const QSeries& b) { return sub(a, b); }
inline QSeries operator-(const QSeries& a) { return neg(a); }
inline QSeries operator*(const QSeries& a, const QSeries& b) { return mul(a, b); }
inline QSeries operator*(const Rational& c, const QSeries& a) { return scale(c, a); }

// Lambert-series primitives.

/// sum_{n>=1} sigma_k(n) q^{m n} + O(q^prec).
QSeries sigma_series(unsigned k, long m, long prec);

/// q-expansion of 1/sin(pi (c tau + b))^2 for b in {0, 1/2}:
/// -4 sum_{d>=1} d eps^d q^{c d} with eps = e^{2 i pi b}.  c = 0 is only
/// allowed with b = 1/2, where the value is the constant 1.
QSeries inv_sin2(const Rational& c, const Rational& b, long prec);

/// "1 + 6q + 18q^2 - (9/2)q^(5/2) + O(q^5)".
std::string to_display_string(const QSeries& a);
/// "1/1*q^{0} + 6/1*q^{1} + ... + O(q^{5})".
std::string to_diagnostic_string(const QSeries& a);
std::ostream& operator<<(std::ostream& os, const QSeries& a);

}  // namespace qmodular
