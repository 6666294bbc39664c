#include "qmodular/eta.hpp"

#include <algorithm>
#include <array>
#include <map>

namespace qmodular {

EtaQuotient::EtaQuotient(const std::vector<std::pair<long, long>>& factors) {
  std::map<long, long> merged;
  for (const auto& [m, e] : factors) {
    if (m < 1) throw Error(ErrorKind::InvalidArgument, "eta multiplier must be positive");
    merged[m] += e;
  }
  for (const auto& [m, e] : merged) {
    if (e != 0) factors_.push_back({m, e});
  }
}

Rational EtaQuotient::weight() const {
  long s = 0;
  for (const auto& f : factors_) s += f.e;
  return make_rational(s, 2);
}

Rational EtaQuotient::offset() const {
  long s = 0;
  for (const auto& f : factors_) s += f.m * f.e;
  return make_rational(s, 24);
}

EtaQuotient EtaQuotient::operator*(const EtaQuotient& other) const {
  std::vector<std::pair<long, long>> all;
  for (const auto& f : factors_) all.emplace_back(f.m, f.e);
  for (const auto& f : other.factors_) all.emplace_back(f.m, f.e);
  return EtaQuotient(all);
}

EtaQuotient EtaQuotient::power(long n) const {
  std::vector<std::pair<long, long>> all;
  for (const auto& f : factors_) all.emplace_back(f.m, f.e * n);
  return EtaQuotient(all);
}

QSeries euler_product(long m, long prec) {
  if (m < 1) throw Error(ErrorKind::InvalidArgument, "euler_product needs m >= 1");
  if (prec < 1) throw Error(ErrorKind::InvalidPrecision, "euler_product needs prec >= 1");
  std::vector<Integer> nums(static_cast<std::size_t>(prec));
  nums[0] = 1;
  // generalized pentagonal numbers k(3k-1)/2 for k = 1, -1, 2, -2, ...
  for (long k = 1;; ++k) {
    const long sign = (k % 2 == 0) ? 1 : -1;
    const long p1 = m * (k * (3 * k - 1) / 2);
    const long p2 = m * (k * (3 * k + 1) / 2);
    if (p1 >= prec) break;
    nums[static_cast<std::size_t>(p1)] = sign;
    if (p2 < prec) nums[static_cast<std::size_t>(p2)] = sign;
  }
  return QSeries::from_integers(1, 0, std::move(nums), 1, prec);
}

QSeries expand(const EtaQuotient& spec, long prec) {
  const Rational off = spec.offset();
  if (off.get_den() != 1 && off.get_den() != 2) {
    throw Error(ErrorKind::FractionalExponent,
                "eta quotient has leading exponent " + to_string(off) + " with denominator not dividing 2");
  }
  if (prec <= off) {
    throw Error(ErrorKind::InvalidPrecision,
                "precision " + std::to_string(prec) + " does not exceed leading exponent " + to_string(off));
  }
  // Number of integer-exponent terms needed in the product part.
  const long len = ceil_long(Rational(prec) - off);

  // q F'/F = sum_n c_n q^n with c_n = -sum_i e_i m_i sigma_1(n / m_i).
  std::vector<long> c(static_cast<std::size_t>(len), 0);
  for (const auto& f : spec.factors()) {
    for (long d = 1; d * f.m < len; ++d) {
      for (long n = d * f.m; n < len; n += d * f.m) c[static_cast<std::size_t>(n)] -= f.e * f.m * d;
    }
  }
  // n F_n = sum_{k=1..n} c_k F_{n-k}
  std::vector<Integer> g(static_cast<std::size_t>(len));
  g[0] = 1;
  Integer acc;
  for (long n = 1; n < len; ++n) {
    acc = 0;
    for (long k = 1; k <= n; ++k) {
      const long ck = c[static_cast<std::size_t>(k)];
      if (ck == 0) continue;
      const Integer& gk = g[static_cast<std::size_t>(n - k)];
      if (ck > 0) mpz_addmul_ui(acc.get_mpz_t(), gk.get_mpz_t(), static_cast<unsigned long>(ck));
      else mpz_submul_ui(acc.get_mpz_t(), gk.get_mpz_t(), static_cast<unsigned long>(-ck));
    }
    mpz_divexact_ui(g[static_cast<std::size_t>(n)].get_mpz_t(), acc.get_mpz_t(), static_cast<unsigned long>(n));
  }

  const long den = off.get_den().get_si();
  const long v = Rational(off * den).get_num().get_si();
  std::vector<Integer> nums(static_cast<std::size_t>(len * den));
  for (long i = 0; i < len; ++i) nums[static_cast<std::size_t>(i * den)] = std::move(g[static_cast<std::size_t>(i)]);
  QSeries s = QSeries::from_integers(den, v, std::move(nums), 1, v + len * den);
  return truncate(s, Rational(prec));
}

const EtaQuotient& delta_spec(int N) {
  static const std::array<EtaQuotient, 10> table = {
      EtaQuotient({{1, 24}}),
      EtaQuotient({{1, -8}, {2, 16}}),
      EtaQuotient({{1, -6}, {3, 18}}),
      EtaQuotient({{2, -4}, {4, 8}}),
      EtaQuotient({{1, -2}, {5, 10}}),
      EtaQuotient({{1, 2}, {2, -4}, {3, -6}, {6, 12}}),
      EtaQuotient({{1, -2}, {7, 14}}),
      EtaQuotient({{4, -4}, {8, 8}}),
      EtaQuotient({{3, -2}, {9, 6}}),
      EtaQuotient({{1, 2}, {2, -4}, {5, -10}, {10, 20}}),
  };
  if (N < 1 || N > 10) throw Error(ErrorKind::UnknownLevel, "level " + std::to_string(N) + " is outside 1..10");
  return table[static_cast<std::size_t>(N - 1)];
}

QSeries delta(int N, long prec) { return expand(delta_spec(N), prec); }

}  // namespace qmodular
