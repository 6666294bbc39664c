#include "qmodular/qseries.hpp"

namespace qmodular {

QSeries sigma_series(unsigned k, long m, long prec) {
  if (m < 1) throw Error(ErrorKind::InvalidArgument, "sigma_series needs m >= 1");
  if (prec < 1) throw Error(ErrorKind::InvalidPrecision, "sigma_series needs prec >= 1");
  // n ranges over 1..nmax with m*n < prec
  const long nmax = (prec - 1) / m;
  std::vector<Integer> sig(static_cast<std::size_t>(nmax + 1));
  Integer dk;
  for (long d = 1; d <= nmax; ++d) {
    mpz_ui_pow_ui(dk.get_mpz_t(), static_cast<unsigned long>(d), k);
    for (long n = d; n <= nmax; n += d) sig[static_cast<std::size_t>(n)] += dk;
  }
  std::vector<Integer> nums(static_cast<std::size_t>(prec));
  for (long n = 1; n <= nmax; ++n) nums[static_cast<std::size_t>(n * m)] = std::move(sig[static_cast<std::size_t>(n)]);
  return QSeries::from_integers(1, 0, std::move(nums), 1, prec);
}

QSeries inv_sin2(const Rational& c, const Rational& b, long prec) {
  const bool half = (b == Rational(1, 2));
  if (!half && b != 0) throw Error(ErrorKind::InvalidArgument, "inv_sin2 shift must be 0 or 1/2");
  if (c < 0) throw Error(ErrorKind::InvalidArgument, "inv_sin2 needs c >= 0");
  const long den = c.get_den().get_si();
  if (den > 2) throw Error(ErrorKind::InvalidArgument, "inv_sin2 needs c with denominator 1 or 2");
  if (c == 0) {
    if (!half) throw Error(ErrorKind::PoleAtArgument, "1/sin(pi z)^2 at z = 0");
    return QSeries::one(prec);
  }
  const long cn = c.get_num().get_si();
  const long p = prec * den;
  if (p <= 0) return QSeries::zero(den, p);
  std::vector<Integer> nums(static_cast<std::size_t>(p));
  for (long d = 1; cn * d < p; ++d) {
    long v = -4 * d;
    if (half && (d % 2 == 1)) v = -v;
    nums[static_cast<std::size_t>(cn * d)] = v;
  }
  return QSeries::from_integers(den, 0, std::move(nums), 1, p);
}

}  // namespace qmodular
