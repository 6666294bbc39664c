#include "qmodular/qseries.hpp"

#include <algorithm>
#include <numeric>
#include <ostream>
#include <sstream>

namespace qmodular {

namespace {

long lcm_long(long a, long b) { return std::lcm(a, b); }

Integer lcm_int(const Integer& a, const Integer& b) {
  Integer r;
  mpz_lcm(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return r;
}

}  // namespace

QSeries QSeries::from_integers(long den, long val_num, std::vector<Integer> nums, Integer scale,
                               long prec_num) {
  if (den < 1) throw Error(ErrorKind::InvalidArgument, "exponent denominator must be positive");
  if (scale == 0) throw Error(ErrorKind::InvalidArgument, "zero coefficient scale");
  if (prec_num < val_num) val_num = prec_num;
  nums.resize(static_cast<std::size_t>(prec_num - val_num));
  QSeries s;
  s.den_ = den;
  s.val_ = val_num;
  s.prec_ = prec_num;
  s.nums_ = std::move(nums);
  s.scale_ = std::move(scale);
  s.canonicalize();
  return s;
}

QSeries QSeries::from_coefficients(long den, long val_num, const std::vector<Rational>& coeffs,
                                   long prec_num) {
  Integer common = 1;
  for (const auto& c : coeffs) common = lcm_int(common, c.get_den());
  std::vector<Integer> nums;
  nums.reserve(coeffs.size());
  for (const auto& c : coeffs) nums.emplace_back(c.get_num() * (common / c.get_den()));
  return from_integers(den, val_num, std::move(nums), common, prec_num);
}

QSeries QSeries::zero(long den, long prec_num) { return from_integers(den, prec_num, {}, 1, prec_num); }

QSeries QSeries::one(long prec) {
  if (prec <= 0) throw Error(ErrorKind::InvalidPrecision, "one() needs positive precision");
  return from_integers(1, 0, {Integer(1)}, 1, prec);
}

void QSeries::canonicalize() {
  std::size_t first = 0;
  while (first < nums_.size() && nums_[first] == 0) ++first;
  if (first == nums_.size()) {
    nums_.clear();
    val_ = prec_;
    scale_ = 1;
  } else {
    nums_.erase(nums_.begin(), nums_.begin() + static_cast<std::ptrdiff_t>(first));
    val_ += static_cast<long>(first);
    if (scale_ < 0) {
      scale_ = -scale_;
      for (auto& n : nums_) n = -n;
    }
    Integer g = scale_;
    for (const auto& n : nums_) {
      if (g == 1) break;
      if (n != 0) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), n.get_mpz_t());
    }
    if (g != 1) {
      for (auto& n : nums_) mpz_divexact(n.get_mpz_t(), n.get_mpz_t(), g.get_mpz_t());
      mpz_divexact(scale_.get_mpz_t(), scale_.get_mpz_t(), g.get_mpz_t());
    }
  }

  if (den_ == 1) return;
  long g = den_;
  if (!nums_.empty()) {
    for (std::size_t i = 0; i < nums_.size() && g != 1; ++i) {
      if (nums_[i] != 0) g = std::gcd(g, std::abs(val_ + static_cast<long>(i)));
    }
  }
  if (g == 1) return;
  const long new_prec = floor_div(prec_, g);
  if (nums_.empty()) {
    den_ /= g;
    prec_ = val_ = new_prec;
    return;
  }
  const long new_val = val_ / g;
  std::vector<Integer> packed(static_cast<std::size_t>(new_prec - new_val));
  for (std::size_t i = 0; i < nums_.size(); ++i) {
    const long e = val_ + static_cast<long>(i);
    if (e % g != 0) continue;
    const long ne = e / g;
    if (ne >= new_prec) break;
    packed[static_cast<std::size_t>(ne - new_val)] = std::move(nums_[i]);
  }
  den_ /= g;
  val_ = new_val;
  prec_ = new_prec;
  nums_ = std::move(packed);
}

Rational QSeries::coeff_at(std::size_t i) const {
  Rational r(nums_.at(i), scale_);
  r.canonicalize();
  return r;
}

Rational QSeries::coefficient(const Rational& exponent) const {
  if (exponent >= precision()) {
    throw Error(ErrorKind::InvalidPrecision,
                "coefficient of q^" + to_string(exponent) + " requested beyond O(q^" +
                    to_string(precision()) + ")");
  }
  Rational scaled = exponent * den_;
  if (!is_integer(scaled)) return 0;
  const long e = scaled.get_num().get_si();
  if (e < val_) return 0;
  return coeff_at(static_cast<std::size_t>(e - val_));
}

Rational QSeries::leading_coefficient() const {
  if (nums_.empty()) return 0;
  return coeff_at(0);
}

std::vector<Rational> QSeries::coefficients() const {
  std::vector<Rational> out;
  out.reserve(nums_.size());
  for (std::size_t i = 0; i < nums_.size(); ++i) out.push_back(coeff_at(i));
  return out;
}

bool operator==(const QSeries& a, const QSeries& b) {
  return a.den_ == b.den_ && a.val_ == b.val_ && a.prec_ == b.prec_ && a.scale_ == b.scale_ &&
         a.nums_ == b.nums_;
}

QSeries monomial(const Rational& c, long num, long den, const Rational& prec) {
  if (den < 1) throw Error(ErrorKind::InvalidArgument, "monomial exponent denominator must be >= 1");
  if (prec <= make_rational(num, den)) {
    throw Error(ErrorKind::InvalidPrecision, "precision must exceed the monomial exponent");
  }
  const long d = lcm_long(den, prec.get_den().get_si());
  const long v = num * (d / den);
  const long p = Rational(prec * d).get_num().get_si();
  std::vector<Integer> nums(static_cast<std::size_t>(p - v));
  nums[0] = c.get_num();
  return QSeries::from_integers(d, v, std::move(nums), c.get_den(), p);
}

QSeries rescale(const QSeries& a, long den) {
  if (den == a.den_) return a;
  if (den % a.den_ != 0) throw Error(ErrorKind::InvalidArgument, "rescale to a non-multiple scale");
  const long f = den / a.den_;
  QSeries r;
  r.den_ = den;
  r.val_ = a.val_ * f;
  r.prec_ = a.prec_ * f;
  r.scale_ = a.scale_;
  r.nums_.resize(static_cast<std::size_t>(r.prec_ - r.val_));
  for (std::size_t i = 0; i < a.nums_.size(); ++i) r.nums_[i * static_cast<std::size_t>(f)] = a.nums_[i];
  return r;
}

QSeries add(const QSeries& a, const QSeries& b) {
  const long d = lcm_long(a.den_, b.den_);
  const QSeries ra = rescale(a, d);
  const QSeries rb = rescale(b, d);
  const long p = std::min(ra.prec_, rb.prec_);
  const long v = std::min({ra.val_, rb.val_, p});
  const Integer l = lcm_int(ra.scale_, rb.scale_);
  const Integer fa = l / ra.scale_;
  const Integer fb = l / rb.scale_;
  std::vector<Integer> nums(static_cast<std::size_t>(p - v));
  auto accumulate = [&](const QSeries& s, const Integer& f) {
    for (std::size_t i = 0; i < s.nums_.size(); ++i) {
      const long e = s.val_ + static_cast<long>(i);
      if (e >= p) break;
      if (s.nums_[i] == 0) continue;
      mpz_addmul(nums[static_cast<std::size_t>(e - v)].get_mpz_t(), s.nums_[i].get_mpz_t(), f.get_mpz_t());
    }
  };
  accumulate(ra, fa);
  accumulate(rb, fb);
  return QSeries::from_integers(d, v, std::move(nums), l, p);
}

QSeries neg(const QSeries& a) { return scale(Rational(-1), a); }

QSeries sub(const QSeries& a, const QSeries& b) { return add(a, neg(b)); }

QSeries scale(const Rational& c, const QSeries& a) {
  if (c == 0) return QSeries::zero(a.den_, a.prec_);
  QSeries r = a;
  for (auto& n : r.nums_) n *= c.get_num();
  r.scale_ *= c.get_den();
  r.canonicalize();
  return r;
}

QSeries mul(const QSeries& a, const QSeries& b) {
  const long d = lcm_long(a.den_, b.den_);
  const QSeries ra = rescale(a, d);
  const QSeries rb = rescale(b, d);
  const long v = ra.val_ + rb.val_;
  const long p = std::min(ra.prec_ + rb.val_, rb.prec_ + ra.val_);
  const long len = p - v;
  std::vector<Integer> nums(static_cast<std::size_t>(std::max(len, 0L)));
  const long la = static_cast<long>(ra.nums_.size());
  const long lb = static_cast<long>(rb.nums_.size());
  for (long i = 0; i < la && i < len; ++i) {
    const Integer& ai = ra.nums_[static_cast<std::size_t>(i)];
    if (ai == 0) continue;
    const long jmax = std::min(lb, len - i);
    for (long j = 0; j < jmax; ++j) {
      const Integer& bj = rb.nums_[static_cast<std::size_t>(j)];
      if (bj == 0) continue;
      mpz_addmul(nums[static_cast<std::size_t>(i + j)].get_mpz_t(), ai.get_mpz_t(), bj.get_mpz_t());
    }
  }
  return QSeries::from_integers(d, v, std::move(nums), ra.scale_ * rb.scale_, p);
}

QSeries pow(const QSeries& a, unsigned long n) {
  if (n == 0) {
    const long rel = a.prec_num() - a.val_num();
    if (rel <= 0) return QSeries::zero(1, 0);
    return QSeries::from_integers(a.den(), 0, {Integer(1)}, 1, rel);
  }
  QSeries base = a;
  QSeries result;
  bool have = false;
  while (true) {
    if (n & 1UL) {
      result = have ? mul(result, base) : base;
      have = true;
    }
    n >>= 1;
    if (n == 0) break;
    base = mul(base, base);
  }
  return result;
}

QSeries invert(const QSeries& a) {
  if (a.is_zero()) throw Error(ErrorKind::NotInvertible, "cannot invert a zero-so-far series");
  const std::size_t r = a.nums_.size();
  const Integer& u0 = a.nums_[0];
  const bool unit = (u0 == 1);
  // powers of u0, needed only when the leading numerator is not 1
  std::vector<Integer> u0pow;
  if (!unit) {
    u0pow.resize(r + 1);
    u0pow[0] = 1;
    for (std::size_t i = 1; i <= r; ++i) u0pow[i] = u0pow[i - 1] * u0;
  }
  // B_k = -sum_{i=1..k} U_i B_{k-i} u0^{i-1};  1/U = sum B_k / u0^{k+1} t^k
  std::vector<Integer> big(r);
  big[0] = 1;
  Integer term;
  for (std::size_t k = 1; k < r; ++k) {
    Integer acc = 0;
    for (std::size_t i = 1; i <= k; ++i) {
      const Integer& ui = a.nums_[i];
      if (ui == 0) continue;
      if (unit) {
        mpz_addmul(acc.get_mpz_t(), ui.get_mpz_t(), big[k - i].get_mpz_t());
      } else {
        term = ui * big[k - i];
        mpz_addmul(acc.get_mpz_t(), term.get_mpz_t(), u0pow[i - 1].get_mpz_t());
      }
    }
    big[k] = -acc;
  }
  std::vector<Integer> nums(r);
  for (std::size_t k = 0; k < r; ++k) {
    nums[k] = a.scale_ * big[k];
    if (!unit) nums[k] *= u0pow[r - 1 - k];
  }
  Integer scale = unit ? Integer(1) : u0pow[r];
  return QSeries::from_integers(a.den_, -a.val_, std::move(nums), scale, -a.val_ + static_cast<long>(r));
}

QSeries substitute_power(const QSeries& a, long m) {
  if (m < 1) throw Error(ErrorKind::InvalidArgument, "substitute_power needs m >= 1");
  QSeries r;
  r.den_ = a.den_;
  r.val_ = a.val_ * m;
  r.prec_ = a.prec_ * m;
  r.scale_ = a.scale_;
  r.nums_.resize(static_cast<std::size_t>(r.prec_ - r.val_));
  for (std::size_t i = 0; i < a.nums_.size(); ++i) r.nums_[i * static_cast<std::size_t>(m)] = a.nums_[i];
  r.canonicalize();
  return r;
}

QSeries half_twist(const QSeries& a) {
  if (a.den_ > 2) {
    throw Error(ErrorKind::UnsupportedTwist, "half_twist needs exponent denominator 1 or 2");
  }
  if (a.den_ == 1) return a;
  QSeries r = a;
  for (std::size_t i = 0; i < r.nums_.size(); ++i) {
    if ((r.val_ + static_cast<long>(i)) % 2 != 0) r.nums_[i] = -r.nums_[i];
  }
  return r;
}

QSeries truncate(const QSeries& a, const Rational& prec) {
  const long p = floor_long(prec * a.den_);
  if (p >= a.prec_) return a;
  QSeries r = a;
  r.prec_ = p;
  if (p <= r.val_) {
    r.nums_.clear();
    r.val_ = p;
  } else {
    r.nums_.resize(static_cast<std::size_t>(p - r.val_));
  }
  r.canonicalize();
  return r;
}

namespace {

std::string exponent_text(const Rational& e, bool braces) {
  if (braces) return "{" + to_string(e) + "}";
  if (is_integer(e)) return to_string(e);
  return "(" + to_string(e) + ")";
}

}  // namespace

std::string to_display_string(const QSeries& a) {
  std::ostringstream out;
  bool first = true;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a.numerators()[i] == 0) continue;
    const Rational c = a.coeff_at(i);
    const Rational e = make_rational(a.val_num() + static_cast<long>(i), a.den());
    const bool negative = c < 0;
    const Rational mag = abs(c);
    if (first) {
      if (negative) out << "-";
    } else {
      out << (negative ? " - " : " + ");
    }
    first = false;
    if (e == 0) {
      out << to_string(mag);
      continue;
    }
    if (mag != 1) {
      if (is_integer(mag)) out << to_string(mag);
      else out << "(" << to_string(mag) << ")";
    }
    out << "q";
    if (e != 1) out << "^" << exponent_text(e, false);
  }
  out << (first ? "" : " + ") << "O(q^" << exponent_text(a.precision(), false) << ")";
  return out.str();
}

std::string to_diagnostic_string(const QSeries& a) {
  std::ostringstream out;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a.numerators()[i] == 0) continue;
    const Rational c = a.coeff_at(i);
    out << c.get_num().get_str() << "/" << c.get_den().get_str() << "*q^"
        << exponent_text(make_rational(a.val_num() + static_cast<long>(i), a.den()), true) << " + ";
  }
  out << "O(q^" << exponent_text(a.precision(), true) << ")";
  return out.str();
}

std::ostream& operator<<(std::ostream& os, const QSeries& a) { return os << to_display_string(a); }

}  // namespace qmodular
