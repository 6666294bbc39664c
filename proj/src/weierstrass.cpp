#include "qmodular/weierstrass.hpp"

#include <map>
#include <mutex>

namespace qmodular {

namespace {

const Rational kHalf(1, 2);

// Sum of weighted 1/sin^2 Lambert terms, accumulated on the exponent scale 1/2.
class LambertSum {
 public:
  explicit LambertSum(long prec) : prec2_(2 * prec), nums_(static_cast<std::size_t>(std::max(2 * prec, 0L))) {}

  // weight * 1/sin(pi(c tau + b))^2 with c taken up to sign
  void add(Rational c, const Rational& b, long weight) {
    if (c < 0) c = -c;
    if (c == 0) {
      if (b == 0) throw Error(ErrorKind::PoleAtArgument, "argument lies on a pole");
      constant_ += weight;
      return;
    }
    const long c2 = Rational(c * 2).get_num().get_si();
    const bool alternate = (b == kHalf);
    for (long d = 1; c2 * d < prec2_; ++d) {
      long v = -4 * d * weight;
      if (alternate && (d % 2 == 1)) v = -v;
      nums_[static_cast<std::size_t>(c2 * d)] += v;
    }
  }

  // Whether a term with folded exponent |c| contributes below the precision.
  bool reaches(const Rational& c) const { return abs(c) * 2 < prec2_; }

  void add_constant(const Rational& c) { constant_ += c; }

  QSeries finish() {
    if (prec2_ <= 0) return QSeries::zero(2, prec2_);
    const Integer den = constant_.get_den();
    if (den != 1) {
      for (auto& n : nums_) n *= den;
    }
    nums_[0] += constant_.get_num();
    return QSeries::from_integers(2, 0, std::move(nums_), den, prec2_);
  }

 private:
  long prec2_;
  std::vector<Integer> nums_;
  Rational constant_ = 0;
};

void check_arg(const TorsionArg& z) {
  if (z.m < 1) throw Error(ErrorKind::InvalidArgument, "lattice multiplier must be positive");
  if (z.b != 0 && z.b != kHalf) throw Error(ErrorKind::InvalidArgument, "b must be 0 or 1/2");
  if (z.a.get_den() > 2) throw Error(ErrorKind::InvalidArgument, "a must have denominator 1 or 2");
}

Rational flip_half(const Rational& b) { return b == 0 ? kHalf : Rational(0); }

}  // namespace

QSeries wp_hat(const TorsionArg& z, long prec) {
  check_arg(z);
  if (prec < 1) throw Error(ErrorKind::InvalidPrecision, "wp_hat needs prec >= 1");
  const Rational m(z.m);
  // reduce a into [0, m)
  Rational a = z.a - m * floor_long(z.a / m);
  if (a == 0 && z.b == 0) throw Error(ErrorKind::PoleAtArgument, "wp_hat at a lattice point");
  LambertSum sum(prec);
  sum.add_constant(Rational(-1, 3));
  sum.add(a, z.b, 1);
  for (long n = 1;; ++n) {
    const Rational nm = m * n;
    const Rational lo = nm - a;  // smallest of the three exponents, a < m
    if (!sum.reaches(lo)) break;
    sum.add(nm + a, z.b, 1);
    sum.add(lo, z.b, 1);
    sum.add(nm, 0, -2);
  }
  return sum.finish();
}

QSeries wpt_hat(const TorsionArg& z, long prec) {
  check_arg(z);
  if (prec < 1) throw Error(ErrorKind::InvalidPrecision, "wpt_hat needs prec >= 1");
  const Rational m(z.m);
  const Rational shift = flip_half(z.b);
  LambertSum sum(prec);
  // n ranges over all integers with |(n+1/2)m + a| or |(n+1/2)m| below prec
  const long span = ceil_long((abs(z.a) + prec) / m) + 1;
  for (long n = -span - 1; n <= span; ++n) {
    const Rational base = (Rational(n) + kHalf) * m;
    const Rational c = base + z.a;
    if (sum.reaches(c)) sum.add(c, shift, 1);
    if (sum.reaches(base)) sum.add(base, kHalf, -1);
  }
  return sum.finish();
}

QSeries phi_N(int N, long prec, PhiMode mode) {
  if (N < 2) throw Error(ErrorKind::UnknownLevel, "Phi_N needs N >= 2");
  if (mode == PhiMode::Divisor) {
    QSeries s = sigma_series(1, 1, prec) - Rational(N) * sigma_series(1, N, prec);
    return QSeries::one(prec) + Rational(24, N - 1) * s;
  }
  const long n = N / 2;
  QSeries acc = QSeries::zero(1, prec);
  for (long k = 1; k < (N % 2 == 0 ? n : n + 1); ++k) acc = acc + wp_hat({Rational(k), 0, N}, prec);
  if (N % 2 == 1) return Rational(-3, n) * acc;
  acc = acc + kHalf * wp_hat({Rational(n), 0, N}, prec);
  return Rational(-6, 2 * n - 1) * acc;
}

Rational bernoulli(unsigned n) {
  static std::mutex lock;
  static std::vector<Rational> cache{Rational(1)};
  std::lock_guard guard(lock);
  // sum_{j=0}^{k} C(k+1, j) B_j = 0
  while (cache.size() <= n) {
    const unsigned k = static_cast<unsigned>(cache.size());
    Rational s = 0;
    Integer binom = 1;  // C(k+1, j)
    for (unsigned j = 0; j < k; ++j) {
      s += binom * cache[j];
      binom = binom * (k + 1 - j) / (j + 1);
    }
    Rational b = -s / Rational(k + 1);
    b.canonicalize();
    cache.push_back(b);
  }
  return cache[n];
}

QSeries eisenstein(int k, long m, long prec) {
  if (k < 4 || k % 2 != 0) {
    throw Error(ErrorKind::UnsupportedWeight, "Eisenstein series needs even weight >= 4, got " + std::to_string(k));
  }
  if (m < 1) throw Error(ErrorKind::InvalidArgument, "Eisenstein multiplier must be positive");
  Rational c = Rational(-2 * k) / bernoulli(static_cast<unsigned>(k));
  c.canonicalize();
  return QSeries::one(prec) + c * sigma_series(static_cast<unsigned>(k - 1), m, prec);
}

QSeries twpa_half_product(long prec) {
  if (prec < 1) throw Error(ErrorKind::InvalidPrecision, "twpa_half_product needs prec >= 1");
  // Work in t = q^{1/2}.  An even length keeps the precision exact when a
  // factor collapses to integer exponents.
  const long len = 2 * prec;
  auto product = [len](long start, long step, long sign) {
    std::vector<Integer> p(static_cast<std::size_t>(len));
    p[0] = 1;
    for (long e = start; e < len; e += step) {
      for (long i = len - 1; i >= e; --i) {
        const Integer& lower = p[static_cast<std::size_t>(i - e)];
        if (lower == 0) continue;
        if (sign > 0) p[static_cast<std::size_t>(i)] += lower;
        else p[static_cast<std::size_t>(i)] -= lower;
      }
    }
    return QSeries::from_integers(2, 0, std::move(p), 1, len);
  };
  const QSeries a = product(4, 4, -1);  // prod (1 - q^{2n+2})
  const QSeries b = product(1, 2, -1);  // prod (1 - q^{n+1/2})
  const QSeries c = product(2, 2, +1);  // prod (1 + q^{n+1})
  const QSeries ratio = pow(c * c * invert(b * b), 2);
  const QSeries body = pow(a, 4) * pow(b, 4) * ratio;
  return truncate(monomial(Rational(-16), 1, 2, Rational(1, 2) + Rational(len, 2)) * body, Rational(prec));
}

}  // namespace qmodular
