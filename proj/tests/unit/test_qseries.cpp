#include <gtest/gtest.h>

#include <algorithm>
#include <map>
#include <random>

#include "../support/series_helpers.hpp"
#include "qmodular/qseries.hpp"

using namespace qmodular;
using qmtest::coeffs;
using qmtest::poly;
using Strs = std::vector<std::string>;

TEST(QSeriesBasics, MonomialConstantOne) {
  const QSeries f = monomial(Rational(1), 0, 1, Rational(10));
  EXPECT_EQ(f, QSeries::one(10));
  EXPECT_EQ(to_display_string(f), "1 + O(q^10)");
}

TEST(QSeriesBasics, MonomialHalfExponent) {
  const QSeries f = monomial(Rational(1), 1, 2, Rational(3));
  EXPECT_EQ(f.den(), 2);
  EXPECT_EQ(f.valuation(), make_rational(1, 2));
  EXPECT_EQ(f.precision(), Rational(3));
  EXPECT_EQ(to_display_string(f), "q^(1/2) + O(q^3)");
}

TEST(QSeriesBasics, MonomialRejectsPrecisionAtExponent) {
  try {
    monomial(Rational(1), 2, 1, Rational(2));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::InvalidPrecision);
  }
}

TEST(QSeriesBasics, ConstantScalar) {
  const QSeries f = monomial(make_rational(-1, 3), 0, 1, Rational(5));
  EXPECT_EQ(to_display_string(f), "-1/3 + O(q^5)");
}

TEST(QSeriesArith, AddAndScale) {
  const QSeries s = poly({1, 24}, 2) + poly({-1, -8}, 2);
  EXPECT_EQ(to_display_string(s), "16q + O(q^2)");
  const QSeries t = scale(Rational(-3), QSeries::from_coefficients(1, 0, {make_rational(-1, 3), Rational(-8)}, 2));
  EXPECT_EQ(t, poly({1, 24}, 2));
}

TEST(QSeriesArith, AddNegIsZero) {
  const QSeries f = poly({3, -1, 4, 1, -5}, 5, 2);
  const QSeries z = f + neg(f);
  EXPECT_TRUE(z.is_zero());
  EXPECT_EQ(z.precision(), Rational(5));
}

TEST(QSeriesArith, MulHandExamples) {
  EXPECT_EQ(coeffs(poly({1, -8, 24}, 3) * poly({1, 8}, 3), 0, 3), (Strs{"1", "0", "-40"}));
  const QSeries d2 = poly({1, 8, 28, 64}, 5, 1);
  const QSeries sq = d2 * d2;
  EXPECT_EQ(sq.precision(), Rational(6));
  EXPECT_EQ(coeffs(sq, 2, 5), (Strs{"1", "16", "120"}));
  EXPECT_EQ(d2 * QSeries::one(50), d2);
}

TEST(QSeriesArith, MulPrecisionIsRelative) {
  // (q^10 + O(q^13)) * (1 + O(q^5)) = q^10 + O(q^13)
  const QSeries a = poly({1, 0, 0}, 13, 10);
  const QSeries b = poly({1}, 5);
  EXPECT_EQ((a * b).precision(), Rational(13));
}

TEST(QSeriesArith, Pow) {
  EXPECT_EQ(coeffs(pow(poly({1, 24}, 3), 2), 0, 3), (Strs{"1", "48", "576"}));
  const QSeries d2 = poly({1, 8, 28, 64}, 5, 1);
  EXPECT_EQ(pow(d2, 1), d2);
  const QSeries big = pow(d2, 336);
  EXPECT_EQ(big.valuation(), Rational(336));
  EXPECT_EQ(big.precision(), Rational(340));
  const QSeries p0 = pow(d2, 0);
  EXPECT_EQ(p0, QSeries::one(4));
}

TEST(QSeriesArith, Invert) {
  const QSeries g = invert(poly({1, -1}, 6));
  EXPECT_EQ(coeffs(g, 0, 6), (Strs{"1", "1", "1", "1", "1", "1"}));
  EXPECT_EQ(invert(QSeries::one(7)), QSeries::one(7));
  const QSeries f = poly({1, -8, 24, -32}, 4);
  EXPECT_EQ(f * invert(f), QSeries::one(4));
  const QSeries h = invert(poly({2, 1}, 4, 3));
  EXPECT_EQ(h.valuation(), Rational(-3));
  EXPECT_EQ(h.leading_coefficient(), make_rational(1, 2));
}

TEST(QSeriesArith, InvertZeroThrows) {
  try {
    invert(QSeries::zero(1, 5));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::NotInvertible);
  }
}

TEST(QSeriesTransforms, SubstitutePower) {
  EXPECT_EQ(substitute_power(poly({1}, 2, 1), 5), poly({1}, 10, 5));
  const QSeries d2 = poly({1, 8, 28}, 4, 1);
  const QSeries s = substitute_power(d2, 5);
  EXPECT_EQ(s.precision(), Rational(20));
  EXPECT_EQ(coeffs(s, 5, 20), (Strs{"1", "0", "0", "0", "0", "8", "0", "0", "0", "0", "28", "0", "0", "0", "0"}));
  EXPECT_EQ(substitute_power(d2, 1), d2);
}

TEST(QSeriesTransforms, HalfTwist) {
  EXPECT_EQ(half_twist(poly({1}, 4, 1)), poly({1}, 4, 1));
  const QSeries h = monomial(Rational(1), 1, 2, Rational(3));
  EXPECT_EQ(half_twist(h), neg(h));
  const QSeries f = QSeries::from_coefficients(2, 1, {Rational(3), Rational(-1), Rational(2), Rational(7)}, 6);
  EXPECT_EQ(half_twist(half_twist(f)), f);
}

TEST(QSeriesTransforms, HalfTwistRejectsThirds) {
  const QSeries f = QSeries::from_coefficients(3, 1, {Rational(1)}, 4);
  try {
    half_twist(f);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::UnsupportedTwist);
  }
}

TEST(QSeriesCanonical, MinimalDenominator) {
  // Written on scale 1/2 but only even exponents are occupied.
  const QSeries f = QSeries::from_coefficients(2, 0, {Rational(1), Rational(0), Rational(5)}, 6);
  EXPECT_EQ(f.den(), 1);
  EXPECT_EQ(f, poly({1, 5, 0}, 3));
}

TEST(QSeriesText, Diagnostic) {
  const QSeries f = QSeries::from_coefficients(2, 0, {Rational(1), make_rational(-9, 2)}, 4);
  EXPECT_EQ(to_diagnostic_string(f), "1/1*q^{0} + -9/2*q^{1/2} + O(q^{2})");
  EXPECT_EQ(to_display_string(f), "1 - (9/2)q^(1/2) + O(q^2)");
}

TEST(Lambert, SigmaSeries) {
  EXPECT_EQ(coeffs(sigma_series(1, 1, 5), 0, 5), (Strs{"0", "1", "3", "4", "7"}));
  EXPECT_EQ(coeffs(sigma_series(3, 1, 4), 0, 4), (Strs{"0", "1", "9", "28"}));
  EXPECT_EQ(coeffs(sigma_series(1, 2, 7), 0, 7), (Strs{"0", "0", "1", "0", "3", "0", "4"}));
}

// -4 w / (1 - w)^2 expanded as a geometric series, w = eps q^c.
static std::vector<Rational> geometric_oracle(long c, int eps, long prec) {
  std::vector<Rational> out(static_cast<std::size_t>(prec));
  // 1/(1-w)^2 = sum (j+1) w^j, times -4w.
  for (long j = 0; c * (j + 1) < prec; ++j) {
    const long sign = (eps < 0 && (j + 1) % 2 == 1) ? -1 : 1;
    out[static_cast<std::size_t>(c * (j + 1))] += Rational(-4 * (j + 1) * sign);
  }
  return out;
}

TEST(Lambert, InvSin2HandExamples) {
  EXPECT_EQ(coeffs(inv_sin2(Rational(1), Rational(0), 5), 0, 5), (Strs{"0", "-4", "-8", "-12", "-16"}));
  EXPECT_EQ(coeffs(inv_sin2(Rational(1), make_rational(1, 2), 4), 0, 4), (Strs{"0", "4", "-8", "12"}));
  EXPECT_EQ(inv_sin2(Rational(0), make_rational(1, 2), 9), QSeries::one(9));
}

TEST(Lambert, InvSin2PoleThrows) {
  try {
    inv_sin2(Rational(0), Rational(0), 5);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::PoleAtArgument);
  }
}

TEST(Lambert, InvSin2MatchesGeometricOracle) {
  for (long c = 1; c <= 7; ++c) {
    for (int eps : {1, -1}) {
      const QSeries f = inv_sin2(Rational(c), eps > 0 ? Rational(0) : make_rational(1, 2), 100);
      const auto want = geometric_oracle(c, eps, 100);
      for (long e = 0; e < 100; ++e) ASSERT_EQ(f.coefficient(Rational(e)), want[static_cast<std::size_t>(e)]);
    }
  }
}

TEST(Lambert, InvSin2SignPatterns) {
  const QSeries f = inv_sin2(make_rational(3, 2), Rational(0), 60);
  for (const auto& c : f.coefficients()) EXPECT_LE(c, 0);
  const QSeries g = inv_sin2(Rational(2), make_rational(1, 2), 60);
  for (long d = 1; 2 * d < 60; ++d) {
    EXPECT_EQ(g.coefficient(Rational(2 * d)), Rational(d % 2 == 1 ? 4 * d : -4 * d));
  }
}

// Equality up to the smaller of the two tracked precisions.
static bool agree(const QSeries& a, const QSeries& b) {
  const Rational p = std::min(a.precision(), b.precision());
  return truncate(a, p) == truncate(b, p);
}

// Random small series for property checks.
class RandomSeries {
 public:
  explicit RandomSeries(unsigned seed) : rng_(seed) {}

  QSeries next() {
    std::uniform_int_distribution<long> coef(-9, 9), prec(1, 12), val(0, 3);
    const long v = val(rng_), p = v + prec(rng_);
    std::vector<Rational> cs;
    for (long i = v; i < p; ++i) cs.emplace_back(coef(rng_));
    return QSeries::from_coefficients(1, v, cs, p);
  }

  QSeries unit() {
    QSeries f = next();
    std::vector<Rational> cs = f.coefficients();
    std::uniform_int_distribution<long> lead(1, 9);
    const long p = static_cast<long>(cs.size()) + 1;
    cs.insert(cs.begin(), Rational(lead(rng_)));
    cs.resize(static_cast<std::size_t>(p));
    return QSeries::from_coefficients(1, 0, cs, p);
  }

 private:
  std::mt19937 rng_;
};

TEST(QSeriesProperties, RingAxioms) {
  RandomSeries gen(12345);
  for (int i = 0; i < 1000; ++i) {
    const QSeries f = gen.next(), g = gen.next(), h = gen.next();
    ASSERT_TRUE(agree((f + g) + h, f + (g + h)));
    ASSERT_TRUE(agree(f * (g + h), f * g + f * h)) << f << " | " << g << " | " << h;
    ASSERT_EQ(f * g, g * f);
  }
}

// Naive product of the represented polynomials, cut at the declared precision.
TEST(QSeriesProperties, PrecisionSoundness) {
  RandomSeries gen(777);
  for (int i = 0; i < 300; ++i) {
    const QSeries f = gen.next(), g = gen.next();
    const QSeries p = f * g;
    std::map<long, Rational> full;
    for (long a = 0; a < static_cast<long>(f.size()); ++a) {
      for (long b = 0; b < static_cast<long>(g.size()); ++b) {
        full[f.val_num() + a + g.val_num() + b] += f.coeff_at(static_cast<std::size_t>(a)) *
                                                    g.coeff_at(static_cast<std::size_t>(b));
      }
    }
    for (long e = 0; e < p.precision(); ++e) ASSERT_EQ(p.coefficient(Rational(e)), full[e]);
  }
}

TEST(QSeriesProperties, InvertRoundTrip) {
  RandomSeries gen(4242);
  for (int i = 0; i < 100; ++i) {
    const QSeries f = gen.unit();
    ASSERT_EQ(f * invert(f), QSeries::one(ceil_long(f.precision())));
  }
}

TEST(QSeriesProperties, SubstitutePowerIsHomomorphism) {
  RandomSeries gen(99);
  for (int i = 0; i < 200; ++i) {
    const QSeries f = gen.next(), g = gen.next();
    for (long m : {2L, 3L, 5L}) {
      ASSERT_TRUE(agree(substitute_power(f * g, m), substitute_power(f, m) * substitute_power(g, m)));
      ASSERT_TRUE(agree(substitute_power(f + g, m), substitute_power(f, m) + substitute_power(g, m)));
    }
  }
}

TEST(QSeriesProperties, HalfTwistIsRingInvolution) {
  RandomSeries gen(5);
  for (int i = 0; i < 200; ++i) {
    const QSeries f = substitute_power(gen.next(), 1) * monomial(Rational(1), 1, 2, Rational(20));
    const QSeries g = gen.next();
    ASSERT_EQ(half_twist(half_twist(f)), f);
    ASSERT_TRUE(agree(half_twist(f * g), half_twist(f) * half_twist(g)));
  }
}
