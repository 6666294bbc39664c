#include <gtest/gtest.h>

#include <random>

#include "qmodular/expr_parser.hpp"
#include "qmodular/levels.hpp"

using namespace qmodular;

namespace {

ErrorKind kind_of(const std::string& src) {
  try {
    parse_expr(src);
  } catch (const Error& e) {
    return e.kind();
  }
  return ErrorKind::InvalidArgument;
}

// Random well-weighted expressions of a requested even weight.
class ExprGen {
 public:
  explicit ExprGen(unsigned seed) : rng_(seed) {}

  FormExpr of_weight(long w, int depth) {
    if (w == 0) return FormExpr::scalar(rational());
    if (depth <= 0) return leaf(w);
    switch (pick(0, 5)) {
      case 0:
        return leaf(w);
      case 1: {
        std::vector<std::pair<Rational, FormExpr>> terms;
        const int n = pick(1, 3);
        for (int i = 0; i < n; ++i) terms.emplace_back(pick(0, 3) == 0 ? Rational(1) : rational(), of_weight(w, depth - 1));
        return FormExpr::sum(std::move(terms));
      }
      case 2: {
        if (w < 4) return leaf(w);
        const long a = 2 * pick(1, static_cast<int>(w / 2) - 1);
        std::vector<FormExpr> fs{of_weight(a, depth - 1), of_weight(w - a, depth - 1)};
        if (pick(0, 2) == 0) fs.push_back(FormExpr::scalar(rational()));
        return FormExpr::product(std::move(fs));
      }
      case 3: {
        for (long n : {3L, 2L}) {
          if (w % (2 * n) == 0 && pick(0, 1) == 0) return FormExpr::power(of_weight(w / n, depth - 1), n);
        }
        return FormExpr::power(of_weight(w, depth - 1), 1);
      }
      case 4:
        return FormExpr::twist(of_weight(w, depth - 1));
      default: {
        const long e = 2 * pick(-2, 2);
        return FormExpr::eta(EtaQuotient({{1, 2 * w - e}, {static_cast<long>(pick(2, 5)), e}}));
      }
    }
  }

 private:
  int pick(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng_); }

  Rational rational() {
    Rational r(pick(-20, 20), pick(1, 6));
    r.canonicalize();
    return r;
  }

  Rational half(int lo, int hi) { return make_rational(pick(lo, hi), 2); }

  FormExpr leaf(long w) {
    if (w == 2) {
      switch (pick(0, 4)) {
        case 0:
          return FormExpr::wp(half(-4, 8), pick(0, 1) ? make_rational(1, 2) : Rational(0), pick(1, 10));
        case 1:
          return FormExpr::wpt(half(-4, 8), pick(0, 1) ? make_rational(1, 2) : Rational(0), pick(1, 10));
        case 2:
          return FormExpr::phi(pick(2, 10));
        case 3:
          return FormExpr::generator(pick(1, 10), 2, pick(0, 3));
        default:
          return FormExpr::delta(4);
      }
    }
    if (w % 4 == 0 && pick(0, 2) == 0) return FormExpr::power(leaf(2), static_cast<unsigned long>(w / 2));
    switch (pick(0, 3)) {
      case 0:
        return FormExpr::eisenstein(static_cast<int>(w), pick(0, 1) ? 1 : pick(2, 9));
      case 1:
        return FormExpr::generator(pick(1, 10), w, pick(0, 5));
      case 2:
        return FormExpr::eta(EtaQuotient({{1, w * 2}}));
      default:
        return w == 4 ? FormExpr::delta(2) : FormExpr::product({leaf(2), leaf(w - 2)});
    }
  }

  std::mt19937 rng_;
};

}  // namespace

TEST(Parser, BenchmarkWord) {
  const FormExpr e = parse_expr("E(2,10,0)^335 * E(4,10,2) * Delta(10)^336");
  EXPECT_EQ(e.weight(), Rational(2018));
  ASSERT_NE(e.as<FormExpr::Product>(), nullptr);
  EXPECT_EQ(e.as<FormExpr::Product>()->factors.size(), 3u);
}

TEST(Parser, DeltaTwoAsWptSquareExpandsToZero) {
  const FormExpr e = parse_expr("Delta(2) - 1/256 * wpt(0,1/2,1)^2");
  EXPECT_EQ(e.weight(), Rational(4));
  EXPECT_TRUE(expand_expr(e, 60).is_zero());
}

TEST(Parser, WeightMismatch) {
  try {
    parse_expr("E(2,3,0) + Delta(2)");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::WeightMismatch);
    const std::string msg = e.what();
    EXPECT_NE(msg.find('2'), std::string::npos);
    EXPECT_NE(msg.find('4'), std::string::npos);
  }
}

TEST(Parser, SyntaxErrorsCarryOffsets) {
  EXPECT_EQ(kind_of("E4 +"), ErrorKind::SyntaxError);
  EXPECT_EQ(kind_of("wp(1,0)"), ErrorKind::SyntaxError);
  EXPECT_EQ(kind_of("foo(3)"), ErrorKind::SyntaxError);
  EXPECT_EQ(kind_of("E4 E6"), ErrorKind::SyntaxError);
  EXPECT_EQ(kind_of("1/0 * E4"), ErrorKind::SyntaxError);
  try {
    parse_expr("E4 + )");
    FAIL();
  } catch (const Error& e) {
    EXPECT_NE(std::string(e.what()).find("offset 5"), std::string::npos) << e.what();
  }
}

TEST(Parser, Precedence) {
  const FormExpr e = parse_expr("E4 + 2*E(2,2,0)^2 * (3) - E4");
  const auto* s = e.as<FormExpr::Sum>();
  ASSERT_NE(s, nullptr);
  ASSERT_EQ(s->terms.size(), 3u);
  EXPECT_EQ(s->terms[1].first, Rational(2));
  const auto* p = s->terms[1].second.as<FormExpr::Product>();
  ASSERT_NE(p, nullptr);
  EXPECT_NE(p->factors[0].as<FormExpr::Power>(), nullptr);
  EXPECT_EQ(s->terms[2].first, Rational(-1));
}

TEST(Parser, EtaAndTwistAtoms) {
  const FormExpr e = parse_expr("eta(2:16,1:-8) - twist(Delta(2))");
  EXPECT_EQ(e.weight(), Rational(4));
  EXPECT_EQ(to_string(e), "eta(1:-8,2:16) - twist(Delta(2))");
}

TEST(Parser, HalfIntegralEtaWeight) {
  const FormExpr e = parse_expr("eta(1)");
  EXPECT_EQ(e.weight(), make_rational(1, 2));
}

TEST(Printer, CanonicalForms) {
  EXPECT_EQ(to_string(parse_expr("-1/3*wp(1,0,2)")), "-1/3*wp(1,0,2)");
  EXPECT_EQ(to_string(parse_expr("E(4,3,0)^2*(3)")), "E(4,3,0)^2*(3)");
  EXPECT_EQ(to_string(parse_expr("((E4^2)^3)")), "(E4^2)^3");
  EXPECT_EQ(to_string(parse_expr("Eis(4,5) - E4")), "Eis(4,5) - E4");
  EXPECT_EQ(to_string(FormExpr::sum({{Rational(1), FormExpr::eisenstein(4)}})), "1*E4");
}

TEST(Printer, RoundTripRandomExpressions) {
  ExprGen gen(31337);
  for (int i = 0; i < 200; ++i) {
    const long w = 2 * (1 + i % 4);
    const FormExpr e = gen.of_weight(w, 3);
    const std::string text = to_string(e);
    const FormExpr back = parse_expr(text);
    ASSERT_EQ(back, e) << text << "  ->  " << to_string(back);
    ASSERT_EQ(to_string(back), text);
    ASSERT_EQ(back.weight(), e.weight());
  }
}

TEST(FormExprAlgebra, OperatorsFlatten) {
  const FormExpr a = FormExpr::eisenstein(4), b = FormExpr::delta(2);
  const FormExpr s = a + b + a;
  ASSERT_NE(s.as<FormExpr::Sum>(), nullptr);
  EXPECT_EQ(s.as<FormExpr::Sum>()->terms.size(), 3u);
  const FormExpr p = a * b * a;
  ASSERT_NE(p.as<FormExpr::Product>(), nullptr);
  EXPECT_EQ(p.as<FormExpr::Product>()->factors.size(), 3u);
  EXPECT_EQ(p.weight(), Rational(12));
}

TEST(FormExprAlgebra, ConstructorValidation) {
  EXPECT_THROW(FormExpr::wp(make_rational(1, 3), Rational(0), 2), Error);
  EXPECT_THROW(FormExpr::wp(Rational(1), make_rational(1, 3), 2), Error);
  EXPECT_THROW(FormExpr::eisenstein(2), Error);
  EXPECT_THROW(FormExpr::generator(11, 2, 0), Error);
}
