#include <gtest/gtest.h>

#include <set>

#include "qmodular/expr_parser.hpp"
#include "qmodular/identities.hpp"

using namespace qmodular;

TEST(Identities, AllPassAtDefaultPrecision) {
  const auto reports = check_all(200);
  ASSERT_EQ(reports.size(), identity_cases().size());
  EXPECT_GE(reports.size(), 15u);
  for (const auto& r : reports) {
    EXPECT_TRUE(r.pass) << r.name << " fails at q^" << to_string(*r.first_bad_exponent);
    EXPECT_EQ(r.prec, 200);
  }
}

TEST(Identities, CasesDefaultPrecision) {
  for (const auto& r : check_all(0)) {
    EXPECT_TRUE(r.pass) << r.name;
    EXPECT_EQ(r.prec, r.name.rfind("phi-dual-", 0) == 0 ? 300 : 200) << r.name;
  }
}

TEST(Identities, NamesAreUniqueAndBalanced) {
  std::set<std::string> names;
  for (const auto& c : identity_cases()) {
    EXPECT_TRUE(names.insert(c.name).second) << c.name;
    EXPECT_EQ(c.lhs.weight(), c.rhs.weight()) << c.name;
  }
  for (const char* n : {"mod1", "e12-sym", "delta1-product", "delta5-diff-sq", "n9-linear", "n10-linear",
                        "phi-dual-2", "phi-dual-10"}) {
    EXPECT_TRUE(names.count(n)) << n;
  }
}

TEST(Identities, ExactRationalCoefficientsInE12) {
  const std::string text = to_string(find_identity("e12-sym").rhs);
  EXPECT_NE(text.find("4917/1382"), std::string::npos);
  EXPECT_NE(text.find("1462/691"), std::string::npos);
}

TEST(Identities, UnknownName) {
  try {
    find_identity("no-such-identity");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::UnknownIdentity);
  }
}

TEST(Identities, FailureReportNamesFirstBadExponent) {
  IdentityCase c = find_identity("e4-sym");
  c.rhs = c.rhs + parse_expr("Delta(2)");  // perturb from q^1 on
  Expander expander;
  const IdentityReport r = check(c, 50, expander);
  EXPECT_FALSE(r.pass);
  ASSERT_TRUE(r.first_bad_exponent);
  EXPECT_EQ(*r.first_bad_exponent, 1);
  EXPECT_EQ(r.lhs_coefficient, 240);
  EXPECT_EQ(r.rhs_coefficient, 241);
}

namespace {

std::vector<std::string> failures(const Registry& reg) {
  std::vector<std::string> out;
  for (const auto& r : check_all(200, reg)) {
    if (!r.pass) out.push_back(r.name);
  }
  return out;
}

}  // namespace

TEST(Identities, RegistryMutationIsReportedByName) {
  {
    Registry reg = Registry::standard();
    reg.mutable_level(10).generators.at({4, 5}) = parse_expr("1/250*wpt(0,1/2,5)^2");
    EXPECT_EQ(failures(reg), std::vector<std::string>{"e4-10-5"});
  }
  {
    Registry reg = Registry::standard();
    reg.mutable_level(2).generators.at({2, 0}) = parse_expr("-3*wp(1,0,2) + 1/2*wpt(0,1/2,2)");
    EXPECT_EQ(failures(reg), std::vector<std::string>{"e2-2-twpa"});
  }
}

TEST(Identities, PassingIsMonotoneInPrecision) {
  Expander expander;
  for (const char* n : {"mod1", "e6-2tau", "delta6-combo"}) {
    for (long p : {1L, 10L, 60L}) EXPECT_TRUE(check(find_identity(n), p, expander).pass) << n << " " << p;
  }
}

TEST(Identities, RejectsNonPositivePrecision) {
  try {
    check("mod1", 0);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::InvalidPrecision);
  }
}
