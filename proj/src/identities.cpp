#include "qmodular/identities.hpp"

#include <future>

#include "qmodular/weierstrass.hpp"

namespace qmodular {

namespace {

using F = FormExpr;

Rational r(long p, long q = 1) { return make_rational(p, q); }
F wp(const Rational& a, const Rational& b, long m) { return F::wp(a, b, m); }
F wpt(const Rational& a, const Rational& b, long m) { return F::wpt(a, b, m); }
F pw(const F& f, unsigned long n) { return F::power(f, n); }

const Rational kHalf = r(1, 2);

// Binary form sum c_i x^{n-i} y^i.
F binary_form(const F& x, const F& y, const std::vector<Rational>& c) {
  const unsigned long n = c.size() - 1;
  std::vector<std::pair<Rational, F>> terms;
  for (unsigned long i = 0; i <= n; ++i) {
    if (c[i] == 0) continue;
    std::vector<F> fs;
    if (n - i == 1) fs.push_back(x);
    else if (n - i > 1) fs.push_back(pw(x, n - i));
    if (i == 1) fs.push_back(y);
    else if (i > 1) fs.push_back(pw(y, i));
    terms.emplace_back(c[i], fs.size() == 1 ? fs.front() : F::product(fs));
  }
  return F::sum(std::move(terms));
}

F wp_sum(long from, long to, long m) {
  F acc = wp(r(from), 0, m);
  for (long k = from + 1; k <= to; ++k) acc = acc + wp(r(k), 0, m);
  return acc;
}

// 3 (x^2 + y^2 + x y) at the half periods 1/2 and m tau / 2 of the lattice Z + m tau Z.
F half_period_e4(long m) {
  const F x = wp(0, kHalf, m);
  const F y = wp(r(m, 2), 0, m);
  return r(3) * (pw(x, 2) + pw(y, 2) + x * y);
}

std::vector<IdentityCase> build_cases() {
  std::vector<IdentityCase> cs;
  auto add = [&](std::string name, F lhs, F rhs, std::string note, long prec = 200) {
    cs.push_back({std::move(name), std::move(lhs), std::move(rhs), std::move(note), prec, {}});
  };

  // T, U on the lattice Z + 2 tau Z; A, B on Z + tau Z.
  const F T = wpt(1, 0, 2), U = wpt(0, kHalf, 2);
  const F A = wpt(kHalf, 0, 1), B = wpt(0, kHalf, 1);

  add("mod1", wp(1, kHalf, 2), r(-1, 3) * (U + T), "wp(1/2 + tau, 2tau) through the two wpt values");
  add("wp2wpt-at-half", B, wp(kHalf, 0, 1) - wp(kHalf, kHalf, 1), "shift by (1 + tau)/2 at z = 1/2");
  add("wp2wpt-at-half-tau", A, wp(0, kHalf, 1) - wp(kHalf, kHalf, 1), "shift by (1 + tau)/2 at z = tau/2");
  add("delta1-product", F::delta(1), r(1, 256) * pw(B * A * F::twist(A), 2), "Delta as a squared wpt product");
  add("e2-2-twpa", F::generator(2, 2, 0), T - r(2) * U, "E(2,2,0) in wpt values");
  add("e2-3-twpa", F::generator(3, 2, 0),
      r(-3) * wpt(kHalf, kHalf, 3) + wpt(0, kHalf, 3) + wpt(r(3, 2), 0, 3), "E(2,3,0) in wpt values");

  add("e4-sym", F::eisenstein(4), r(1, 2) * (pw(B, 2) + pw(A, 2) + pw(F::twist(A), 2)), "E4, sum of three squares");
  add("e4-wp", F::eisenstein(4), half_period_e4(1), "E4 from wp at the half periods");
  add("e4-2tau", F::eisenstein(4), binary_form(T, U, {1, -16, 16}), "E4 as a form in T, U");
  add("e4-tau", F::eisenstein(4), binary_form(A, B, {1, -1, 1}), "E4 as a form in A, B");
  add("e6-2tau", F::eisenstein(6), binary_form(T, U, {1, 30, -96, 64}), "E6 as a form in T, U");
  add("e6-sym", F::eisenstein(6), binary_form(A, B, {1, r(-3, 2), r(-3, 2), 1}), "E6 as a form in A, B");
  add("e8-2tau", F::eisenstein(8), binary_form(T, U, {1, -32, 288, -512, 256}), "E8 as a form in T, U");
  add("e8-sym", F::eisenstein(8), binary_form(A, B, {1, -2, 3, -2, 1}), "E8 as a form in A, B");
  add("e10-sym", F::eisenstein(10), binary_form(A, B, {1, r(-5, 2), 1, 1, r(-5, 2), 1}), "E10 as a form in A, B");
  add("e12-sym", F::eisenstein(12),
      binary_form(A, B, {1, -3, r(4917, 1382), r(-1462, 691), r(4917, 1382), -3, 1}), "E12 as a form in A, B");

  add("delta2-sq", F::delta(2), r(1, 256) * pw(B, 2), "Delta_2 as a wpt square");
  add("delta4-twpa", F::delta(4), r(-1, 16) * U, "Delta_4 as a single wpt value");
  add("delta5-diff-sq", F::delta(5), r(1, 16) * pw(wp(1, 0, 5) - wp(2, 0, 5), 2), "Delta_5 as a wp difference squared");
  add("delta6-combo", F::delta(6),
      r(1, 48) * (r(3) * wp(1, 0, 2) - r(8) * wp(1, 0, 3) + wp_sum(1, 5, 6)), "Delta_6 as a wp combination");
  add("delta8-twpa", F::delta(8), r(-1, 16) * wpt(0, kHalf, 4), "Delta_8 as a single wpt value");
  add("e4-10-5", F::generator(10, 4, 5), F::eta(EtaQuotient({{5, -8}, {10, 16}})), "E(4,10,5) is Delta_2(5 tau)");

  {
    const F w1 = wp(1, 0, 7), w2 = wp(2, 0, 7), w3 = wp(3, 0, 7);
    auto lin = [](const F& x, const F& y, const F& z) { return r(2) * x - y - z; };
    add("e673-h", F::generator(7, 6, 3), r(-1, 128) * (lin(w1, w2, w3) * lin(w2, w1, w3) * lin(w3, w1, w2)),
        "E(6,7,3) as a product of three linear forms");
  }
  add("e4-5tau", F::eisenstein(4, 5), half_period_e4(5), "E4(5 tau) from wp at the half periods");
  add("e4-7tau", F::eisenstein(4, 7), half_period_e4(7), "E4(7 tau) from wp at the half periods");
  add("n9-linear", wp(1, 0, 3) + r(3) * wp(3, 0, 9), wp_sum(1, 4, 9), "linear relation in M_2(Gamma0(9))");
  add("n10-linear", r(2) * wp(5, 0, 10) + (wp(1, 0, 5) + wp(2, 0, 5)), wp_sum(1, 4, 10),
      "linear relation in M_2(Gamma0(10))");

  for (int N = 2; N <= 10; ++N) {
    IdentityCase c{"phi-dual-" + std::to_string(N), F::phi(N), F::phi(N),
                   "Phi_" + std::to_string(N) + ": wp sum against divisor sums", 300, {}};
    c.rhs_oracle = [N](long prec) { return phi_N(N, prec, PhiMode::Divisor); };
    cs.push_back(std::move(c));
  }
  return cs;
}

}  // namespace

const std::vector<IdentityCase>& identity_cases() {
  static const std::vector<IdentityCase> cases = build_cases();
  return cases;
}

const IdentityCase& find_identity(const std::string& name) {
  for (const auto& c : identity_cases()) {
    if (c.name == name) return c;
  }
  throw Error(ErrorKind::UnknownIdentity, "no identity named '" + name + "'");
}

IdentityReport check(const IdentityCase& c, long prec, Expander& expander) {
  if (prec < 1) throw Error(ErrorKind::InvalidPrecision, "precision must be at least 1");
  const QSeries lhs = expander.expand(c.lhs, prec);
  const QSeries rhs = c.rhs_oracle ? truncate(c.rhs_oracle(prec), Rational(prec)) : expander.expand(c.rhs, prec);
  IdentityReport rep;
  rep.name = c.name;
  rep.prec = prec;
  const QSeries diff = lhs - rhs;
  rep.pass = diff.is_zero();
  if (!rep.pass) {
    const Rational e = diff.valuation();
    rep.first_bad_exponent = e;
    rep.lhs_coefficient = lhs.coefficient(e);
    rep.rhs_coefficient = rhs.coefficient(e);
  }
  return rep;
}

IdentityReport check(const std::string& name, long prec) {
  Expander expander;
  return check(find_identity(name), prec, expander);
}

std::vector<IdentityReport> check_all(long prec, const Registry& registry) {
  return check_all(identity_cases(), prec, registry);
}

std::vector<IdentityReport> check_all(const std::vector<IdentityCase>& cases, long prec, const Registry& registry) {
  Expander expander(registry);
  std::vector<std::future<IdentityReport>> jobs;
  jobs.reserve(cases.size());
  for (const auto& c : cases) {
    const long p = prec > 0 ? prec : c.default_prec;
    jobs.push_back(std::async(std::launch::async, [&c, p, &expander] { return check(c, p, expander); }));
  }
  std::vector<IdentityReport> out;
  out.reserve(jobs.size());
  for (auto& j : jobs) out.push_back(j.get());
  return out;
}

}  // namespace qmodular
