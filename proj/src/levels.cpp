#include "qmodular/levels.hpp"

#include <algorithm>

namespace qmodular {

namespace {

using F = FormExpr;

F wp(long a_num, long a_den, long b_den, long m) {
  // b_den == 0 encodes b = 0, otherwise b = 1/b_den
  return F::wp(make_rational(a_num, a_den), b_den == 0 ? Rational(0) : make_rational(1, b_den), m);
}

F wpt(long a_num, long a_den, long b_den, long m) {
  return F::wpt(make_rational(a_num, a_den), b_den == 0 ? Rational(0) : make_rational(1, b_den), m);
}

F gen(int N, long w, long s) { return F::generator(N, w, s); }
F sq(const F& f) { return F::power(f, 2); }
F cube(const F& f) { return F::power(f, 3); }
Rational r(long p, long q = 1) { return make_rational(p, q); }

// x^2 + y^2 + x y at the two half periods, used at N = 5 and 7
F half_period_square(long m) {
  const F x = wp(0, 1, 2, m);
  const F y = wp(m, 2, 0, m);
  return sq(x) + sq(y) + x * y;
}

LevelSpec make_level(int N, long rho, long nu, std::vector<long> dims) {
  LevelSpec L;
  L.N = N;
  L.rho = rho;
  L.nu = nu;
  L.delta = delta_spec(N);
  for (std::size_t i = 0; i < dims.size(); ++i) L.base_dims[2 * static_cast<long>(i + 1)] = dims[i];
  return L;
}

std::vector<LevelSpec> standard_levels() {
  std::vector<LevelSpec> levels;

  {
    LevelSpec L = make_level(1, 12, 1, {0, 1, 1, 1, 1, 2, 1, 2});
    const F e4 = F::eisenstein(4), e6 = F::eisenstein(6);
    L.generators.emplace(std::pair{4L, 0L}, e4);
    L.generators.emplace(std::pair{6L, 0L}, e6);
    L.generators.emplace(std::pair{8L, 0L}, sq(e4));
    L.generators.emplace(std::pair{10L, 0L}, e4 * e6);
    L.generators.emplace(std::pair{12L, 0L}, cube(e4));
    L.generators.emplace(std::pair{12L, 1L}, F::delta(1));
    levels.push_back(std::move(L));
  }
  {
    LevelSpec L = make_level(2, 4, 1, {1, 2, 2, 3, 3, 4, 4, 5});
    L.generators.emplace(std::pair{2L, 0L}, r(-3) * wp(1, 1, 0, 2));
    L.generators.emplace(std::pair{4L, 0L}, sq(gen(2, 2, 0)));
    L.generators.emplace(std::pair{4L, 1L}, F::delta(2));
    levels.push_back(std::move(L));
  }
  {
    LevelSpec L = make_level(3, 6, 2, {1, 2, 3, 3, 4, 5, 5, 6});
    const F w1 = wp(1, 1, 0, 3), x = wp(0, 1, 2, 3), y = wp(3, 2, 0, 3);
    L.generators.emplace(std::pair{2L, 0L}, r(-3) * w1);
    L.generators.emplace(std::pair{4L, 0L}, sq(gen(3, 2, 0)));
    L.generators.emplace(std::pair{4L, 1L}, r(1, 8) * (r(3) * sq(w1) - sq(x) - sq(y) - x * y));
    L.generators.emplace(std::pair{6L, 0L}, cube(gen(3, 2, 0)));
    L.generators.emplace(std::pair{6L, 1L}, gen(3, 2, 0) * gen(3, 4, 1));
    L.generators.emplace(std::pair{6L, 2L}, F::delta(3));
    levels.push_back(std::move(L));
  }
  {
    LevelSpec L = make_level(4, 2, 1, {2, 3, 4, 5, 6, 7, 8, 9});
    L.generators.emplace(std::pair{2L, 0L}, wpt(1, 1, 0, 2));
    L.generators.emplace(std::pair{2L, 1L}, r(-1, 16) * wpt(0, 1, 2, 2));
    levels.push_back(std::move(L));
  }
  {
    LevelSpec L = make_level(5, 4, 2, {1, 3, 3, 5, 5, 7, 7, 9});
    const F s12 = wp(1, 1, 0, 5) + wp(2, 1, 0, 5);
    L.generators.emplace(std::pair{2L, 0L}, r(-3, 2) * s12);
    L.generators.emplace(std::pair{4L, 0L}, sq(gen(5, 2, 0)));
    L.generators.emplace(std::pair{4L, 1L}, r(1, 48) * (r(9) * sq(s12) - r(12) * half_period_square(5)));
    L.generators.emplace(std::pair{4L, 2L}, F::delta(5));
    levels.push_back(std::move(L));
  }
  {
    LevelSpec L = make_level(6, 2, 2, {3, 5, 7, 9, 11, 13, 15, 17});
    L.generators.emplace(std::pair{2L, 0L}, r(-3) * wp(1, 1, 0, 2));
    L.generators.emplace(std::pair{2L, 1L}, r(-1, 4) * (wp(1, 1, 0, 2) - wp(1, 1, 0, 3)));
    L.generators.emplace(std::pair{2L, 2L}, F::delta(6));
    levels.push_back(std::move(L));
  }
  {
    LevelSpec L = make_level(7, 6, 4, {1, 3, 5, 5, 7, 9, 9, 11});
    const F w1 = wp(1, 1, 0, 7), w2 = wp(2, 1, 0, 7), w3 = wp(3, 1, 0, 7);
    const F s = w1 + w2 + w3;
    const F h1 = r(9) * (cube(w1) + cube(w2) + cube(w3));
    const F h2 = r(9, 2) * (sq(w1) * w2 + sq(w1) * w3 + sq(w2) * w1 + sq(w2) * w3 + sq(w3) * w1 + sq(w3) * w2);
    const F h3 = r(27) * (w1 * w2 * w3);
    L.generators.emplace(std::pair{2L, 0L}, r(-1) * s);
    L.generators.emplace(std::pair{4L, 0L}, sq(gen(7, 2, 0)));
    L.generators.emplace(std::pair{4L, 1L}, r(1, 8) * (sq(s) - r(3) * half_period_square(7)));
    L.generators.emplace(std::pair{4L, 2L}, r(1, 32) * (r(3) * (sq(w1) + sq(w2) + sq(w3)) - sq(s)));
    L.generators.emplace(std::pair{6L, 0L}, cube(gen(7, 2, 0)));
    L.generators.emplace(std::pair{6L, 1L}, gen(7, 2, 0) * gen(7, 4, 1));
    L.generators.emplace(std::pair{6L, 2L}, gen(7, 2, 0) * gen(7, 4, 2));
    // The printed combination uses F_i = -H_i.
    L.generators.emplace(std::pair{6L, 3L}, r(-1, 576) * (h1 - r(3) * h2 + r(2) * h3));
    L.generators.emplace(std::pair{6L, 4L}, F::delta(7));
    levels.push_back(std::move(L));
  }
  {
    LevelSpec L = make_level(8, 2, 2, {3, 5, 7, 9, 11, 13, 15, 17});
    L.generators.emplace(std::pair{2L, 0L}, wpt(1, 1, 0, 2));
    L.generators.emplace(std::pair{2L, 1L}, r(-1, 16) * wpt(0, 1, 2, 2));
    L.generators.emplace(std::pair{2L, 2L}, r(-1, 16) * wpt(0, 1, 2, 4));
    levels.push_back(std::move(L));
  }
  {
    LevelSpec L = make_level(9, 2, 2, {3, 5, 7, 9, 11, 13, 15, 17});
    L.generators.emplace(std::pair{2L, 0L}, r(-3) * wp(3, 1, 0, 9));
    L.generators.emplace(std::pair{2L, 1L}, r(-1, 4) * (wp(1, 1, 0, 3) - wp(3, 1, 0, 9)));
    L.generators.emplace(std::pair{2L, 2L}, F::delta(9));
    levels.push_back(std::move(L));
  }
  {
    LevelSpec L = make_level(10, 4, 6, {3, 7, 9, 13, 15, 19, 21, 25});
    const F a = wp(1, 1, 0, 2), b = wp(5, 1, 0, 10), c1 = wp(1, 1, 0, 5), c2 = wp(2, 1, 0, 5);
    L.generators.emplace(std::pair{2L, 0L}, r(-3) * b);
    L.generators.emplace(std::pair{2L, 1L}, r(-1, 8) * (a - b));
    L.generators.emplace(std::pair{2L, 2L}, r(1, 16) * (a - r(2) * c1 - r(2) * c2 + r(3) * b));
    const F e0 = gen(10, 2, 0), e1 = gen(10, 2, 1), e2 = gen(10, 2, 2);
    L.generators.emplace(std::pair{4L, 0L}, sq(e0));
    L.generators.emplace(std::pair{4L, 1L}, e0 * e1);
    L.generators.emplace(std::pair{4L, 2L}, e0 * e2);
    L.generators.emplace(std::pair{4L, 3L}, e1 * e2);
    L.generators.emplace(std::pair{4L, 4L}, sq(e2));
    L.generators.emplace(std::pair{4L, 5L}, r(1, 256) * sq(wpt(0, 1, 2, 5)));
    L.generators.emplace(std::pair{4L, 6L}, F::delta(10));
    levels.push_back(std::move(L));
  }
  return levels;
}

void require_level(int N) {
  if (N < 1 || N > 10) throw Error(ErrorKind::UnknownLevel, "level " + std::to_string(N) + " is outside 1..10");
}

}  // namespace

Registry Registry::standard() {
  Registry reg;
  reg.levels_ = standard_levels();
  return reg;
}

const Registry& Registry::builtin() {
  static const Registry reg = standard();
  return reg;
}

const LevelSpec& Registry::level(int N) const {
  require_level(N);
  return levels_[static_cast<std::size_t>(N - 1)];
}

LevelSpec& Registry::mutable_level(int N) {
  require_level(N);
  return levels_[static_cast<std::size_t>(N - 1)];
}

long Registry::dimension(int N, long weight) const {
  const LevelSpec& L = level(N);
  if (weight < 2 || weight % 2 != 0) {
    throw Error(ErrorKind::UnsupportedWeight, "weight must be even and >= 2, got " + std::to_string(weight));
  }
  long extra = 0;
  while (weight > L.rho) {
    weight -= L.rho;
    extra += L.nu;
  }
  const auto it = L.base_dims.find(weight);
  if (it == L.base_dims.end()) throw Error(ErrorKind::UnsupportedWeight, "no base dimension for this weight");
  return it->second + extra;
}

Registry::Word Registry::decompose(int N, long weight, long s) const {
  const LevelSpec& L = level(N);
  const long d = dimension(N, weight);
  if (s < 0 || s >= d) {
    throw Error(ErrorKind::UnknownGenerator, "E(" + std::to_string(weight) + "," + std::to_string(N) + "," +
                                                 std::to_string(s) + ") is outside a space of dimension " +
                                                 std::to_string(d));
  }
  Word w;
  const long step = L.nu;
  while (weight > L.rho && s >= step) {
    weight -= L.rho;
    s -= step;
    ++w.delta_power;
  }
  w.weight = weight;
  w.s = s;
  if (weight > L.rho) {
    w.registry_core = false;
    if (N != 1) w.e2_power = (weight - L.rho) / 2;
  }
  return w;
}

namespace {

// E4^a E6^b with 4a + 6b = weight, the level-one heads.
std::pair<long, long> level_one_head(long weight) {
  const long k = weight / 2;
  if (k % 2 == 0) return {k / 2, 0};
  return {(k - 3) / 2, 1};
}

}  // namespace

FormExpr Registry::element_expr(int N, long weight, long s) const {
  const Word w = decompose(N, weight, s);
  std::vector<FormExpr> factors;
  if (w.delta_power == 1) factors.push_back(F::delta(N));
  else if (w.delta_power > 1) factors.push_back(F::power(F::delta(N), static_cast<unsigned long>(w.delta_power)));
  if (w.registry_core) {
    factors.push_back(F::generator(N, w.weight, w.s));
  } else if (N == 1) {
    const auto [a, b] = level_one_head(w.weight);
    if (a == 1) factors.push_back(F::eisenstein(4));
    else if (a > 1) factors.push_back(F::power(F::eisenstein(4), static_cast<unsigned long>(a)));
    if (b == 1) factors.push_back(F::eisenstein(6));
  } else {
    const LevelSpec& L = level(N);
    factors.push_back(F::generator(N, L.rho, w.s));
    if (w.e2_power == 1) factors.push_back(F::generator(N, 2, 0));
    else if (w.e2_power > 1) factors.push_back(F::power(F::generator(N, 2, 0), static_cast<unsigned long>(w.e2_power)));
  }
  if (factors.size() == 1) return factors.front();
  return F::product(std::move(factors));
}

std::string Registry::element_label(int N, long weight, long s) const {
  const Word w = decompose(N, weight, s);
  std::vector<std::string> parts;
  auto with_power = [](std::string base, long n) { return n == 1 ? base : base + "^" + std::to_string(n); };
  const std::string n = std::to_string(N);
  if (w.delta_power > 0) parts.push_back(with_power("Δ_" + n, w.delta_power));
  if (w.registry_core) {
    parts.push_back("E(" + std::to_string(w.weight) + "," + n + "," + std::to_string(w.s) + ")");
  } else if (N == 1) {
    const auto [a, b] = level_one_head(w.weight);
    if (a > 0) parts.push_back(with_power("E4", a));
    if (b > 0) parts.push_back("E6");
  } else {
    parts.push_back("E(" + std::to_string(level(N).rho) + "," + n + "," + std::to_string(w.s) + ")");
    if (w.e2_power > 0) parts.push_back(with_power("E(2," + n + ",0)", w.e2_power));
  }
  std::string out;
  for (std::size_t i = 0; i < parts.size(); ++i) out += (i ? "·" : "") + parts[i];
  return out;
}

void Registry::validate(long prec) const {
  auto fail = [](int N, const std::string& what) {
    throw Error(ErrorKind::RegistryValidation, "level " + std::to_string(N) + ": " + what);
  };
  Expander expander(*this);
  for (const LevelSpec& L : levels_) {
    if (L.delta.weight() != L.rho) fail(L.N, "Delta_N weight differs from rho");
    if (L.delta.offset() != L.nu) fail(L.N, "Delta_N valuation differs from nu");
    if (L.base_dims.at(L.rho) != L.nu + 1) fail(L.N, "d_rho != nu + 1");
    for (const auto& [w, d] : L.base_dims) {
      if (w > L.rho && d != L.base_dims.at(w - L.rho) + L.nu) fail(L.N, "dimension table breaks the recursion");
    }
    for (long w = 2; w <= L.rho; w += 2) {
      for (long s = 0; s < L.base_dims.at(w); ++s) {
        if (!L.generators.count({w, s})) fail(L.N, "missing generator E(" + std::to_string(w) + ",N," + std::to_string(s) + ")");
      }
    }
    for (const auto& [key, expr] : L.generators) {
      const auto [w, s] = key;
      const std::string name = "E(" + std::to_string(w) + "," + std::to_string(L.N) + "," + std::to_string(s) + ")";
      if (expr.weight() != w) fail(L.N, name + " has weight " + to_string(expr.weight()));
      const QSeries f = expander.expand(expr, std::max(prec, s + 1));
      if (f.den() != 1) fail(L.N, name + " does not collapse to integer exponents");
      if (f.is_zero() || f.valuation() != s) fail(L.N, name + " has the wrong valuation");
      if (f.leading_coefficient() != 1) fail(L.N, name + " is not unitary");
    }
  }
}

// Expander

namespace {

Rational wpt_bound(const TorsionArg& z) {
  const Rational m(z.m);
  // min over n of |(n + 1/2) m + a|, attained near n = -a/m - 1/2
  const long n0 = floor_long(-z.a / m - Rational(1, 2));
  Rational best = m / 2;
  for (long n = n0 - 1; n <= n0 + 2; ++n) best = std::min(best, Rational(abs((Rational(n) + Rational(1, 2)) * m + z.a)));
  return best;
}

bool eta_like(const FormExpr& e, EtaQuotient& out) {
  if (const auto* x = e.as<FormExpr::Eta>()) {
    out = x->spec;
    return true;
  }
  if (const auto* p = e.as<FormExpr::Power>()) {
    if (const auto* x = p->base.front().as<FormExpr::Eta>()) {
      out = x->spec.power(static_cast<long>(p->n));
      return true;
    }
  }
  return false;
}

QSeries zero_series(const Rational& prec) {
  const long den = prec.get_den().get_si();
  return QSeries::zero(den, Rational(prec * den).get_num().get_si());
}

}  // namespace

Rational Expander::valuation_bound(const FormExpr& e) const {
  return std::visit(
      [&](const auto& x) -> Rational {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, FormExpr::Generator>) {
          return Rational(x.s);
        } else if constexpr (std::is_same_v<T, FormExpr::DeltaRef>) {
          return delta_spec(x.N).offset();
        } else if constexpr (std::is_same_v<T, FormExpr::Eta>) {
          return x.spec.offset();
        } else if constexpr (std::is_same_v<T, FormExpr::Wpt>) {
          return wpt_bound(x.z);
        } else if constexpr (std::is_same_v<T, FormExpr::Sum>) {
          Rational v = valuation_bound(x.terms.front().second);
          for (const auto& t : x.terms) v = std::min(v, valuation_bound(t.second));
          return v;
        } else if constexpr (std::is_same_v<T, FormExpr::Product>) {
          Rational v = 0;
          for (const auto& f : x.factors) v += valuation_bound(f);
          return v;
        } else if constexpr (std::is_same_v<T, FormExpr::Power>) {
          return valuation_bound(x.base.front()) * Rational(x.n);
        } else if constexpr (std::is_same_v<T, FormExpr::Twist>) {
          return valuation_bound(x.arg.front());
        } else {
          return Rational(0);
        }
      },
      e.node());
}

QSeries Expander::expand(const FormExpr& e, long prec) { return expand(e, Rational(prec)); }

QSeries Expander::expand(const FormExpr& e, const Rational& prec) { return truncate(expand_node(e, prec), prec); }

QSeries Expander::expand_atom(const FormExpr& e, const std::string& key, long prec) {
  {
    std::lock_guard guard(mutex_);
    const auto it = cache_.find(key);
    if (it != cache_.end() && it->second.precision() >= prec) return truncate(it->second, Rational(prec));
  }
  QSeries s = std::visit(
      [&](const auto& x) -> QSeries {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, FormExpr::Generator>) {
          const LevelSpec& L = registry_.level(x.N);
          const auto it = L.generators.find({x.weight, x.s});
          if (it != L.generators.end()) return expand(it->second, prec);
          return expand(registry_.element_expr(x.N, x.weight, x.s), prec);
        } else if constexpr (std::is_same_v<T, FormExpr::DeltaRef>) {
          return qmodular::expand(registry_.level(x.N).delta, prec);
        } else if constexpr (std::is_same_v<T, FormExpr::Wp>) {
          return wp_hat(x.z, prec);
        } else if constexpr (std::is_same_v<T, FormExpr::Wpt>) {
          return wpt_hat(x.z, prec);
        } else if constexpr (std::is_same_v<T, FormExpr::Eisenstein>) {
          return eisenstein(x.k, x.m, prec);
        } else if constexpr (std::is_same_v<T, FormExpr::Phi>) {
          return phi_N(x.N, prec);
        } else {
          throw Error(ErrorKind::InvalidArgument, "not an atom");
        }
      },
      e.node());
  std::lock_guard guard(mutex_);
  const auto [it, inserted] = cache_.try_emplace(key, s);
  if (!inserted && it->second.precision() < s.precision()) it->second = s;
  return s;
}

QSeries Expander::expand_node(const FormExpr& e, const Rational& prec) {
  if (prec <= valuation_bound(e)) return zero_series(prec);
  const long iprec = ceil_long(prec);
  return std::visit(
      [&](const auto& x) -> QSeries {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, FormExpr::Eta>) {
          return qmodular::expand(x.spec, iprec);
        } else if constexpr (std::is_same_v<T, FormExpr::Scalar>) {
          if (x.value == 0) return zero_series(prec);
          return monomial(x.value, 0, 1, prec);
        } else if constexpr (std::is_same_v<T, FormExpr::Sum>) {
          QSeries acc = zero_series(prec);
          for (const auto& [c, child] : x.terms) {
            if (c == 0) continue;
            acc = acc + c * expand_node(child, prec);
          }
          return acc;
        } else if constexpr (std::is_same_v<T, FormExpr::Product>) {
          std::vector<FormExpr> factors;
          EtaQuotient merged;
          bool any_eta = false;
          for (const auto& f : x.factors) {
            EtaQuotient q;
            if (eta_like(f, q)) {
              merged = merged * q;
              any_eta = true;
            } else {
              factors.push_back(f);
            }
          }
          if (any_eta && !merged.empty()) factors.push_back(FormExpr::eta(merged));
          if (factors.empty()) return QSeries::one(iprec);
          std::vector<Rational> bounds;
          Rational total = 0;
          for (const auto& f : factors) {
            bounds.push_back(valuation_bound(f));
            total += bounds.back();
          }
          QSeries acc;
          for (std::size_t i = 0; i < factors.size(); ++i) {
            QSeries s = expand_node(factors[i], prec - (total - bounds[i]));
            acc = i == 0 ? s : acc * s;
          }
          return acc;
        } else if constexpr (std::is_same_v<T, FormExpr::Power>) {
          EtaQuotient q;
          if (eta_like(e, q)) return q.empty() ? QSeries::one(iprec) : qmodular::expand(q, iprec);
          if (x.n == 0) return QSeries::one(iprec);
          const FormExpr& b = x.base.front();
          const Rational v = valuation_bound(b);
          return pow(expand_node(b, prec - v * Rational(x.n - 1)), x.n);
        } else if constexpr (std::is_same_v<T, FormExpr::Twist>) {
          return half_twist(expand_node(x.arg.front(), prec));
        } else {
          return expand_atom(e, to_string(e), iprec);
        }
      },
      e.node());
}

QSeries expand_expr(const FormExpr& e, long prec) {
  Expander expander;
  return expander.expand(e, prec);
}

// Bases

BasisSet basis(int N, long weight, long prec, const Registry& registry) {
  Expander expander(registry);
  return basis(N, weight, prec, expander);
}

BasisSet basis(int N, long weight, long prec, Expander& expander) {
  const Registry& reg = expander.registry();
  const LevelSpec& L = reg.level(N);
  const long d = reg.dimension(N, weight);
  if (d == 0) {
    throw Error(ErrorKind::EmptySpace,
                "M_" + std::to_string(weight) + "(Gamma0(" + std::to_string(N) + ")) is zero-dimensional");
  }
  if (prec < d) {
    throw Error(ErrorKind::InsufficientPrecision,
                "precision " + std::to_string(prec) + " cannot separate " + std::to_string(d) + " valuations");
  }

  BasisSet out{N, weight, prec, {}};
  const Rational P(prec);
  const QSeries delta = expander.expand(FormExpr::delta(N), prec);

  // Powers of Delta_N (each known to O(q^prec)) and of the weight-2 head,
  // built incrementally.
  std::vector<QSeries> delta_pow{QSeries::one(prec)};
  std::vector<QSeries> e2_pow{QSeries::one(prec)};
  std::map<long, QSeries> heads;  // s -> E(rho,N,s), or weight -> E4^a E6^b for N = 1
  const FormExpr e2 = N == 1 ? FormExpr::eisenstein(4) : FormExpr::generator(N, 2, 0);
  QSeries e2_series;
  if (N != 1) e2_series = expander.expand(e2, prec);

  for (long s = 0; s < d; ++s) {
    const FormExpr expr = reg.element_expr(N, weight, s);
    // Peel the Delta power off the construction word.
    long n = 0;
    FormExpr core = expr;
    std::vector<FormExpr> rest;
    if (const auto* p = expr.as<FormExpr::Product>()) {
      for (const auto& f : p->factors) {
        if (f.as<FormExpr::DeltaRef>()) n = 1;
        else if (const auto* pw = f.as<FormExpr::Power>(); pw && pw->base.front().as<FormExpr::DeltaRef>())
          n = static_cast<long>(pw->n);
        else rest.push_back(f);
      }
    } else if (expr.as<FormExpr::DeltaRef>()) {
      n = 1;
    } else if (const auto* pw = expr.as<FormExpr::Power>(); pw && pw->base.front().as<FormExpr::DeltaRef>()) {
      n = static_cast<long>(pw->n);
    } else {
      rest.push_back(expr);
    }
    const Rational core_prec = P - Rational(n * L.nu);

    QSeries core_series;
    if (rest.empty()) {
      core_series = QSeries::one(prec);
    } else if (N != 1 && rest.size() <= 2 && rest.front().as<FormExpr::Generator>() &&
               rest.front().as<FormExpr::Generator>()->weight == L.rho && weight - n * L.rho > L.rho) {
      // head E(rho,N,s') times E(2,N,0)^a
      const long sp = rest.front().as<FormExpr::Generator>()->s;
      const long a = (weight - n * L.rho - L.rho) / 2;
      auto it = heads.find(sp);
      if (it == heads.end()) it = heads.emplace(sp, expander.expand(rest.front(), prec)).first;
      while (static_cast<long>(e2_pow.size()) <= a) e2_pow.push_back(truncate(e2_pow.back() * e2_series, P));
      core_series = truncate(it->second, core_prec) * truncate(e2_pow[static_cast<std::size_t>(a)], core_prec);
    } else {
      core_series = expander.expand(rest.size() == 1 ? rest.front() : FormExpr::product(rest), core_prec);
    }
    while (static_cast<long>(delta_pow.size()) <= n) delta_pow.push_back(truncate(delta_pow.back() * delta, P));
    QSeries series = n == 0 ? truncate(core_series, P) : truncate(delta_pow[static_cast<std::size_t>(n)] * core_series, P);
    out.elements.push_back({s, reg.element_label(N, weight, s), expr, std::move(series)});
  }
  return out;
}

QSeries basis_element(int N, long weight, long s, long prec, Expander& expander) {
  return expander.expand(expander.registry().element_expr(N, weight, s), prec);
}

std::vector<Rational> reduce(const QSeries& f, const BasisSet& b) {
  const long d = static_cast<long>(b.elements.size());
  const long guard = d + 5;
  if (f.precision() < guard || b.prec < guard) {
    throw Error(ErrorKind::InsufficientPrecision,
                "reduce needs the series and the basis known to O(q^" + std::to_string(guard) + ")");
  }
  const Rational P = std::min(f.precision(), Rational(b.prec));
  QSeries residual = truncate(f, P);
  std::vector<Rational> coords;
  coords.reserve(static_cast<std::size_t>(d));
  for (long s = 0; s < d; ++s) {
    if (!residual.is_zero() && residual.valuation() < s) {
      throw Error(ErrorKind::NotInSpan, "residual has a nonzero coefficient at q^" + to_string(residual.valuation()));
    }
    const Rational c = residual.is_zero() ? Rational(0) : residual.coefficient(Rational(s));
    if (c != 0) residual = residual - c * b.elements[static_cast<std::size_t>(s)].series;
    coords.push_back(c);
  }
  if (!residual.is_zero()) {
    throw Error(ErrorKind::NotInSpan, "residual has a nonzero coefficient at q^" + to_string(residual.valuation()));
  }
  return coords;
}

std::vector<Rational> reduce(const QSeries& f, int N, long weight, long prec, const Registry& registry) {
  return reduce(f, basis(N, weight, prec, registry));
}

}  // namespace qmodular
