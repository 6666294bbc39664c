#pragma once

#include <map>
#include <mutex>
#include <string>
#include <utility>
#include <vector>

#include "qmodular/eta.hpp"
#include "qmodular/form_expr.hpp"
#include "qmodular/qseries.hpp"

namespace qmodular {

struct LevelSpec {
  int N = 0;
  long rho = 0;  // weight of Delta_N
  long nu = 0;   // valuation of Delta_N
  EtaQuotient delta;
  std::map<long, long> base_dims;                         // printed table, 2k = 2..16
  std::map<std::pair<long, long>, FormExpr> generators;  // (2k <= rho, s) -> definition
};

/// The ten level entries.  Copies are independent, so tests can corrupt one.
class Registry {
 public:
  static Registry standard();
  static const Registry& builtin();

  const LevelSpec& level(int N) const;
  LevelSpec& mutable_level(int N);

  long dimension(int N, long weight) const;

  /// Construction word for basis element s of M_weight(Gamma0(N)): a registry
  /// generator when weight <= rho, otherwise
  /// Delta_N^n * E(rho,N,s') * E(2,N,0)^a (N = 1 uses E4/E6 heads).
  FormExpr element_expr(int N, long weight, long s) const;
  std::string element_label(int N, long weight, long s) const;

  /// Checks the structural invariants and that every generator expands with
  /// leading coefficient 1 at valuation s on the integer exponent scale.
  void validate(long prec) const;

 private:
  struct Word {
    long delta_power = 0;
    long weight = 0;  // weight of the core factor
    long s = 0;       // index of the core factor
    long e2_power = 0;
    bool registry_core = true;
  };
  Word decompose(int N, long weight, long s) const;

  std::vector<LevelSpec> levels_;
};

/// Evaluates FormExpr trees to series, planning child precisions from
/// valuation lower bounds so high powers of Delta_N stay cheap.
class Expander {
 public:
  explicit Expander(const Registry& registry = Registry::builtin()) : registry_(registry) {}
  Expander(const Expander&) = delete;
  Expander& operator=(const Expander&) = delete;

  QSeries expand(const FormExpr& e, long prec);
  QSeries expand(const FormExpr& e, const Rational& prec);

  /// A guaranteed lower bound for the valuation of e.
  Rational valuation_bound(const FormExpr& e) const;

  const Registry& registry() const noexcept { return registry_; }

 private:
  QSeries expand_node(const FormExpr& e, const Rational& prec);
  QSeries expand_atom(const FormExpr& e, const std::string& key, long prec);

  const Registry& registry_;
  std::mutex mutex_;
  std::map<std::string, QSeries> cache_;
};

/// Expand with the builtin registry.
QSeries expand_expr(const FormExpr& e, long prec);

struct BasisElement {
  long s;
  std::string label;
  FormExpr expr;
  QSeries series;
};

struct BasisSet {
  int N;
  long weight;
  long prec;
  std::vector<BasisElement> elements;
};

/// Unitary upper-triangular basis of M_weight(Gamma0(N)) expanded to O(q^prec).
/// Throws EmptySpace for a zero-dimensional space and InsufficientPrecision
/// when prec < dimension.
BasisSet basis(int N, long weight, long prec, const Registry& registry = Registry::builtin());
BasisSet basis(int N, long weight, long prec, Expander& expander);

/// A single basis element, computed directly (binary powers of Delta_N and
/// E(2,N,0)); used for very high weights.
QSeries basis_element(int N, long weight, long s, long prec, Expander& expander);

/// Coordinates of f in the basis by forward substitution.  Throws
/// InsufficientPrecision unless f and the basis are known to O(q^{d+5}), and
/// NotInSpan when a residual survives.
std::vector<Rational> reduce(const QSeries& f, const BasisSet& basis);
std::vector<Rational> reduce(const QSeries& f, int N, long weight, long prec,
                             const Registry& registry = Registry::builtin());

}  // namespace qmodular
