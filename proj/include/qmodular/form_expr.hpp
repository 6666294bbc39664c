#pragma once

#include <memory>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "qmodular/eta.hpp"
#include "qmodular/rational.hpp"
#include "qmodular/weierstrass.hpp"

namespace qmodular {

struct FormNode;

/// Immutable expression tree over modular-form atoms.  Copies share nodes.
class FormExpr {
 public:
  struct Generator {
    int N;
    long weight;
    long s;
  };
  struct DeltaRef {
    int N;
  };
  struct Wp {
    TorsionArg z;
  };
  struct Wpt {
    TorsionArg z;
  };
  struct Eta {
    EtaQuotient spec;
  };
  struct Eisenstein {
    int k;
    long m;
  };
  struct Phi {
    int N;
  };
  struct Scalar {
    Rational value;
  };
  struct Sum {
    std::vector<std::pair<Rational, FormExpr>> terms;
  };
  struct Product {
    std::vector<FormExpr> factors;
  };
  struct Power {
    std::vector<FormExpr> base;  // exactly one element; keeps the node copyable
    unsigned long n;
  };
  /// tau -> tau + 1
  struct Twist {
    std::vector<FormExpr> arg;  // exactly one element
  };

  using Node = std::variant<Generator, DeltaRef, Wp, Wpt, Eta, Eisenstein, Phi, Scalar, Sum, Product, Power,
                            Twist>;

  static FormExpr generator(int N, long weight, long s);
  static FormExpr delta(int N);
  static FormExpr wp(const Rational& a, const Rational& b, long m);
  static FormExpr wpt(const Rational& a, const Rational& b, long m);
  static FormExpr eta(const EtaQuotient& spec);
  static FormExpr eisenstein(int k, long m = 1);
  static FormExpr phi(int N);
  static FormExpr scalar(const Rational& c);
  /// Throws WeightMismatch unless all terms share one weight.
  static FormExpr sum(std::vector<std::pair<Rational, FormExpr>> terms);
  static FormExpr product(std::vector<FormExpr> factors);
  static FormExpr power(const FormExpr& base, unsigned long n);
  static FormExpr twist(const FormExpr& arg);

  const Node& node() const;
  /// Weight 2k of the form (half-integral only for bare eta atoms).
  const Rational& weight() const;

  template <class T>
  const T* as() const {
    return std::get_if<T>(&node());
  }

  friend bool operator==(const FormExpr& a, const FormExpr& b);

 private:
  explicit FormExpr(std::shared_ptr<const FormNode> p) : p_(std::move(p)) {}
  static FormExpr make(Node node, Rational weight);

  std::shared_ptr<const FormNode> p_;
};

struct FormNode {
  FormExpr::Node node;
  Rational weight;
};

/// Linear-combination helpers used when building registry definitions.
FormExpr operator+(const FormExpr& a, const FormExpr& b);
FormExpr operator-(const FormExpr& a, const FormExpr& b);
FormExpr operator*(const FormExpr& a, const FormExpr& b);
FormExpr operator*(const Rational& c, const FormExpr& a);

/// Canonical text in the expression grammar; parse_expr(to_string(e)) == e.
std::string to_string(const FormExpr& e);

}  // namespace qmodular
